//! SVG line charts of aggregate metrics against K.

use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{bail, Result};
use nk_muddle::io::AggregateCsvRow;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 460.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Fitness,
    Hamming,
    Evaluations,
}

impl Metric {
    fn label(self) -> &'static str {
        match self {
            Metric::Fitness => "Mean best fitness",
            Metric::Hamming => "Mean hamming distance (initial to best)",
            Metric::Evaluations => "Mean evaluations",
        }
    }

    fn value(self, row: &AggregateCsvRow) -> (f64, f64) {
        match self {
            Metric::Fitness => (row.fitness_mean, row.fitness_se),
            Metric::Hamming => (row.hamming_mean, row.hamming_se),
            Metric::Evaluations => (row.evaluations_mean, row.evaluations_se),
        }
    }
}

impl FromStr for Metric {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fitness" => Ok(Metric::Fitness),
            "hamming" => Ok(Metric::Hamming),
            "evaluations" => Ok(Metric::Evaluations),
            other => bail!("unknown metric `{other}`; available: fitness, hamming, evaluations"),
        }
    }
}

pub struct PlotSpec {
    pub metric: Metric,
    /// Algorithm ids to draw; empty means every algorithm in the input.
    pub series: Vec<String>,
    pub title: Option<String>,
}

struct Series {
    name: String,
    points: Vec<(f64, f64, f64)>,
}

fn collect_series(rows: &[AggregateCsvRow], spec: &PlotSpec) -> Result<Vec<Series>> {
    let mut available: Vec<&str> = Vec::new();
    for r in rows {
        if !available.contains(&r.algorithm.as_str()) {
            available.push(&r.algorithm);
        }
    }
    let names: Vec<String> = if spec.series.is_empty() {
        available.iter().map(|s| s.to_string()).collect()
    } else {
        spec.series.clone()
    };
    if names.is_empty() {
        bail!("the aggregate file has no rows");
    }
    names
        .into_iter()
        .map(|name| {
            if !available.contains(&name.as_str()) {
                bail!(
                    "series `{name}` not found; available: {}",
                    available.join(", ")
                );
            }
            let mut points: Vec<(f64, f64, f64)> = rows
                .iter()
                .filter(|r| r.algorithm == name)
                .map(|r| {
                    let (m, se) = spec.metric.value(r);
                    (r.k as f64, m, se)
                })
                .collect();
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            Ok(Series { name, points })
        })
        .collect()
}

/// Roughly five round tick values covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let span = (hi - lo).max(1e-9);
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 2.5, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| span / s <= 6.0)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).floor() as i64;
    let last = (hi / step - 1e-9).ceil() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn fmt_tick(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

pub fn render_svg(rows: &[AggregateCsvRow], spec: &PlotSpec) -> Result<String> {
    let series = collect_series(rows, spec)?;
    let all = series.iter().flat_map(|s| s.points.iter());
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, m, se) in all {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(m - se);
        y_hi = y_hi.max(m + se);
    }
    if x_hi == x_lo {
        x_lo -= 1.0;
        x_hi += 1.0;
    }
    let pad = ((y_hi - y_lo) * 0.05).max(1e-6);
    let y_ticks = ticks(y_lo - pad, y_hi + pad);
    let (y_lo, y_hi) = (y_ticks[0], *y_ticks.last().unwrap());
    let y_hi = if y_hi <= y_lo { y_lo + 1.0 } else { y_hi };
    let x_ticks = ticks(x_lo, x_hi);
    let (x_lo, x_hi) = (x_ticks[0].min(x_lo), x_ticks.last().unwrap().max(x_hi));

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let px = |x: f64| MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let py = |y: f64| MARGIN_TOP + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let title = spec
        .title
        .clone()
        .unwrap_or_else(|| format!("{} vs K", spec.metric.label()));
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        escape(&title)
    );

    for &t in &y_ticks {
        let y = py(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##,
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 6.0,
            y + 4.0,
            fmt_tick(t)
        );
    }
    for &t in &x_ticks {
        let x = px(t);
        let _ = writeln!(
            svg,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_TOP + plot_h + 18.0,
            fmt_tick(t)
        );
    }
    let _ = writeln!(
        svg,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">K</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        svg,
        r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        spec.metric.label()
    );

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = s
            .points
            .iter()
            .map(|&(x, m, _)| format!("{:.2},{:.2}", px(x), py(m)))
            .collect();
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            path.join(" ")
        );
        for &(x, m, se) in &s.points {
            let (cx, top, bottom) = (px(x), py(m + se), py(m - se));
            let _ = writeln!(
                svg,
                r#"<line x1="{cx:.2}" y1="{top:.2}" x2="{cx:.2}" y2="{bottom:.2}" stroke="{color}"/>"#
            );
            let _ = writeln!(
                svg,
                r#"<circle cx="{cx:.2}" cy="{:.2}" r="3" fill="{color}"/>"#,
                py(m)
            );
        }
        let ly = MARGIN_TOP + 10.0 + 20.0 * i as f64;
        let lx = MARGIN_LEFT + plot_w + 15.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 26.0,
            ly + 4.0,
            escape(&s.name)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
