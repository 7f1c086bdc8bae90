use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use nk_muddle::io::{parse_spec, read_aggregates_csv, write_outputs};
use nk_muddle::{brute_force_optimum, run_experiment, InteractionScheme, Landscape, RunOptions};

mod plot;

use plot::{render_svg, Metric, PlotSpec};

#[derive(Parser)]
#[command(
    name = "nk-muddle",
    version,
    about = "Search experiments on NK fitness landscapes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment described by a JSON spec and write its results.
    Run(RunArgs),
    /// Draw an SVG chart from an aggregates.csv file.
    Plot(PlotArgs),
    /// Enumerate a small landscape exhaustively and report its optimum.
    Oracle(OracleArgs),
    /// Landscape import/export.
    #[command(subcommand)]
    Landscape(LandscapeCommand),
}

#[derive(Args)]
struct RunArgs {
    /// Experiment spec (JSON).
    spec: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Override the spec's replication count.
    #[arg(long)]
    replications: Option<usize>,
    #[arg(long, env = "NK_MUDDLE_OUT_DIR", default_value = "nk-muddle-out")]
    out_dir: PathBuf,
    /// Report fitness relative to each landscape's global maximum (n <= 24).
    #[arg(long)]
    normalize: bool,
    /// Write a per-step trace of every search to traces.csv.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct PlotArgs {
    /// aggregates.csv written by `run`.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "fitness")]
    metric: String,
    /// Comma-separated algorithm ids; all algorithms when omitted.
    #[arg(long, value_delimiter = ',')]
    series: Vec<String>,
    #[arg(long)]
    output: PathBuf,
    #[arg(long)]
    title: Option<String>,
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value = "random")]
    scheme: InteractionScheme,
}

impl InstanceArgs {
    fn build(&self) -> Result<Landscape> {
        Ok(Landscape::build(self.seed, self.n, self.k, self.scheme)?)
    }
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LandscapeCommand {
    /// Generate a landscape and write it as JSON.
    Export {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a landscape JSON file and print a summary.
    Import { path: PathBuf },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn cmd_run(args: RunArgs) -> Result<()> {
    let mut spec = parse_spec(&args.spec)?;
    if let Some(r) = args.replications {
        spec.replications = r;
        spec.validate()?;
    }
    let cells = spec.k_values.len() * spec.replications;
    eprintln!(
        "running {cells} replications x {} algorithms on {} worker(s)",
        spec.algorithms.len(),
        args.workers
    );
    let result = run_experiment(
        &spec,
        RunOptions {
            workers: args.workers,
            normalize: args.normalize,
            trace: args.trace,
        },
    )?;
    let files = write_outputs(&result, &args.out_dir)?;
    for row in &result.aggregates.rows {
        println!(
            "k={:<3} {:<16} fitness {:.4} (se {:.4})  hamming {:6.2}  evaluations {:9.1}",
            row.k,
            row.algorithm,
            row.fitness.mean,
            row.fitness.se,
            row.hamming.mean,
            row.evaluations.mean
        );
    }
    for f in files {
        eprintln!("wrote {}", f.display());
    }
    Ok(())
}

fn cmd_plot(args: PlotArgs) -> Result<()> {
    let metric: Metric = args.metric.parse()?;
    let rows = read_aggregates_csv(&args.input)?;
    let svg = render_svg(
        &rows,
        &PlotSpec {
            metric,
            series: args.series,
            title: args.title,
        },
    )?;
    fs::write(&args.output, svg)
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    eprintln!("wrote {}", args.output.display());
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<()> {
    let landscape = args.instance.build()?;
    let report = brute_force_optimum(&landscape)?;
    emit(args.out.as_deref(), &serde_json::to_string_pretty(&report)?)
}

fn cmd_landscape(cmd: LandscapeCommand) -> Result<()> {
    match cmd {
        LandscapeCommand::Export { instance, out } => {
            let landscape = instance.build()?;
            emit(out.as_deref(), &landscape.to_json()?)
        }
        LandscapeCommand::Import { path } => {
            let text = fs::read_to_string(&path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            let l = Landscape::from_json(&text)?;
            println!(
                "n={} k={} scheme={} seed={} rows={}",
                l.n(),
                l.k(),
                l.scheme(),
                l.seed(),
                l.rows()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Plot(a) => cmd_plot(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Landscape(c) => cmd_landscape(c),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
