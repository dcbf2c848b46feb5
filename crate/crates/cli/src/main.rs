use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use fixpoint_cli::instance::load_file;
use fixpoint_cli::report::Report;
use fixpoint_cli::{commands, repro, CliResult};

#[derive(Parser)]
#[command(
    name = "fixpoint",
    version,
    about = "Fixed-point iteration and stability certificates for functional equations \
             on finite domains"
)]
struct Cli {
    /// Write the full JSON report to this path (written atomically).
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Override the instance's sampling seed.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Override the instance's tolerance (iteration for solve/certify,
    /// axiom probes for check-metric).
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Probe the distance axioms of the instance's space on a seeded sample.
    CheckMetric {
        /// Instance file (JSON, schema_version 1).
        #[arg(long, value_name = "PATH")]
        instance: PathBuf,
    },
    /// Estimate which contraction families the instance admits.
    Classify {
        #[arg(long, value_name = "PATH")]
        instance: PathBuf,
    },
    /// Iterate to the fixed point or solution and cross-check it.
    Solve {
        #[arg(long, value_name = "PATH")]
        instance: PathBuf,
    },
    /// Certify the quantitative distance bound claimed by the instance's
    /// theorem identifier.
    Certify {
        #[arg(long, value_name = "PATH")]
        instance: PathBuf,
    },
    /// Re-measure the pinned reproduction table. Ignores --seed and
    /// --tol: its output is byte-identical across runs.
    Repro,
}

fn run(cli: &Cli) -> CliResult<Report> {
    let with_instance = |name: &str,
                         path: &Path,
                         f: &dyn Fn(
        &fixpoint_cli::instance::InstanceFile,
        &fixpoint_cli::instance::Effective,
    ) -> CliResult<fixpoint_cli::report::CmdOutcome>|
     -> CliResult<Report> {
        let file = load_file(path)?;
        let eff = file.effective(cli.seed, cli.tol);
        let outcome = f(&file, &eff)?;
        let tol = if name == "check-metric" {
            eff.axiom_tol
        } else {
            eff.cfg.tol
        };
        Ok(Report::new(name, Some(path), eff.seed, Some(tol), outcome))
    };
    match &cli.command {
        Cmd::CheckMetric { instance } => {
            with_instance("check-metric", instance, &commands::check_metric)
        }
        Cmd::Classify { instance } => with_instance("classify", instance, &commands::classify),
        Cmd::Solve { instance } => with_instance("solve", instance, &commands::solve),
        Cmd::Certify { instance } => with_instance("certify", instance, &commands::certify),
        Cmd::Repro => Ok(Report::new("repro", None, 0, None, repro::repro()?)),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(report) => {
            print!("{}", report.human());
            if let Some(out) = &cli.out {
                if let Err(e) = report.write_json(out) {
                    eprintln!("fixpoint: error: {e}");
                    std::process::exit(e.exit_code());
                }
            }
            report.exit_code
        }
        Err(e) => {
            eprintln!("fixpoint: error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}
