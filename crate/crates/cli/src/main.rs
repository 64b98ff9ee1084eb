use std::path::PathBuf;
use std::process::ExitCode;

use algebroid_cli::{run, Backend, ExampleSource, Suite, SuiteConfig, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};
use algebroid_core::examples;
use clap::{ArgGroup, Parser};

/// Checks groupoid, algebroid and pregroupoid laws on finite tables and
/// built-in smooth examples.
#[derive(Debug, Parser)]
#[command(name = "algebroid", version, group(ArgGroup::new("source").required(true).args(["example", "file"])))]
#[command(after_help = after_help())]
struct Cli {
    /// Tangent backend.
    #[arg(long, value_enum, env = "ALGEBROID_BACKEND", default_value = "jet")]
    backend: Backend,
    /// Built-in example key, e.g. affine1 or pair-groupoid:2.
    #[arg(long, env = "ALGEBROID_EXAMPLE")]
    example: Option<String>,
    /// Finite groupoid or pregroupoid table file.
    #[arg(long, env = "ALGEBROID_FILE")]
    file: Option<PathBuf>,
    /// Suite to run; repeatable. Default: every suite that applies.
    #[arg(long = "suite", value_enum, env = "ALGEBROID_SUITE", value_delimiter = ',')]
    suites: Vec<Suite>,
    /// Tolerance for jet law checks.
    #[arg(long, env = "ALGEBROID_TOLERANCE")]
    tolerance: Option<f64>,
    /// Number of sample points for jet checks.
    #[arg(long, env = "ALGEBROID_SAMPLES", default_value_t = algebroid_core::SamplePlan::DEFAULT_COUNT)]
    samples: usize,
    /// Seed for sample points.
    #[arg(long, env = "ALGEBROID_SEED", default_value_t = algebroid_core::SamplePlan::DEFAULT_SEED)]
    seed: u64,
    /// Also write the report to this path.
    #[arg(long, env = "ALGEBROID_REPORT")]
    report: Option<PathBuf>,
}

fn after_help() -> String {
    format!(
        "Examples, jet backend: {}, {}\nExamples, finite backend: {}, {}\n\
         Exit status: 0 all laws pass, 1 some law fails, 2 configuration or load error.",
        examples::SMOOTH_GROUPOIDS.join(", "),
        examples::SMOOTH_PREGROUPOIDS.join(", "),
        examples::FINITE_GROUPOIDS.join(", "),
        examples::FINITE_PREGROUPOIDS.join(", "),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let example = match (cli.example, cli.file) {
        (Some(key), _) => ExampleSource::Builtin(key),
        (None, Some(path)) => ExampleSource::File(path),
        (None, None) => unreachable!("clap requires one source"),
    };
    let config = SuiteConfig {
        backend: cli.backend,
        example,
        suites: cli.suites,
        tolerance: cli.tolerance,
        samples: cli.samples,
        seed: cli.seed,
    };
    let report = match run(&config) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("algebroid: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let text = report.to_string();
    print!("{text}");
    if let Some(path) = cli.report {
        if let Err(e) = std::fs::write(&path, &text) {
            eprintln!("algebroid: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_CONFIG);
        }
    }
    ExitCode::from(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}
