use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use raney_core::lattice::{boolean, chain, mk, n5, parse_lattice, Lattice, LatticeError};
use raney_core::structures::FiniteQuantale;
use raney_core::suite::{
    check_ids, run_corpus, run_m5, run_quantale, run_suite, CorpusReport, QuantaleReport, Report, SuiteConfig,
    Subject,
};

#[derive(Parser)]
#[command(name = "raney", version, about = "Exhaustive checks on finite lattices and their quantales of sup-preserving maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest homset to enumerate.
    #[arg(long, global = true, default_value_t = raney_core::endo::DEFAULT_MAX_HOMSET)]
    max_homset: usize,

    /// Largest homset for the irreducible and autoduality analysis.
    #[arg(long, global = true, default_value_t = raney_core::structures::DEFAULT_MAX_AUTODUAL)]
    max_autodual: usize,

    /// Comma-separated check ids to run (default: all).
    #[arg(long, global = true, value_delimiter = ',')]
    checks: Option<Vec<String>>,

    /// Treat skipped checks as failures (exit code 3).
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print a lattice file for a standard family.
    Gen {
        #[arg(value_enum)]
        family: Family,
        /// Size parameter (ignored for n5).
        param: Option<usize>,
    },
    /// Print the summary flags for a lattice file.
    Analyze { file: PathBuf },
    /// Run the verification suite on a lattice or quantale file, or on the
    /// default corpus.
    Verify {
        #[arg(required_unless_present = "corpus")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        corpus: bool,
    },
    /// Run the checks on the M5 quantale.
    M5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Chain,
    Boolean,
    M,
    N5,
}

enum Failure {
    Input(String),
}

fn config(cli: &Cli) -> Result<SuiteConfig, Failure> {
    let checks = match &cli.checks {
        None => None,
        Some(list) => {
            let known = check_ids();
            if let Some(bad) = list.iter().find(|c| !known.contains(&c.as_str())) {
                return Err(Failure::Input(format!("unknown check id `{bad}`")));
            }
            Some(list.iter().cloned().collect::<BTreeSet<_>>())
        }
    };
    Ok(SuiteConfig {
        max_homset: cli.max_homset,
        max_autodual: cli.max_autodual,
        checks,
        ..SuiteConfig::default()
    })
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_lattice(path: &Path) -> Result<Lattice, Failure> {
    parse_lattice(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn subject_name(path: &Path) -> String {
    path.file_stem().map_or_else(|| "lattice".into(), |s| s.to_string_lossy().into_owned())
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("report serializes")),
        Format::Text => print!("{}", text()),
    }
}

fn status(failed: usize, skipped: usize, strict: bool) -> ExitCode {
    if failed > 0 {
        ExitCode::from(1)
    } else if strict && skipped > 0 {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

fn generate(family: Family, param: Option<usize>) -> Result<Lattice, Failure> {
    let need = || param.ok_or_else(|| Failure::Input("this family needs a size parameter".into()));
    let built: Result<Lattice, LatticeError> = match family {
        Family::Chain => chain(need()?),
        Family::Boolean => boolean(need()?),
        Family::M => mk(need()?),
        Family::N5 => Ok(n5()),
    };
    built.map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: &Cli) -> Result<ExitCode, Failure> {
    let cfg = config(cli)?;
    match &cli.command {
        Command::Gen { family, param } => {
            println!("{}", generate(*family, *param)?.to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::Analyze { file } => {
            let lattice = load_lattice(file)?;
            let only_summary = SuiteConfig {
                checks: Some(BTreeSet::new()),
                ..cfg
            };
            let report = run_suite(&Subject::new(subject_name(file), lattice), &only_summary);
            #[derive(Serialize)]
            struct Analysis<'a> {
                lattice: &'a raney_core::suite::LatticeDescriptor,
                summary: &'a raney_core::suite::Summary,
            }
            let analysis = Analysis {
                lattice: &report.lattice,
                summary: &report.summary,
            };
            emit(cli.format, &analysis, || report.to_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { corpus: true, .. } => {
            let report: CorpusReport = run_corpus(&cfg);
            emit(cli.format, &report, || report.to_text());
            Ok(status(report.failed(), report.skipped(), cli.strict))
        }
        Command::Verify { file, .. } => {
            let file = file.as_ref().expect("clap requires a file without --corpus");
            let text = read(file)?;
            let is_quantale = serde_json::from_str::<serde_json::Value>(&text)
                .ok()
                .is_some_and(|v| v.get("mult").is_some());
            if is_quantale {
                let q = FiniteQuantale::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
                let report: QuantaleReport = run_quantale(&subject_name(file), &q, &cfg);
                emit(cli.format, &report, || report.to_text());
                Ok(status(report.failed(), report.skipped(), cli.strict))
            } else {
                let lattice = load_lattice(file)?;
                let report: Report = run_suite(&Subject::new(subject_name(file), lattice), &cfg);
                emit(cli.format, &report, || report.to_text());
                Ok(status(report.failed(), report.skipped(), cli.strict))
            }
        }
        Command::M5 => {
            let report = run_m5(&cfg);
            emit(cli.format, &report, || report.to_text());
            Ok(status(report.failed(), report.skipped(), cli.strict))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
