use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hardy_core::checks::{run_suite, CheckConfig, Suite};
use hardy_core::eval::evaluate;
use hardy_core::hardy::{AtomQuadruple, HARDY_DEPTH};
use hardy_core::numerals::{NumeralBase, NumeralSpec, NumeralSystem};
use hardy_core::quantum::{run_double_mzi, BeamSplitterConvention};
use hardy_core::report::reproduce;

// Writes a line to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hardy",
    version,
    about = "Set-theoretic model of Hardy's paradox"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum System {
    Vn,
    Zm,
}

#[derive(Subcommand)]
enum Command {
    /// Build the model, run every check and report the double-click probability.
    Reproduce {
        /// Four comma-separated atom labels.
        #[arg(long, value_delimiter = ',', default_value = "x1,x2,x3,x4")]
        atoms: Vec<String>,
        #[arg(long, default_value_t = HARDY_DEPTH)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a set expression, e.g. `intersect(vn(2,x1), zm(2,x1))`.
    Eval { expression: String },
    /// Run the invariant suites.
    Check {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Run one suite: numerals, axioms, quadruples, distinctness, quantum.
        #[arg(long)]
        suite: Option<Suite>,
    },
    /// Outcome distribution of the double Mach-Zehnder amplitude calculation.
    Quantum {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print a numeral in canonical set notation.
    Numerals {
        #[arg(long, value_enum)]
        system: System,
        #[arg(long)]
        n: usize,
        /// `∅`, `{}` or an atom label.
        #[arg(long, default_value = "∅")]
        base: String,
    },
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Reproduce {
            atoms,
            depth,
            format,
        } => cmd_reproduce(&atoms, depth, format),
        Command::Eval { expression } => match evaluate(&expression) {
            Ok(v) => {
                out!("{v}");
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(e),
        },
        Command::Check {
            seed,
            trials,
            suite,
        } => cmd_check(CheckConfig { seed, trials }, suite),
        Command::Quantum { format } => {
            let d = run_double_mzi(&BeamSplitterConvention::balanced())
                .expect("balanced splitter is unitary");
            match format {
                Format::Machine => {
                    out!(
                        "{}",
                        serde_json::to_string_pretty(&d).expect("distribution serializes")
                    )
                }
                Format::Text => {
                    out!("p_gamma  {}", d.p_gamma);
                    out!("p_cc     {}", d.p_cc);
                    out!("p_cd     {}", d.p_cd);
                    out!("p_dc     {}", d.p_dc);
                    out!("p_dd     {}", d.p_dd);
                    out!("total    {}", d.total());
                }
            }
            ExitCode::SUCCESS
        }
        Command::Numerals { system, n, base } => {
            let base: NumeralBase = match base.parse() {
                Ok(b) => b,
                Err(e) => return usage_error(e),
            };
            let system = match system {
                System::Vn => NumeralSystem::VonNeumann,
                System::Zm => NumeralSystem::Zermelo,
            };
            let spec = NumeralSpec {
                system,
                depth: n,
                base,
            };
            if n > spec.input_limit() {
                return usage_error(format!(
                    "--n {n} exceeds the limit of {}",
                    spec.input_limit()
                ));
            }
            out!("{}", spec.build());
            ExitCode::SUCCESS
        }
    }
}

fn cmd_reproduce(atoms: &[String], depth: usize, format: Format) -> ExitCode {
    let labels: [&str; 4] = match atoms {
        [a, b, c, d] => [a, b, c, d],
        _ => {
            return usage_error(format!(
                "--atoms needs exactly 4 labels, got {}",
                atoms.len()
            ))
        }
    };
    let quad = match AtomQuadruple::from_labels(labels) {
        Ok(q) => q,
        Err(e) => return usage_error(e),
    };
    let report = match reproduce(quad, depth) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    match format {
        Format::Text => out!("{}", report.to_text().trim_end()),
        Format::Machine => out!("{}", report.to_json()),
    }
    if report.all_checks_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn cmd_check(config: CheckConfig, suite: Option<Suite>) -> ExitCode {
    let suites = suite.map_or(Suite::ALL.to_vec(), |s| vec![s]);
    let mut failed = Vec::new();
    for suite in suites {
        let outcome = run_suite(suite, config);
        out!("== {suite} ==");
        for line in &outcome.lines {
            out!("{line}");
        }
        if !outcome.passed() {
            failed.push(suite.name());
        }
    }
    if failed.is_empty() {
        out!("all suites passed");
        ExitCode::SUCCESS
    } else {
        out!("failed suites: {}", failed.join(", "));
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}
