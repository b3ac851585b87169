use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;

use workbench::cherednik::CentralCoeffs;
use workbench::cm::{cm_psi, CmPoint, CmPointJson};
use workbench::quasiexp::{QExpJson, QExpSpace};
use workbench::verify::{self, Config, Suite};
use workbench::Error;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "workbench", version, about = "Exact checks for the Bethe, Cherednik and Calogero-Moser constructions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write the coefficient table c_ij of the universal central polynomial.
    Central {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and print a one-line JSON report.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Expand the tau-function of a Calogero-Moser point or a space of
    /// quasi-exponentials.
    #[command(group(ArgGroup::new("input").required(true).args(["point", "qexp"])))]
    Psi {
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long)]
        qexp: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = if matches!(e, Error::OverBound { .. }) { EXIT_BOUND } else { EXIT_USAGE };
        Fail { code, msg: e.to_string() }
    }
}

fn usage(msg: String) -> Fail {
    Fail { code: EXIT_USAGE, msg }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Fail> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Fail> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Fail { code: EXIT_FAILED, msg: format!("{}: {e}", p.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Central { n, out } => {
            if n == 0 {
                return Err(usage("N must be at least 1".into()));
            }
            write_json(&CentralCoeffs::compute(n)?.to_json(), Some(&out))
        }
        Cmd::Verify { suite, n, seed, trials, inject_fault } => {
            if n == 0 {
                return Err(usage("N must be at least 1".into()));
            }
            let report = verify::run(suite, &Config { n, seed, trials, fault: inject_fault })?;
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            if report.passed {
                Ok(())
            } else {
                Err(Fail { code: EXIT_FAILED, msg: format!("{suite} failed") })
            }
        }
        Cmd::Psi { point, qexp, order, out } => {
            if order == 0 {
                return Err(usage("order must be at least 1".into()));
            }
            let psi = match (point, qexp) {
                (Some(p), None) => cm_psi(&CmPoint::from_json(&read_json::<CmPointJson>(&p)?)?, order)?,
                (None, Some(q)) => QExpSpace::from_json(&read_json::<QExpJson>(&q)?)?.psi(order)?,
                _ => unreachable!("clap enforces exactly one input"),
            };
            write_json(&psi.to_json(), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("workbench: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
