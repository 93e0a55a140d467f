use std::fs;
use std::io::{self, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use judicious::oracle::{conjecture_gap_report, DEFAULT_BUDGET};
use judicious::solver::judicious_constant;
use judicious::{
    generate, parse_instance, partition_judicious, serialize_instance, threshold,
    verify_certificate, Certificate, Error, GenMode, GenSpec, MultiHypergraph, Partition,
    Verification,
};
use serde_json::json;

const EXIT_INVALID: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_LOGIC: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "judicious",
    version,
    about = "Judicious partitions of uniform multi-hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition an instance into r classes, each meeting at least c_r·m edges.
    Partition {
        #[arg(long)]
        input: PathBuf,
        /// Number of classes; defaults to the uniformity of the instance.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Also write the partition as one line of class indices.
        #[arg(long)]
        assignment_out: Option<PathBuf>,
    },
    /// Check a partition (index line or JSON certificate) against an instance.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        /// Number of classes for an index line; defaults to the uniformity.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Exhaustive optimum for small instances.
    Brute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        /// Largest r^n the search may visit.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Write a generated instance.
    Gen {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "uniform-random")]
        mode: GenMode,
        /// Defaults to standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Size, uniformity and maximum degree of an instance.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn resolve(format: Option<Format>) -> Format {
    format.unwrap_or_else(|| {
        if io::stdout().is_terminal() {
            Format::Text
        } else {
            Format::Json
        }
    })
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Logic { .. } => EXIT_LOGIC,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        let message = match e.diagnostic() {
            Some(d) => format!("{e}\n{d}"),
            None => e.to_string(),
        };
        Failure { code, message }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn load(path: &Path) -> Result<MultiHypergraph, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

fn class_count(h: &MultiHypergraph, r: Option<usize>) -> Result<usize, Failure> {
    match (r, h.uniformity()) {
        (Some(r), _) => Ok(r),
        (None, Some(u)) => Ok(u),
        (None, None) if h.edge_count() == 0 => Err(Failure {
            code: EXIT_INPUT,
            message: "edgeless instance: pass --r".into(),
        }),
        (None, None) => Err(Failure {
            code: EXIT_INPUT,
            message: "instance is not uniform: pass --r".into(),
        }),
    }
}

fn invalid(reason: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: format!("invalid: {reason}"),
    }
}

/// Reads a partition file as either a JSON certificate or one line of
/// class indices.
fn load_certificate(
    h: &MultiHypergraph,
    path: &Path,
    r: Option<usize>,
) -> Result<Certificate, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        return Ok(Certificate::from_json(&text)?);
    }
    let r = class_count(h, r)?;
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.len() != 1 {
        return Err(Failure {
            code: EXIT_INPUT,
            message: format!("expected one line of class indices, found {}", lines.len()),
        });
    }
    let assignment = lines[0]
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("bad class index: {e}"),
        })?;
    if assignment.len() != h.vertex_count() {
        return Err(invalid(format!(
            "{} class indices for {} vertices",
            assignment.len(),
            h.vertex_count()
        )));
    }
    let p = Partition::new(r, assignment).map_err(invalid)?;
    Certificate::for_partition(h, &p).map_err(invalid)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    let emit = |out: &mut io::StdoutLock, text: &str| {
        out.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("stdout: {e}"),
        })
    };
    match cli.command {
        Command::Partition {
            input,
            r,
            format,
            assignment_out,
        } => {
            let h = load(&input)?;
            let r = class_count(&h, r)?;
            let cert = partition_judicious(&h, r)?;
            if let Some(path) = assignment_out {
                let p = cert.partition(h.vertex_count())?;
                write(&path, &format!("{}\n", p.to_index_line()))?;
            }
            let text = match resolve(format) {
                Format::Json => format!("{}\n", cert.to_json()),
                Format::Text => cert.to_text(),
            };
            emit(&mut out, &text)
        }
        Command::Verify {
            input,
            partition,
            r,
        } => {
            let h = load(&input)?;
            let cert = load_certificate(&h, &partition, r)?;
            match verify_certificate(&h, &cert) {
                Verification::Valid => emit(
                    &mut out,
                    &format!(
                        "valid: {} classes, min coverage {} >= {}\n",
                        cert.r,
                        cert.min_coverage(),
                        cert.threshold
                    ),
                ),
                Verification::Invalid(reason) => Err(invalid(reason)),
            }
        }
        Command::Brute {
            input,
            r,
            budget,
            jobs,
            format,
        } => {
            let h = load(&input)?;
            let report = conjecture_gap_report(&h, r, budget, jobs.max(1))?;
            let text = match resolve(format) {
                Format::Text => report.to_string(),
                Format::Json => {
                    let value = json!({
                        "r": report.r,
                        "m": report.m,
                        "optimum": report.optimum,
                        "ratio": report.ratio.map(|q| fraction(*q.numer(), *q.denom())),
                        "proven": fraction(*report.proven.numer(), *report.proven.denom()),
                        "conjectured": fraction(*report.conjectured.numer(), *report.conjectured.denom()),
                        "assignment": report.partition.assignment(),
                    });
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&value).expect("plain JSON value")
                    )
                }
            };
            emit(&mut out, &text)
        }
        Command::Gen {
            r,
            n,
            m,
            seed,
            mode,
            output,
        } => {
            let h = generate(&GenSpec {
                r,
                n,
                m,
                seed,
                mode,
            })?;
            let text = serialize_instance(&h);
            match output {
                Some(path) => write(&path, &text),
                None => emit(&mut out, &text),
            }
        }
        Command::Stats { input } => {
            let h = load(&input)?;
            let m = h.edge_count();
            let mut text = format!(
                "n             {}\nm             {}\nuniformity    {}\nmax degree    {}\n",
                h.vertex_count(),
                m,
                h.uniformity().map_or("none".into(), |u| u.to_string()),
                h.max_degree()
            );
            if let Some(r) = h.uniformity().filter(|&u| u >= 2) {
                let (num, den) = judicious_constant(r)?;
                let tau = threshold(r, m)?;
                let relation = if tau.is_met_by(h.max_degree() as u64) {
                    ">="
                } else {
                    "<"
                };
                text.push_str(&format!("c_r           {num}/{den}\n"));
                text.push_str(&format!("c_r·m         {tau}\n"));
                text.push_str(&format!("max degree    {relation} c_r·m\n"));
            }
            emit(&mut out, &text)
        }
    }
}

fn fraction(num: u64, den: u64) -> serde_json::Value {
    json!({ "num": num, "den": den })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("judicious: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
