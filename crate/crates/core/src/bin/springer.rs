//! Command-line front end. Exit status: 0 on success, 1 when a check fails
//! or an input lies outside a map's domain, 2 on usage and parse errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use springer_core::groups::GroupKind;
use springer_core::parabolic::{Composition, ParabolicGL};
use springer_core::series::{ah_coeffs_mod_p, ah_inverse_coeffs, ah_rational_coeffs};
use springer_core::springer::{ah_exp, ah_log, truncated_exp, truncated_log, witt_embed};
use springer_core::verify::{run_suite, SuiteConfig};
use springer_core::witt::{witt_add, witt_from_integer, witt_neg, witt_order, witt_pow_p, WittVector};
use springer_core::{Error, Execution, Field, FpMatrix, Result};

#[derive(Parser)]
#[command(name = "springer", version, about = "Exact Artin-Hasse exponentials, Witt embeddings and property checks over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Artin-Hasse coefficients c_0..c_N.
    AhCoeffs {
        #[arg(long)]
        p: u32,
        /// Truncation degree N.
        #[arg(long)]
        n: usize,
        /// Print the exact rational coefficients instead of their residues.
        #[arg(long)]
        rational: bool,
        /// Print the coefficients of 1/e_p(t) instead.
        #[arg(long, conflicts_with = "rational")]
        inverse: bool,
    },
    /// Apply e_p (or the degree < p exponential) to a nilpotent matrix.
    Exp(MapArgs),
    /// Invert e_p (or the degree < p exponential) on a unipotent matrix.
    Log(MapArgs),
    /// Image of a Witt vector under the embedding determined by a nilpotent matrix.
    Embed {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated entries a_0,…,a_{m−1}.
        #[arg(long)]
        vector: String,
    },
    /// Witt vector arithmetic.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Standard parabolics of GL_n.
    Parabolic {
        #[command(subcommand)]
        op: ParabolicOp,
    },
    /// Run property suites and write a JSON report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MapArgs {
    /// Matrix file: {"p","e","n","entries"}.
    #[arg(long)]
    matrix: PathBuf,
    /// Use the degree < p truncated series.
    #[arg(long)]
    truncated: bool,
}

#[derive(Args, Clone)]
struct WittField {
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    e: u8,
    /// Vector length; checked against the given entries when present.
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Subcommand)]
enum WittOp {
    Add {
        #[command(flatten)]
        field: WittField,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    Neg {
        #[command(flatten)]
        field: WittField,
        #[arg(long)]
        vector: String,
    },
    PowP {
        #[command(flatten)]
        field: WittField,
        #[arg(long)]
        vector: String,
    },
    Order {
        #[command(flatten)]
        field: WittField,
        #[arg(long)]
        vector: String,
    },
    /// n·(1,0,…,0) in W_m(F_p).
    FromInt {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
}

#[derive(Subcommand)]
enum ParabolicOp {
    /// ε_P(X) for X in the nilradical.
    Eps {
        #[arg(long)]
        comp: String,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Nilpotence class of the nilradical and whether P is restricted.
    Class {
        #[arg(long)]
        comp: String,
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        e: u8,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated suite names, or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Comma-separated primes.
    #[arg(long, default_value = "2,3,5")]
    p: String,
    /// Comma-separated group kinds (GL, SL, SO, Sp); default: all admitted per prime.
    #[arg(long)]
    kinds: Option<String>,
    /// Dimension cap for group-level suites.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    /// Dimension cap for parabolic, centralizer and φ_a suites.
    #[arg(long, default_value_t = 6)]
    max_n_small: usize,
    /// Seeded trials per configuration (overrides each suite's default).
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Run cases on one thread.
    #[arg(long)]
    sequential: bool,
    /// List suite names with their statements and exit.
    #[arg(long)]
    list: bool,
}

fn read_matrix(path: &Path) -> Result<FpMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    FpMatrix::from_json(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Usage(format!("bad {what} {s:?}")))
        })
        .collect()
}

fn witt_vector(f: &WittField, text: &str) -> Result<WittVector> {
    let field = Field::new(f.p, f.e)?;
    let w = WittVector::parse(field, text)?;
    if let Some(m) = f.m {
        if m != w.len() {
            return Err(Error::Usage(format!(
                "--m {m} but the vector {text:?} has {} entries",
                w.len()
            )));
        }
    }
    Ok(w)
}

fn print_matrix(m: &FpMatrix) {
    println!("{}", m.to_json());
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::AhCoeffs { p, n, rational, inverse } => {
            let line = if rational {
                ah_rational_coeffs(p, n)?
                    .coeffs()
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
            } else if inverse {
                ah_inverse_coeffs(p, n)?.to_strings()
            } else {
                ah_coeffs_mod_p(p, n)?.to_strings()
            };
            println!("{}", line.join(" "));
        }
        Command::Exp(args) => {
            let x = read_matrix(&args.matrix)?;
            print_matrix(&if args.truncated { truncated_exp(&x)? } else { ah_exp(&x)? });
        }
        Command::Log(args) => {
            let u = read_matrix(&args.matrix)?;
            print_matrix(&if args.truncated { truncated_log(&u)? } else { ah_log(&u)? });
        }
        Command::Embed { matrix, vector } => {
            let x = read_matrix(&matrix)?;
            let w = WittVector::parse(x.field(), &vector)?;
            print_matrix(&witt_embed(&x, &w)?);
        }
        Command::Witt { op } => match op {
            WittOp::Add { field, lhs, rhs } => {
                let sum = witt_add(&witt_vector(&field, &lhs)?, &witt_vector(&field, &rhs)?)?;
                println!("{sum}");
            }
            WittOp::Neg { field, vector } => println!("{}", witt_neg(&witt_vector(&field, &vector)?)?),
            WittOp::PowP { field, vector } => println!("{}", witt_pow_p(&witt_vector(&field, &vector)?)),
            WittOp::Order { field, vector } => println!("{}", witt_order(&witt_vector(&field, &vector)?)),
            WittOp::FromInt { p, m, n } => println!("{}", witt_from_integer(Field::prime(p)?, m, n)?),
        },
        Command::Parabolic { op } => match op {
            ParabolicOp::Eps { comp, matrix } => {
                let x = read_matrix(&matrix)?;
                let comp: Composition = comp.parse()?;
                if comp.n() != x.n() {
                    return Err(Error::Usage(format!(
                        "composition {comp} has size {} but the matrix is {}x{}",
                        comp.n(),
                        x.n(),
                        x.n()
                    )));
                }
                print_matrix(&ParabolicGL::new(comp, x.field()).eps(&x)?);
            }
            ParabolicOp::Class { comp, p, e } => {
                let par = ParabolicGL::new(comp.parse()?, Field::new(p, e)?);
                println!("class {} restricted {}", par.nilpotence_class(), par.is_restricted());
            }
        },
        Command::Verify(args) => {
            if args.list {
                let mut out = std::io::stdout().lock();
                for name in springer_core::verify::suite_names() {
                    let anchor = springer_core::verify::suite_anchor(name).unwrap_or_default();
                    if writeln!(out, "{name}\t{anchor}").is_err() {
                        break;
                    }
                }
                return Ok(true);
            }
            let kinds = args
                .kinds
                .as_deref()
                .map(|k| parse_list::<GroupKind>(k, "group kind"))
                .transpose()?;
            let cfg = SuiteConfig {
                suites: SuiteConfig::parse_suites(&args.suite)?,
                primes: parse_list(&args.p, "prime")?,
                kinds,
                max_n: args.max_n,
                max_n_small: args.max_n_small,
                trials: args.trials,
                seed: args.seed,
                execution: if args.sequential { Execution::Sequential } else { Execution::Parallel },
            };
            let report = run_suite(&cfg)?;
            let text = report.to_json_pretty();
            match &args.report {
                Some(path) => {
                    fs::write(path, text + "\n")
                        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))?;
                    for s in &report.suites {
                        let status = if s.failed == 0 { "ok" } else { "FAILED" };
                        eprintln!("{:<18} {:>7} cases {:>7} failed  {status}", s.name, s.cases, s.failed);
                    }
                }
                None => println!("{text}"),
            }
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Usage(_) | Error::Parse { .. } | Error::Argument(_) | Error::Mismatch(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
