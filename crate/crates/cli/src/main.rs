//! `clusterbd` command-line front end.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use clusterbd::cluster::Seed;
use clusterbd::exactnum::QMatrix;
use clusterbd::genminor::{initial_cluster, DoubleWord};
use clusterbd::laurent::LaurentPoly;
use clusterbd::paperscases::{load_case, named_function, verify_case, verify_twist, VerifyOptions, CASE_NAMES};
use clusterbd::rmatrix::{assemble_r, check_cybe_unitarity, solve_r0, RTensor};
use clusterbd::rootdata::BdTriple;
use clusterbd::sklyanin::{sklyanin_bracket, BracketSpec};

#[derive(Parser)]
#[command(name = "clusterbd", version, about = "Cluster structures from Belavin-Drinfeld r-matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every verification stage for a catalog case.
    Verify {
        case: String,
        #[arg(long)]
        json: bool,
        /// Skip the SL4 bracket extraction and regularity stages.
        #[arg(long)]
        skip_slow: bool,
    },
    /// Sklyanin bracket of two functions of a case.
    Bracket {
        #[arg(long)]
        case: String,
        /// Basis name (P3, y1, x12, ...) or polynomial JSON.
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        json: bool,
    },
    /// Mutate a seed file in direction k (1-based).
    Mutate {
        #[arg(long)]
        seed: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Assemble r for a triple and check CYBE and unitarity.
    Cybe {
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        r0: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Initial cluster of generalized minors for a double word.
    Minors {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: PathBuf,
    },
    /// Check one Cartan twist of a case bracket.
    Twist {
        #[arg(long)]
        case: String,
        #[arg(long)]
        v1: PathBuf,
        #[arg(long)]
        v2: PathBuf,
        #[arg(long)]
        v12: PathBuf,
    },
    /// Verify every catalog case.
    Report {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        skip_slow: bool,
    },
}

/// Exit status of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
}

impl Outcome {
    fn from_passed(passed: bool) -> Self {
        if passed {
            Outcome::Ok
        } else {
            Outcome::Mismatch
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("values serialize"));
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("CLUSTERBD_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| anyhow!("CLUSTERBD_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn resolve_poly(case: &clusterbd::paperscases::CaseSpec, arg: &str) -> anyhow::Result<LaurentPoly> {
    if arg.trim_start().starts_with('[') {
        let value: Value = serde_json::from_str(arg).context("parsing polynomial JSON")?;
        return LaurentPoly::from_json(&case.ctx, &value).map_err(Into::into);
    }
    named_function(case, arg).ok_or_else(|| anyhow!("case {} has no function named {arg:?}", case.name))
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Verify { case, json, skip_slow } => {
            let report = verify_case(&case, &VerifyOptions { skip_slow, ..VerifyOptions::default() })?;
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.to_text(true));
            }
            Ok(Outcome::from_passed(report.passed()))
        }
        Command::Bracket { case, f, g, json } => {
            let spec = load_case(&case)?;
            let (f, g) = (resolve_poly(&spec, &f)?, resolve_poly(&spec, &g)?);
            let value = sklyanin_bracket(&BracketSpec::new(spec.r.clone()), &f, &g)?;
            if json {
                print_json(&value.to_json());
            } else {
                println!("{value}");
            }
            Ok(Outcome::Ok)
        }
        Command::Mutate { seed, k } => {
            let seed = Seed::from_json(&read_json(&seed)?)?;
            let size = seed.matrix.n();
            if k == 0 || k > size {
                bail!("direction -k {k} outside 1..={size}");
            }
            match seed.mutate(k - 1) {
                Ok(mutated) => {
                    print_json(&mutated.to_json());
                    Ok(Outcome::Ok)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(Outcome::Mismatch)
                }
            }
        }
        Command::Cybe { triple, r0, json } => {
            let t = BdTriple::from_json(&read_json(&triple)?)?;
            if let Err(e) = t.validate() {
                eprintln!("not a Belavin-Drinfeld triple: {e}");
                return Ok(Outcome::Mismatch);
            }
            let solution = solve_r0(&t)?;
            let r0 = match r0 {
                Some(path) => RTensor::from_json(t.n, &read_json(&path)?)?,
                None => solution.particular.clone(),
            };
            let admissible = solution.contains(&r0);
            if !admissible {
                eprintln!("r0 does not satisfy the Cartan constraints of the triple");
                return Ok(Outcome::Mismatch);
            }
            let report = check_cybe_unitarity(&assemble_r(&t, &r0)?);
            let passed = report.passed();
            if json {
                print_json(&json!({
                    "k_T": t.k_t(),
                    "r0_solution_dimension": solution.freedom.len(),
                    "cybe_residual_terms": report.cybe.len(),
                    "unitarity_residual_terms": report.unitarity_residual.len(),
                    "passed": passed,
                }));
            } else {
                println!("k_T = {}", t.k_t());
                println!("r0 solution space dimension {}", solution.freedom.len());
                println!("CYBE residual terms: {}", report.cybe.len());
                println!("r + r21 - t residual terms: {}", report.unitarity_residual.len());
                println!("result: {}", if passed { "ok" } else { "FAILED" });
            }
            Ok(Outcome::from_passed(passed))
        }
        Command::Minors { n, word } => {
            let word = DoubleWord::from_json(&read_json(&word)?)?;
            if word.n != n {
                bail!("word is for n = {}, not {n}", word.n);
            }
            print_json(&initial_cluster(&word)?.to_json());
            Ok(Outcome::Ok)
        }
        Command::Twist { case, v1, v2, v12 } => {
            let matrix = |path: &Path| -> anyhow::Result<QMatrix> {
                serde_json::from_value(read_json(path)?).with_context(|| format!("reading a matrix from {}", path.display()))
            };
            let (sample, point) = verify_twist(&case, matrix(&v1)?, matrix(&v2)?, matrix(&v12)?)?;
            let passed = sample.passed() && point.consistent();
            print_json(&json!({
                "case": case,
                "sample": sample.to_json(),
                "poisson_lie": point.to_json(),
                "passed": passed,
            }));
            Ok(Outcome::from_passed(passed))
        }
        Command::Report { json, skip_slow } => {
            let options = VerifyOptions { skip_slow, ..VerifyOptions::default() };
            let reports: Vec<_> = CASE_NAMES
                .iter()
                .map(|name| verify_case(name, &options))
                .collect::<Result<_, _>>()?;
            let passed = reports.iter().all(|r| r.passed());
            if json {
                print_json(&json!({
                    "cases": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                    "passed": passed,
                }));
            } else {
                for r in &reports {
                    print!("{}", r.to_text(true));
                }
                println!("overall: {}", if passed { "ok" } else { "FAILED" });
            }
            Ok(Outcome::from_passed(passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
