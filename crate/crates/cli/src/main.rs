//! `promolab`: promotion orbits, spectra, theorem checks and quasipolynomial fits.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage, parse or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use promolab::enumeration::enumerate_syt;
use promolab::fitter::fit_quasipolynomial;
use promolab::verify::{verify, Grid, REPORT_VERSION, THEOREMS};
use promolab::promotion::orbit_lengths;
use promolab::{orbit, Partition, Spectrum, Tableau};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "promolab", version, about = "Promotion orbits of standard Young tableaux")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Period and canonical representative of one tableau.
    Orbit {
        /// JSON file holding the rows, e.g. [[1,2,5],[3,4]].
        #[arg(long)]
        tableau: PathBuf,
        /// Also list every orbit member.
        #[arg(long)]
        members: bool,
    },
    /// Orbit-length multiset and lcm over all SYT of a shape.
    Spectrum {
        #[arg(long, value_parser = parse_shape)]
        shape: Partition,
    },
    /// Check a theorem over a parameter grid.
    Verify(VerifyArgs),
    /// Fit a quasipolynomial in n to the periods of T[n].
    Fit {
        /// JSON file holding the rows of the lower part T.
        #[arg(long)]
        tableau: PathBuf,
        /// Range of n, e.g. 10..40.
        #[arg(long, value_parser = parse_range)]
        grid: (u32, u32),
        /// Largest trial modulus.
        #[arg(long, default_value_t = 4)]
        max_modulus: u32,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id; run with an unknown id to list them.
    theorem: String,
    /// Values of n: a single value, a list a,b,c, or a range a..b.
    #[arg(long, value_parser = parse_ns)]
    n: Option<List>,
    /// Range of n, same as --n a..b.
    #[arg(long, value_parser = parse_range)]
    grid: Option<(u32, u32)>,
    /// Run lengths, comma separated.
    #[arg(long, value_parser = parse_list)]
    ell: Option<List>,
    /// Run multiplicities, comma separated.
    #[arg(long, value_parser = parse_list)]
    r: Option<List>,
    /// Inner shapes for the generic check, separated by ';'.
    #[arg(long, value_parser = parse_shapes)]
    shape: Option<Shapes>,
}

#[derive(Clone)]
struct List(Vec<u32>);

#[derive(Clone)]
struct Shapes(Vec<Partition>);

enum Failure {
    Usage(String),
    Verification(Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(cli.command);
    let (report, code) = match result {
        Ok(v) => (v, 0),
        Err(Failure::Verification(v)) => (v, 1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    match &cli.out {
        Some(path) => {
            if let Err(e) = fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(code)
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn run(command: Command) -> Result<Value, Failure> {
    match command {
        Command::Orbit { tableau, members } => {
            let t = read_tableau(&tableau)?;
            let mut o = orbit(&t);
            if !members {
                o.members = None;
            }
            let mut v = serde_json::to_value(&o).map_err(usage)?;
            v["version"] = json!(REPORT_VERSION);
            Ok(v)
        }
        Command::Spectrum { shape } => {
            let all = enumerate_syt(&shape).map_err(usage)?;
            let lengths = orbit_lengths(&all).map_err(usage)?;
            let s = Spectrum::from_lengths(shape, &lengths);
            Ok(json!({
                "version": REPORT_VERSION,
                "shape": s.shape,
                "tableaux": s.total(),
                "orbit_lengths": s.orbit_lengths,
                "lcm": s.lcm,
            }))
        }
        Command::Verify(args) => {
            let mut ns = args.n.map(|l| l.0).unwrap_or_default();
            if let Some((a, b)) = args.grid {
                ns.extend(a..=b);
            }
            let grid = Grid {
                ns,
                ells: args.ell.map(|l| l.0).unwrap_or_default(),
                rs: args.r.map(|l| l.0).unwrap_or_default(),
                shapes: args.shape.map(|s| s.0).unwrap_or_default(),
            };
            let report = verify(&args.theorem, &grid).map_err(|e| match e {
                promolab::Error::UnknownTheorem(_) => {
                    let ids: Vec<&str> = THEOREMS.iter().map(|t| t.0).collect();
                    Failure::Usage(format!("{e}; known ids: {}", ids.join(", ")))
                }
                other => usage(other),
            })?;
            let v = serde_json::to_value(&report).map_err(usage)?;
            if report.passed {
                Ok(v)
            } else {
                Err(Failure::Verification(v))
            }
        }
        Command::Fit { tableau, grid, max_modulus } => {
            let t = read_tableau(&tableau)?;
            let fit = fit_quasipolynomial(&t, grid.0..=grid.1, max_modulus).map_err(usage)?;
            let mut v = serde_json::to_value(&fit).map_err(usage)?;
            v["version"] = json!(REPORT_VERSION);
            Ok(v)
        }
    }
}

fn read_tableau(path: &Path) -> Result<Tableau, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_list(s: &str) -> Result<List, String> {
    numbers(s).map(List)
}

fn numbers(s: &str) -> Result<Vec<u32>, String> {
    s.split(',').map(|x| x.trim().parse::<u32>().map_err(|e| format!("'{x}': {e}"))).collect()
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got '{s}'"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("'{a}': {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("'{b}': {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn parse_ns(s: &str) -> Result<List, String> {
    if s.contains("..") {
        let (a, b) = parse_range(s)?;
        Ok(List((a..=b).collect()))
    } else {
        parse_list(s)
    }
}

fn parse_shape(s: &str) -> Result<Partition, String> {
    Partition::new(numbers(s)?).map_err(|e| e.to_string())
}

fn parse_shapes(s: &str) -> Result<Shapes, String> {
    s.split(';').map(parse_shape).collect::<Result<_, _>>().map(Shapes)
}
