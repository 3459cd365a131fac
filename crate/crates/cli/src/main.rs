//! Command-line front end: problem files in, certificates and outcomes out.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dcsep::certificate::canonical_json;
use dcsep::SearchBudget;
use rayon::prelude::*;
use serde_json::{json, Value};

mod commands;

use commands::{Reply, Status};

#[derive(Parser)]
#[command(
    name = "dcsep",
    version,
    about = "Congruence separation certificates for SL(2) over number fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the subgroups and matrices of a problem file
    Classify(Io),
    /// Separate gamma from the subgroup H
    SubgroupSep(Io),
    /// Separate gamma from the double coset H g K
    DoublecosetSep(Io),
    /// Show that gamma is not conjugate into the parabolic subgroup H
    ConjDistinguish(Io),
    /// Find a prime where delta has a prescribed multiplicative order
    OrderFind(Io),
    /// Separate lambda from the powers of omega
    PowerSep(Io),
    /// Separate x from the integer span of a basis
    AdditiveSep(Io),
    /// Look for exponents writing gamma as an element of H g K
    Probe(Io),
    /// Check a certificate against its problem file
    Verify {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Args)]
struct Io {
    /// Input JSON file, or a directory of them
    #[arg(long, short)]
    input: PathBuf,
    /// Output file (directory in batch mode); stdout when absent
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Log the prime scan to stderr
    #[arg(long)]
    trace: bool,
    /// Worker threads for directory input
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 100_000)]
    max_prime: u64,
    #[arg(long, default_value_t = 64)]
    max_exponent: u32,
    #[arg(long, default_value_t = 200)]
    max_prime_pairs: usize,
    #[arg(long, default_value_t = 4096)]
    precision_cap_bits: u32,
    #[arg(long, default_value_t = 1_000_000)]
    enumeration_cap: usize,
}

impl Io {
    fn budget(&self) -> SearchBudget {
        SearchBudget {
            max_prime: self.max_prime,
            max_exponent: self.max_exponent,
            max_prime_pairs: self.max_prime_pairs,
            precision_cap_bits: self.precision_cap_bits,
            enumeration_cap: self.enumeration_cap,
        }
    }
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn input_error(msg: String) -> Reply {
    (json!({ "outcome": "error", "error": msg }), Status::Input)
}

fn handle(name: &str, path: &Path, certificate: Option<&Path>, budget: &SearchBudget) -> Reply {
    let input = match read_json(path) {
        Ok(v) => v,
        Err(e) => return input_error(e),
    };
    match certificate {
        Some(c) => match read_json(c) {
            Ok(cert) => commands::verify(&input, &cert, budget),
            Err(e) => input_error(e),
        },
        None => commands::run(name, &input, budget),
    }
}

fn emit(reply: &Value, output: Option<&Path>) -> Result<(), String> {
    let text = canonical_json(reply) + "\n";
    match output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn batch(
    name: &str,
    io: &Io,
    certificate: Option<&Path>,
    budget: &SearchBudget,
) -> Result<Status, String> {
    let mut files: Vec<PathBuf> = fs::read_dir(&io.input)
        .map_err(|e| format!("{}: {e}", io.input.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let out_dir = io.output.as_deref();
    if let Some(d) = out_dir {
        fs::create_dir_all(d).map_err(|e| format!("{}: {e}", d.display()))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(io.jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let replies: Vec<(PathBuf, Reply)> = pool.install(|| {
        files
            .par_iter()
            .map(|f| (f.clone(), handle(name, f, certificate, budget)))
            .collect()
    });
    let mut worst = Status::Ok;
    for (file, (value, status)) in replies {
        worst = worst.max(status);
        match out_dir {
            Some(d) => emit(&value, Some(&d.join(file.file_name().unwrap())))?,
            None => emit(
                &json!({ "file": file.display().to_string(), "result": value }),
                None,
            )?,
        }
    }
    Ok(worst)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, io, certificate) = match &cli.command {
        Command::Classify(io) => ("classify", io, None),
        Command::SubgroupSep(io) => ("subgroup-sep", io, None),
        Command::DoublecosetSep(io) => ("doublecoset-sep", io, None),
        Command::ConjDistinguish(io) => ("conj-distinguish", io, None),
        Command::OrderFind(io) => ("order-find", io, None),
        Command::PowerSep(io) => ("power-sep", io, None),
        Command::AdditiveSep(io) => ("additive-sep", io, None),
        Command::Probe(io) => ("probe", io, None),
        Command::Verify { io, certificate } => ("verify", io, Some(certificate.as_path())),
    };
    if io.trace {
        env_logger::Builder::new()
            .filter_module("dcsep", log::LevelFilter::Debug)
            .init();
    }
    let budget = io.budget();
    if !budget.is_valid() {
        eprintln!("error: budget limits must be positive");
        return ExitCode::from(Status::Input as u8);
    }
    let status = if io.input.is_dir() {
        match batch(name, io, certificate, &budget) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                Status::Input
            }
        }
    } else {
        let (value, status) = handle(name, &io.input, certificate, &budget);
        if let Err(e) = emit(&value, io.output.as_deref()) {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Input as u8);
        }
        status
    };
    ExitCode::from(status as u8)
}
