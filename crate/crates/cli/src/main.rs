mod record;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fqzeta::relations::{g_poly, Method, RelationEngine, RelationSet};
use fqzeta::Limits;
use rayon::prelude::*;

use record::{
    AgreementReport, CheckRecord, GRecord, MonomialRecord, RelationRecord, RelationTable, VerifyReport, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(name = "fqzeta", version, about = "Shuffle relations between zeta values over F_q[t]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the relation set S(a,b)
    Relation {
        q: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        b: u64,
        #[arg(long, value_enum, default_value = "initial")]
        method: MethodArg,
        #[arg(long)]
        json: bool,
        /// Largest number of monic polynomials enumerated by one power sum
        #[arg(long)]
        max_enum: Option<u64>,
    },
    /// Print the polynomial g_t whose exponents give the recursion increment
    Gt {
        q: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check S(a,b) at fixed degrees and at the level of zeta values
    Verify {
        q: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        b: u64,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        depths: Vec<usize>,
        /// Compare both sides of the zeta identity through t^(-N)
        #[arg(long, value_name = "N")]
        zeta_precision: Option<u64>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        max_enum: Option<u64>,
    },
    /// Write S(a,b) for all 1 <= b <= a <= amax (and b <= bmax) as JSON
    Table {
        q: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        amax: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        bmax: Option<u64>,
        /// Degrees at which every record is checked before it is written
        #[arg(long, value_delimiter = ',', default_value = "1")]
        depths: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        max_enum: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Initial,
    Recursion,
    Closed,
    #[value(name = "closed-q2")]
    ClosedQ2,
    Symmetric,
    All,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Initial => Some(Method::Initial),
            MethodArg::Recursion => Some(Method::Recursion),
            MethodArg::Closed => Some(Method::Closed),
            MethodArg::ClosedQ2 => Some(Method::ClosedQ2),
            MethodArg::Symmetric => Some(Method::Symmetric),
            MethodArg::All => None,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

enum Failure {
    Usage(String),
    Disagree,
    Verify,
}

impl From<fqzeta::Error> for Failure {
    fn from(e: fqzeta::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn limits(max_enum: Option<u64>) -> Limits {
    match max_enum {
        Some(n) => Limits::default().with_max_enum(n),
        None => Limits::default(),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string(value).map_err(|e| Failure::Usage(e.to_string()))
}

fn describe(set: &RelationSet, method: Method) -> String {
    format!("S({},{}) over F_{} [{}]: {}", set.a(), set.b(), set.q(), method.name(), set)
}

fn cmd_relation(q: u64, a: u64, b: u64, method: MethodArg, json: bool, max_enum: Option<u64>) -> CmdResult {
    let engine = RelationEngine::new(q, &limits(max_enum))?;
    let s = engine.field().s();
    let Some(method) = method.method() else {
        let all = engine.all_relations(a, b)?;
        let agree = all.windows(2).all(|w| w[0].1 == w[1].1);
        if json {
            let records = all.iter().map(|(m, set)| RelationRecord::new(set, s, *m, Vec::new())).collect();
            println!("{}", to_json(&AgreementReport { schema_version: SCHEMA_VERSION, records, agree })?);
        } else {
            for (m, set) in &all {
                println!("{}", describe(set, *m));
            }
            println!("agree: {agree}");
        }
        return if agree { Ok(()) } else { Err(Failure::Disagree) };
    };
    if !method.applies(q, a, b) {
        return Err(Failure::Usage(format!("method {} does not apply to q = {q}", method.name())));
    }
    let set = engine.relation(method, a, b)?;
    if json {
        println!("{}", to_json(&RelationRecord::new(&set, s, method, Vec::new()))?);
    } else {
        println!("{}", describe(&set, method));
        println!("{}", fqzeta::relations::ShuffleIdentity::from_relation(&set)?);
    }
    Ok(())
}

fn cmd_gt(q: u64, a: u64, json: bool) -> CmdResult {
    let engine = RelationEngine::new(q, &Limits::default())?;
    let field = engine.field();
    let g = g_poly(a, field)?;
    if json {
        let terms = g
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, &c)| {
                let coeff = field.to_prime(c).ok_or(fqzeta::Error::CoefficientNotInPrimeField { exponent })?;
                Ok(MonomialRecord { coeff, exponent })
            })
            .collect::<Result<Vec<_>, fqzeta::Error>>()?;
        println!("{}", to_json(&GRecord { q, a, terms })?);
    } else {
        println!("{g}");
    }
    Ok(())
}

fn cmd_verify(
    q: u64,
    a: u64,
    b: u64,
    depths: &[usize],
    zeta_precision: Option<u64>,
    json: bool,
    max_enum: Option<u64>,
) -> CmdResult {
    let engine = RelationEngine::new(q, &limits(max_enum))?;
    let set = engine.solve_initial(a, b)?;
    let mut checks = Vec::new();
    for &d in depths {
        let pass = engine.verify_depth(&set, d)?;
        checks.push(CheckRecord { check: format!("depth {d}"), pass });
    }
    if let Some(n) = zeta_precision {
        let precision = i64::try_from(n).map_err(|_| Failure::Usage(format!("zeta precision {n} is too large")))?;
        let identity = engine.shuffle_identity(a, b)?;
        let pass = engine.verify_zeta(&identity, precision)?;
        checks.push(CheckRecord { check: format!("zeta N={n}"), pass });
    }
    let pass = checks.iter().all(|c| c.pass);
    if json {
        println!("{}", to_json(&VerifyReport { q, a, b, checks, pass })?);
    } else {
        println!("{}", describe(&set, Method::Initial));
        for c in &checks {
            println!("{}: {}", c.check, if c.pass { "pass" } else { "FAIL" });
        }
        println!("result: {}", if pass { "pass" } else { "FAIL" });
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_table(
    q: u64,
    amax: u64,
    bmax: Option<u64>,
    depths: &[usize],
    out: &PathBuf,
    max_enum: Option<u64>,
) -> CmdResult {
    let engine = RelationEngine::new(q, &limits(max_enum))?;
    let s = engine.field().s();
    let bmax = bmax.unwrap_or(amax);
    let pairs: Vec<(u64, u64)> = (1..=amax).flat_map(|a| (1..=a.min(bmax)).map(move |b| (a, b))).collect();
    let results: Vec<Result<(RelationRecord, bool), fqzeta::Error>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let set = engine.solve_initial(a, b)?;
            let mut pass = true;
            for &d in depths {
                pass &= engine.verify_depth(&set, d)?;
            }
            Ok((RelationRecord::new(&set, s, Method::Initial, depths.to_vec()), pass))
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut failed = Vec::new();
    for r in results {
        let (record, pass) = r?;
        if !pass {
            failed.push(format!("({},{})", record.a, record.b));
        }
        records.push(record);
    }
    if !failed.is_empty() {
        eprintln!("verification failed for {}", failed.join(", "));
        return Err(Failure::Verify);
    }
    let table = RelationTable { schema_version: SCHEMA_VERSION, records };
    let text = serde_json::to_string_pretty(&table).map_err(|e| Failure::Usage(e.to_string()))? + "\n";
    fs::write(out, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Relation { q, a, b, method, json, max_enum } => cmd_relation(q, a, b, method, json, max_enum),
        Command::Gt { q, a, json } => cmd_gt(q, a, json),
        Command::Verify { q, a, b, depths, zeta_precision, json, max_enum } => {
            cmd_verify(q, a, b, &depths, zeta_precision, json, max_enum)
        }
        Command::Table { q, amax, bmax, depths, out, max_enum } => cmd_table(q, amax, bmax, &depths, &out, max_enum),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Disagree => eprintln!("error: methods disagree"),
                Failure::Verify => {}
            }
            ExitCode::from(exit_code(&failure))
        }
    }
}

fn exit_code(failure: &Failure) -> u8 {
    match failure {
        Failure::Usage(_) => EXIT_USAGE,
        Failure::Disagree => EXIT_DISAGREE,
        Failure::Verify => EXIT_VERIFY,
    }
}
