//! Command-line front end: special values, the value table, congruence
//! suites, curve series and a few p-adic utilities.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use loghyper::batch::{admissible_tuples, compute_table, published_tuples, TableRow, Tuple};
use loghyper::congruence::{default_corpus, parse_corpus, run_suites, Statement, SuiteConfig};
use loghyper::curve::{
    check_endpoint, check_ode, check_series, default_order, epsilon_from_e, solve_e_tau, solve_g_tau, CurveEigenData,
    LambdaSeries,
};
use loghyper::hyperseries::special_value;
use loghyper::padic::{default_orbit_budget, dwork_orbit, psi_tilde};
use loghyper::par::Exec;
use loghyper::{Error, PRational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNDEFINED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "loghyper",
    version,
    about = "p-adic hypergeometric functions of logarithmic type"
)]
pub struct Cli {
    /// Cap on worker threads (1 runs everything sequentially)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Special value of F^(σ) for (i/N, j/N; k/N) at t = alpha
    SpecialValue {
        #[arg(long)]
        p: u64,
        #[arg(long = "N")]
        n: i64,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 4)]
        prec: u32,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        json: bool,
    },
    /// Table of special values at t = 1
    Table {
        /// The published rows
        #[arg(long, conflicts_with_all = ["p", "n"])]
        paper: bool,
        #[arg(long, required_unless_present = "paper", requires = "n")]
        p: Option<u64>,
        #[arg(long = "N", required_unless_present = "paper", requires = "p")]
        n: Option<i64>,
        #[arg(long, default_value_t = 4)]
        prec: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Congruence suites over a parameter corpus
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// `default`, or a file with one `a_1,..,a_s;b_1,..` per line
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long = "max-m")]
        max_m: Option<usize>,
        /// One JSON record per check
        #[arg(long)]
        json: bool,
    },
    /// λ-series of the hypergeometric-curve Frobenius structure
    Curve {
        #[arg(long = "N")]
        n: i64,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        p: u64,
        /// Truncation order M (default 3p)
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 4)]
        prec: u32,
        #[arg(long, value_enum, default_value_t = CurveCheck::All)]
        check: CurveCheck,
    },
    /// ψ̃_p(z) mod p^prec
    Psi {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 4)]
        prec: u32,
    },
    /// Dwork-prime iterates of a
    DworkPrime {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 4)]
        iters: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveCheck {
    Endpoint,
    Ode,
    All,
}

/// The `--json` record of `special-value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialValueRecord {
    pub p: u64,
    #[serde(rename = "N")]
    pub n: i64,
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub modulus: u64,
    pub value: u64,
    pub stable: bool,
    pub h_unit_ok: bool,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::NotPIntegral { .. } | Error::PrecisionTooLarge { .. } => EXIT_USAGE,
        Error::ValueUndefined { .. } | Error::NonUnitDenominator(_) => EXIT_UNDEFINED,
        _ => EXIT_FAILED,
    }
}

fn parse_rational(s: &str, p: u64) -> loghyper::Result<PRational> {
    let q: PRational = s.parse()?;
    q.require_p_integral(p)?;
    Ok(q)
}

fn configure_threads(threads: Option<usize>) -> Exec {
    match threads {
        Some(1) => Exec::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) => {
            // Only the first call can size the global pool; later calls keep it.
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
            Exec::Parallel
        }
        _ => Exec::Parallel,
    }
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let exec = configure_threads(cli.threads);
    match dispatch(cli.command, exec, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, exec: Exec, out: &mut dyn Write, err: &mut dyn Write) -> loghyper::Result<i32> {
    match command {
        Command::SpecialValue {
            p,
            n,
            i,
            j,
            k,
            prec,
            alpha,
            json,
        } => cmd_special_value(Tuple::new(p, n, i, j, k), prec, &alpha, json, out),
        Command::Table {
            paper,
            p,
            n,
            prec,
            format,
        } => {
            let tuples = if paper {
                published_tuples()
            } else {
                admissible_tuples(p.expect("clap requires p"), n.expect("clap requires N"))?
            };
            cmd_table(&tuples, prec, format, exec, out)
        }
        Command::Verify {
            suite,
            p,
            n,
            corpus,
            max_m,
            json,
        } => cmd_verify(&suite, p, n, &corpus, max_m, json, exec, out),
        Command::Curve {
            n,
            i,
            p,
            terms,
            prec,
            check,
        } => cmd_curve(n, i, p, terms, prec, check, out, err),
        Command::Psi { p, z, prec } => {
            let z = parse_rational(&z, p)?;
            writeln!(out, "{}", psi_tilde(&z, p, prec)?).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::DworkPrime { p, a, iters } => {
            let a = parse_rational(&a, p)?;
            let orbit = dwork_orbit(&a, p, default_orbit_budget(&a, p))?;
            for step in 0..iters {
                writeln!(out, "{}", orbit.iterate(step)).map_err(io)?;
            }
            writeln!(out, "preperiod {} period {}", orbit.preperiod, orbit.period).map_err(io)?;
            Ok(EXIT_OK)
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Invariant(format!("write failed: {e}"))
}

fn cmd_special_value(tuple: Tuple, prec: u32, alpha: &str, json: bool, out: &mut dyn Write) -> loghyper::Result<i32> {
    tuple.validate()?;
    let alpha = parse_rational(alpha, tuple.p)?;
    let r = special_value(&tuple.params()?, &alpha, prec)?;
    if json {
        let record = SpecialValueRecord {
            p: tuple.p,
            n: tuple.n,
            i: tuple.i,
            j: tuple.j,
            k: tuple.k,
            modulus: r.modulus,
            value: r.value,
            stable: r.stable,
            h_unit_ok: r.h_unit_evidence.iter().all(|&e| e != 0),
        };
        writeln!(out, "{}", serde_json::to_string(&record).expect("plain record")).map_err(io)?;
    } else {
        writeln!(out, "value {} mod {} (= {}^{})", r.value, r.modulus, tuple.p, prec).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_table(tuples: &[Tuple], prec: u32, format: Format, exec: Exec, out: &mut dyn Write) -> loghyper::Result<i32> {
    let rows = compute_table(tuples, prec, exec)?;
    write_table(&rows, format, out).map_err(io)?;
    Ok(EXIT_OK)
}

pub fn write_table(rows: &[TableRow], format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", TableRow::csv_header())?;
            for row in rows {
                writeln!(out, "{}", row.to_csv())?;
            }
        }
        Format::Json => {
            for row in rows {
                writeln!(out, "{}", serde_json::to_string(row).expect("plain record"))?;
            }
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: &str,
    p: u64,
    n: u32,
    corpus: &str,
    max_m: Option<usize>,
    json: bool,
    exec: Exec,
    out: &mut dyn Write,
) -> loghyper::Result<i32> {
    let statements: Vec<Statement> = if suite == "all" {
        Statement::ALL.to_vec()
    } else {
        vec![suite.parse()?]
    };
    let corpus = if corpus == "default" {
        default_corpus(p)?
    } else {
        let text = std::fs::read_to_string(PathBuf::from(corpus))
            .map_err(|e| Error::InvalidInput(format!("cannot read corpus {corpus}: {e}")))?;
        parse_corpus(&text, p)?
    };
    let reports = run_suites(&statements, &corpus, SuiteConfig { n, max_m }, exec)?;
    for r in &reports {
        if json {
            writeln!(out, "{}", serde_json::to_string(r).expect("plain record")).map_err(io)?;
        } else {
            writeln!(out, "{r}").map_err(io)?;
        }
    }
    if !json && p == 2 && statements.contains(&Statement::Log) {
        writeln!(out, "note: for p = 2 the log congruence is checked modulo 2^(n-1)").map_err(io)?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if !json {
        writeln!(out, "{} checks, {} failed", reports.len(), failed).map_err(io)?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn print_series(out: &mut dyn Write, name: &str, s: &LambdaSeries) -> std::io::Result<()> {
    writeln!(out, "{name}:")?;
    for (k, c) in s.coeffs().iter().enumerate() {
        writeln!(out, "  λ^{k}: {c}")?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_curve(
    n: i64,
    i: i64,
    p: u64,
    terms: Option<usize>,
    prec: u32,
    check: CurveCheck,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> loghyper::Result<i32> {
    let data = CurveEigenData::new(n, i, p)?;
    let order = terms.unwrap_or_else(|| default_order(p));
    let divides = (p as i64 - 1) % n == 0;
    if check == CurveCheck::Endpoint && !divides {
        return Err(Error::InvalidInput(format!(
            "the endpoint check needs N | p - 1, got N = {n}, p = {p}"
        )));
    }
    writeln!(
        out,
        "N={n} i={i} p={p} j={} sign={} a_i={} M={order}",
        data.j, data.sign, data.a_i
    )
    .map_err(io)?;

    let mut checks = Vec::new();
    if check != CurveCheck::Endpoint {
        let g = solve_g_tau(&data, order, prec)?;
        let (e1, e2) = solve_e_tau(&data, order, prec)?;
        let (eps1, eps2) = epsilon_from_e(&data, &e1, &e2, order, prec)?;
        for (name, s) in [("G", &g), ("E1", &e1), ("E2", &e2), ("eps1", &eps1), ("eps2", &eps2)] {
            print_series(out, name, s).map_err(io)?;
        }
        checks.push(check_ode(&data, order));
        if check == CurveCheck::All {
            checks.extend(check_series(&data, order, prec));
        }
    }
    if check != CurveCheck::Ode {
        if divides {
            checks.push(check_endpoint(&data, prec));
        } else {
            writeln!(out, "skip endpoint_vanishing: N does not divide p - 1").map_err(io)?;
        }
    }
    let mut failed = 0;
    for c in &checks {
        writeln!(
            out,
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        )
        .map_err(io)?;
        failed += usize::from(!c.passed);
    }
    if failed > 0 {
        let _ = writeln!(err, "{failed} curve check(s) failed");
        return Ok(EXIT_FAILED);
    }
    Ok(EXIT_OK)
}
