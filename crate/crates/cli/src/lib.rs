//! Command-line front end for `strongirr`: one-shot queries, batch CSV scans,
//! and text or JSON reports.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_integer::Integer;
use serde::Serialize;
use serde_json::json;
use strongirr::criteria::{CriteriaError, DEFAULT_SEARCH_BOUND};
use strongirr::factorpoly::FactorError;
use strongirr::newton::{check_edge_conditions, EdgeConditions, NewtonError};
use strongirr::twistknot::{oracle_coprime_bounded, TwistError};
use strongirr::{
    alexander_twist, certify_twist_coprime, decide_strong_irreducibility, factor_mod_p,
    factor_over_q, newton_polygon, BigInt, IntPolynomial, Verdict,
};

pub mod scan;

pub const DEFAULT_ORACLE_BOUND: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "strongirr",
    version,
    about = "Certified strong irreducibility of integer polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Newton polygon of a polynomial at a prime
    Newton {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        #[arg(long, short)]
        prime: String,
        /// Also write the polygon as SVG
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether f(t^k) is irreducible for every k ≥ 1
    StrongIrreducible {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        /// Largest k searched for a reducible f(t^k) when no criterion applies
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Certify that the twist-knot polynomials for n and m share no root of unity power
    TwistCoprime {
        n: u64,
        m: u64,
        /// Check resultants of f(t^k), g(t^l) for k, l up to this bound (0 skips)
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        oracle_bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run strong-irreducible over a polynomial column of a CSV file
    Scan {
        csv: PathBuf,
        #[arg(long, default_value = "polynomial")]
        column: String,
        #[arg(long, default_value = "name")]
        name_column: String,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: usize,
        /// Worker threads; 0 uses all cores
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Factor over the rationals, or over F_p with --prime
    Factor {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
        #[arg(long, short)]
        prime: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Print the twist-knot polynomial n t² − (2n+1) t + n
    Twist {
        n: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Arguments parse but are out of range.
    Usage(String),
    /// A polynomial, number, or input file could not be read.
    Input(String),
    /// A result failed its own replay.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

/// Text written to stdout and the exit code to finish with.
#[derive(Debug)]
pub struct Report {
    pub stdout: String,
    pub exit_code: u8,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report {
            stdout,
            exit_code: 0,
        }
    }
}

pub fn parse_polynomial(s: &str) -> Result<IntPolynomial, CliError> {
    s.parse()
        .map_err(|e| CliError::Input(format!("cannot parse polynomial {s:?}: {e}")))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: Cli) -> Result<Report, CliError> {
    match cli.command {
        Command::Newton {
            polynomial,
            prime,
            svg,
            common,
        } => cmd_newton(&polynomial, &prime, svg.as_deref(), common.json).map(Report::ok),
        Command::StrongIrreducible {
            polynomial,
            search_bound,
            common,
        } => cmd_strong_irreducible(&polynomial, search_bound, common.json).map(Report::ok),
        Command::TwistCoprime {
            n,
            m,
            oracle_bound,
            common,
        } => cmd_twist_coprime(n, m, oracle_bound, common.json).map(Report::ok),
        Command::Scan {
            csv,
            column,
            name_column,
            search_bound,
            jobs,
            common,
        } => scan::cmd_scan(&csv, &column, &name_column, search_bound, jobs, common.json),
        Command::Factor {
            polynomial,
            prime,
            common,
        } => cmd_factor(&polynomial, prime, common.json).map(Report::ok),
        Command::Twist { n, common } => cmd_twist(n, common.json).map(Report::ok),
    }
}

#[derive(Serialize)]
struct EdgeReport {
    i: usize,
    vi: i64,
    j: usize,
    vj: i64,
    a: i64,
    b: i64,
    abs_b: u64,
    gcd: i64,
    prime_does_not_divide_b: bool,
    conditions: EdgeConditions,
}

pub fn cmd_newton(
    poly: &str,
    prime: &str,
    svg: Option<&std::path::Path>,
    json: bool,
) -> Result<String, CliError> {
    let f = parse_polynomial(poly)?;
    let p: BigInt = prime
        .parse()
        .map_err(|_| CliError::Input(format!("cannot parse prime {prime:?}")))?;
    let np = newton_polygon(&f, &p).map_err(|e| match e {
        NewtonError::NotPrime(_) => CliError::Usage(e.to_string()),
        _ => CliError::Input(e.to_string()),
    })?;
    let mut edges = Vec::new();
    for e in np.edges_or_empty() {
        let conditions = check_edge_conditions(&f, &p, e.i, e.j)
            .map_err(|err| CliError::Invariant(err.to_string()))?;
        edges.push(EdgeReport {
            i: e.i,
            vi: e.vi,
            j: e.j,
            vj: e.vj,
            a: e.a,
            b: e.b,
            abs_b: e.height(),
            gcd: e.a.gcd(&e.b),
            prime_does_not_divide_b: BigInt::from(e.b) % &p != BigInt::from(0),
            conditions,
        });
    }
    if let Some(path) = svg {
        std::fs::write(path, np.to_svg())
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    if json {
        return Ok(to_json(&json!({
            "polynomial": f,
            "prime": p.to_string(),
            "points": np.points,
            "vertices": np.vertices,
            "edges": edges,
        })));
    }
    let mut out = String::new();
    writeln!(out, "f = {f}").unwrap();
    writeln!(out, "p = {p}").unwrap();
    let vs: Vec<String> = np.vertices.iter().map(|v| v.to_string()).collect();
    writeln!(out, "vertices: {}", vs.join(" ")).unwrap();
    if edges.is_empty() {
        writeln!(out, "edges: none").unwrap();
    } else {
        writeln!(out, "edges:").unwrap();
        for e in &edges {
            writeln!(
                out,
                "  ({},{})-({},{})  a={} b={} |b|={} gcd={} p∤b={} all-conditions={}",
                e.i,
                e.vi,
                e.j,
                e.vj,
                e.a,
                e.b,
                e.abs_b,
                e.gcd,
                e.prime_does_not_divide_b,
                e.conditions.all_hold()
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn criteria_error(e: CriteriaError) -> CliError {
    match e {
        CriteriaError::BadSearchBound => CliError::Usage(e.to_string()),
        CriteriaError::DegreeTooSmall(_) => CliError::Input(e.to_string()),
        _ => CliError::Invariant(e.to_string()),
    }
}

/// Decides `f` and replays the result.
pub fn decide_checked(f: &IntPolynomial, search_bound: usize) -> Result<Verdict, CliError> {
    let verdict = decide_strong_irreducibility(f, search_bound).map_err(criteria_error)?;
    check_verdict(f, &verdict)?;
    Ok(verdict)
}

/// Replays a certificate, or checks that a witness multiplies back to
/// `f(t^k)`.
pub fn check_verdict(f: &IntPolynomial, verdict: &Verdict) -> Result<(), CliError> {
    match verdict {
        Verdict::Proven { certificate } => certificate
            .replay(f)
            .map_err(|e| CliError::Invariant(format!("certificate for {f} does not replay: {e}"))),
        Verdict::Disproven { witness } => {
            let fk = f
                .primitive_part()
                .substitute_power(witness.k)
                .map_err(|e| CliError::Invariant(e.to_string()))?;
            let count: u32 = witness.factors.iter().map(|w| w.multiplicity).sum();
            if witness.polynomial != fk || witness.expand() != fk || count < 2 {
                return Err(CliError::Invariant(format!(
                    "witness for {f} at k = {} does not multiply out",
                    witness.k
                )));
            }
            Ok(())
        }
        Verdict::Unknown { .. } => Ok(()),
    }
}

/// One-line summary of a verdict.
pub fn verdict_line(verdict: &Verdict) -> String {
    match verdict {
        Verdict::Proven { certificate } => {
            let edges: Vec<String> = certificate
                .edges
                .iter()
                .map(|e| format!("p={} i={} j={} a={} b={}", e.prime, e.i, e.j, e.a, e.b))
                .collect();
            let mut s = format!("proven by {}", certificate.criterion);
            if !edges.is_empty() {
                write!(s, ": {}", edges.join(", ")).unwrap();
            }
            for aux in &certificate.auxiliary {
                let strongirr::criteria::AuxiliaryCheck::Irreducible { substitution } = aux;
                if *substitution > 1 {
                    write!(s, "; f(t^{substitution}) irreducible").unwrap();
                }
            }
            s
        }
        Verdict::Disproven { witness } => {
            let factors: Vec<String> = witness
                .factors
                .iter()
                .map(|w| {
                    if w.multiplicity == 1 {
                        format!("({})", w.factor)
                    } else {
                        format!("({})^{}", w.factor, w.multiplicity)
                    }
                })
                .collect();
            let unit = if witness.unit == "1" {
                String::new()
            } else {
                format!("{} · ", witness.unit)
            };
            format!(
                "disproven at k={}: {unit}{}",
                witness.k,
                factors.join(" · ")
            )
        }
        Verdict::Unknown { search_bound } => {
            format!(
                "unknown: no criterion applies and f(t^k) is irreducible for k ≤ {search_bound}"
            )
        }
    }
}

pub fn cmd_strong_irreducible(
    poly: &str,
    search_bound: usize,
    json: bool,
) -> Result<String, CliError> {
    let f = parse_polynomial(poly)?;
    let verdict = decide_checked(&f, search_bound)?;
    if json {
        return Ok(to_json(&json!({
            "polynomial": f,
            "search_bound": search_bound,
            "result": verdict,
        })));
    }
    Ok(format!("f = {f}\n{}\n", verdict_line(&verdict)))
}

pub fn cmd_twist_coprime(
    n: u64,
    m: u64,
    oracle_bound: usize,
    json: bool,
) -> Result<String, CliError> {
    let trace = certify_twist_coprime(n, m).map_err(|e| match e {
        TwistError::ZeroParameter | TwistError::EqualParameters => CliError::Usage(e.to_string()),
        _ => CliError::Invariant(e.to_string()),
    })?;
    trace
        .replay()
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    let oracle = if oracle_bound == 0 {
        None
    } else {
        let f = alexander_twist(n).unwrap();
        let g = alexander_twist(m).unwrap();
        let o = oracle_coprime_bounded(&f, &g, oracle_bound)
            .map_err(|e| CliError::Invariant(e.to_string()))?;
        if !o.coprime {
            return Err(CliError::Invariant(format!(
                "certifier and oracle disagree on ({n}, {m}): {:?}",
                o.witness
            )));
        }
        Some(o)
    };
    if json {
        return Ok(to_json(&json!({
            "trace": trace,
            "replayed": true,
            "oracle": oracle,
        })));
    }
    let mut out = String::new();
    writeln!(out, "n = {n}, m = {m}").unwrap();
    writeln!(out, "branch: {}", trace.branch).unwrap();
    let w = &trace.witnesses;
    let mut parts = Vec::new();
    for (name, v) in [
        ("a", &w.a),
        ("b", &w.b),
        ("D", &w.d),
        ("prime", &w.prime),
        ("alpha", &w.alpha),
    ] {
        if let Some(v) = v {
            parts.push(format!("{name}={v}"));
        }
    }
    for (name, v) in [("k", w.k), ("l", w.l)] {
        if let Some(v) = v {
            parts.push(format!("{name}={v}"));
        }
    }
    if !parts.is_empty() {
        writeln!(out, "witnesses: {}", parts.join(" ")).unwrap();
    }
    if let (Some(l), Some(r)) = (&w.lhs_interval, &w.rhs_interval) {
        writeln!(out, "lhs in [{}, {}]", l.lo, l.hi).unwrap();
        writeln!(out, "rhs in [{}, {}]", r.lo, r.hi).unwrap();
    }
    writeln!(out, "replay: ok").unwrap();
    match oracle {
        Some(o) => writeln!(out, "oracle: coprime for k, l ≤ {}", o.bound).unwrap(),
        None => writeln!(out, "oracle: skipped").unwrap(),
    }
    Ok(out)
}

fn factor_error(e: FactorError) -> CliError {
    match e {
        FactorError::NotPrime(_) => CliError::Usage(e.to_string()),
        _ => CliError::Input(e.to_string()),
    }
}

pub fn cmd_factor(poly: &str, prime: Option<u64>, json: bool) -> Result<String, CliError> {
    let f = parse_polynomial(poly)?;
    let (unit, factors): (String, Vec<(IntPolynomial, u32)>) = match prime {
        None => {
            let fact = factor_over_q(&f).map_err(factor_error)?;
            if fact.expand() != f.to_rational() {
                return Err(CliError::Invariant(format!(
                    "factorization of {f} does not expand"
                )));
            }
            (fact.unit.to_string(), fact.factors)
        }
        Some(p) => {
            let fact = factor_mod_p(&f, p).map_err(factor_error)?;
            let factors = fact.factors.iter().map(|(g, m)| (g.to_int(), *m)).collect();
            (fact.unit.to_string(), factors)
        }
    };
    if json {
        let fs: Vec<_> = factors
            .iter()
            .map(|(g, m)| json!({"factor": g, "multiplicity": m}))
            .collect();
        return Ok(to_json(&json!({
            "polynomial": f,
            "prime": prime,
            "unit": unit,
            "factors": fs,
        })));
    }
    let mut out = format!("f = {f}\n");
    match prime {
        None => writeln!(out, "over Q: unit {unit}").unwrap(),
        Some(p) => writeln!(out, "over F_{p}: unit {unit}").unwrap(),
    }
    for (g, m) in &factors {
        writeln!(out, "  ({g})^{m}").unwrap();
    }
    Ok(out)
}

pub fn cmd_twist(n: u64, json: bool) -> Result<String, CliError> {
    let f = alexander_twist(n).map_err(|e| CliError::Usage(e.to_string()))?;
    if json {
        return Ok(to_json(&json!({"n": n, "polynomial": f})));
    }
    Ok(format!("{f}\n"))
}
