//! Strong irreducibility: Newton-polygon criteria that certify it, and a
//! bounded search for a reducible `f(t^k)` that refutes it.
//!
//! Every criterion needs `f` irreducible. Beyond that:
//!
//! * **eisenstein-edge**: some polygon edge at some prime `p` has coprime run
//!   and rise, `p ∤ b`, and supports the polygon; then `f` is strongly
//!   irreducible as soon as `f(t^{|b|})` is irreducible.
//! * **multi-prime**: for every prime `q` some edge (at any prime) has
//!   coprime run and rise and `q ∤ b`. Equivalently the gcd of the eligible
//!   rises is 1.
//! * **simple-end-prime**: some prime divides `c_0` or `c_d` exactly once,
//!   so an edge of height 1 exists.
//! * **non-power-constant**: `gcd(c_0, c_1) = 1` and `c_0 ≠ ±α^k` for `k > 1`
//!   (or the same for `c_d`, `c_{d−1}`). The edges `((0, e_p), (1, 0))`
//!   over `p | c_0` then satisfy the multi-prime criterion.
//!
//! Edges with nonzero slope at `p` exist only when `p | c_0·c_d`: otherwise
//! both endpoints of the polygon sit at height 0 and every point lies on or
//! above them, so the polygon is one horizontal segment. Prime scans are
//! therefore restricted to those primes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{factor_int, perfect_power, vp_nonzero};
use crate::factorpoly::{factor_substituted, is_irreducible_q, FactorError, Factorization};
use crate::newton::{check_edge_conditions, newton_polygon, NewtonEdge};
use crate::poly::IntPolynomial;

pub const DEFAULT_SEARCH_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),
    #[error("polynomial is not primitive")]
    NotPrimitive,
    #[error("search bound must be at least 1")]
    BadSearchBound,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    EisensteinEdge,
    MultiPrime,
    SimpleEndPrime,
    NonPowerConstant,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::EisensteinEdge => "eisenstein-edge",
            Criterion::MultiPrime => "multi-prime",
            Criterion::SimpleEndPrime => "simple-end-prime",
            Criterion::NonPowerConstant => "non-power-constant",
        })
    }
}

/// Which end of the coefficient list a criterion looked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum End {
    Constant,
    Leading,
}

/// An edge `((i, v_p(c_i)), (j, v_p(c_j)))` at `prime`, `b` signed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedEdge {
    #[serde(with = "decimal")]
    pub prime: BigInt,
    pub i: usize,
    pub j: usize,
    pub a: i64,
    pub b: i64,
}

impl CertifiedEdge {
    fn from_newton(prime: &BigInt, e: &NewtonEdge) -> Self {
        CertifiedEdge {
            prime: prime.clone(),
            i: e.i,
            j: e.j,
            a: e.a,
            b: e.b,
        }
    }

    pub fn height(&self) -> u64 {
        self.b.unsigned_abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum AuxiliaryCheck {
    /// `f(t^substitution)` is irreducible over ℚ.
    Irreducible { substitution: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub criterion: Criterion,
    /// The primitive polynomial the certificate speaks about.
    pub polynomial: IntPolynomial,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub end: Option<End>,
    pub edges: Vec<CertifiedEdge>,
    pub auxiliary: Vec<AuxiliaryCheck>,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("certificate is for {certified}, not {given}")]
    WrongPolynomial {
        certified: IntPolynomial,
        given: IntPolynomial,
    },
    #[error("edge {index} fails its conditions")]
    EdgeRejected { index: usize },
    #[error("{0}")]
    HypothesisFails(&'static str),
    #[error("f(t^{0}) is reducible")]
    AuxiliaryFails(usize),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

impl Certificate {
    fn new(
        criterion: Criterion,
        f: &IntPolynomial,
        end: Option<End>,
        edges: Vec<CertifiedEdge>,
    ) -> Self {
        let mut auxiliary = vec![AuxiliaryCheck::Irreducible { substitution: 1 }];
        if criterion == Criterion::EisensteinEdge {
            let h = edges[0].height() as usize;
            if h > 1 {
                auxiliary.push(AuxiliaryCheck::Irreducible { substitution: h });
            }
        }
        Certificate {
            criterion,
            polynomial: f.clone(),
            end,
            edges,
            auxiliary,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn primes(&self) -> Vec<BigInt> {
        let mut ps: Vec<BigInt> = self.edges.iter().map(|e| e.prime.clone()).collect();
        ps.sort();
        ps.dedup();
        ps
    }

    /// Re-derives every claim of the certificate from `f` alone.
    pub fn replay(&self, f: &IntPolynomial) -> Result<(), ReplayError> {
        let g = f.primitive_part();
        if g != self.polynomial {
            return Err(ReplayError::WrongPolynomial {
                certified: self.polynomial.clone(),
                given: g,
            });
        }
        if self.edges.is_empty() {
            return Err(ReplayError::HypothesisFails("certificate lists no edges"));
        }
        for (index, e) in self.edges.iter().enumerate() {
            let c = check_edge_conditions(&g, &e.prime, e.i, e.j)
                .map_err(|_| ReplayError::EdgeRejected { index })?;
            if !c.nonzero_endpoints {
                return Err(ReplayError::EdgeRejected { index });
            }
            let a = (e.j - e.i) as i64;
            let b = vp_nonzero(&g.coeff(e.j), &e.prime) - vp_nonzero(&g.coeff(e.i), &e.prime);
            let structural =
                c.not_horizontal && c.coprime_run_rise && c.supporting_line && a == e.a && b == e.b;
            let ok = match self.criterion {
                Criterion::EisensteinEdge | Criterion::SimpleEndPrime => {
                    structural && c.prime_does_not_divide_rise
                }
                Criterion::MultiPrime | Criterion::NonPowerConstant => structural,
            };
            if !ok {
                return Err(ReplayError::EdgeRejected { index });
            }
        }
        match self.criterion {
            Criterion::EisensteinEdge => {
                if self.edges.len() != 1 {
                    return Err(ReplayError::HypothesisFails("expected a single edge"));
                }
                let h = self.edges[0].height() as usize;
                if h > 1
                    && !self
                        .auxiliary
                        .contains(&AuxiliaryCheck::Irreducible { substitution: h })
                {
                    return Err(ReplayError::HypothesisFails("f(t^|b|) not recorded"));
                }
            }
            Criterion::SimpleEndPrime => {
                let e = &self.edges[0];
                let d = g.degree().unwrap_or(0);
                let once = match self.end {
                    Some(End::Constant) => e.i == 0 && vp_nonzero(&g.coeff(0), &e.prime) == 1,
                    Some(End::Leading) => e.j == d && vp_nonzero(&g.coeff(d), &e.prime) == 1,
                    None => false,
                };
                if self.edges.len() != 1 || !once || e.height() != 1 {
                    return Err(ReplayError::HypothesisFails(
                        "prime does not divide the end coefficient exactly once",
                    ));
                }
            }
            Criterion::MultiPrime => {
                if rise_gcd(&self.edges) != 1 {
                    return Err(ReplayError::HypothesisFails("rises share a common prime"));
                }
            }
            Criterion::NonPowerConstant => {
                let end = self
                    .end
                    .ok_or(ReplayError::HypothesisFails("end not recorded"))?;
                if !non_power_end_holds(&g, end) {
                    return Err(ReplayError::HypothesisFails(
                        "end coefficients are not coprime or the end is a perfect power",
                    ));
                }
                if rise_gcd(&self.edges) != 1 {
                    return Err(ReplayError::HypothesisFails("rises share a common prime"));
                }
            }
        }
        for aux in &self.auxiliary {
            let AuxiliaryCheck::Irreducible { substitution } = *aux;
            let h = g.substitute_power(substitution).expect("substitution ≥ 1");
            if !is_irreducible_q(&h)? {
                return Err(ReplayError::AuxiliaryFails(substitution));
            }
        }
        if !self
            .auxiliary
            .contains(&AuxiliaryCheck::Irreducible { substitution: 1 })
        {
            return Err(ReplayError::HypothesisFails(
                "irreducibility of f not recorded",
            ));
        }
        Ok(())
    }
}

fn rise_gcd(edges: &[CertifiedEdge]) -> u64 {
    edges.iter().fold(0u64, |g, e| g.gcd(&e.height()))
}

/// A factorization of `f(t^k)` with at least two irreducible factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub k: usize,
    pub polynomial: IntPolynomial,
    pub factors: Vec<WitnessFactor>,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFactor {
    pub factor: IntPolynomial,
    pub multiplicity: u32,
}

impl Witness {
    fn new(k: usize, polynomial: IntPolynomial, fact: Factorization) -> Self {
        Witness {
            k,
            polynomial,
            factors: fact
                .factors
                .into_iter()
                .map(|(factor, multiplicity)| WitnessFactor {
                    factor,
                    multiplicity,
                })
                .collect(),
            unit: fact.unit.to_string(),
        }
    }

    /// Product of the factors with multiplicity, times the unit.
    pub fn expand(&self) -> IntPolynomial {
        let prod = self
            .factors
            .iter()
            .fold(IntPolynomial::constant(BigInt::one()), |acc, wf| {
                &acc * &wf.factor.pow(wf.multiplicity)
            });
        let unit: num_rational::BigRational = self.unit.parse().expect("unit is a rational");
        assert!(unit.is_integer(), "primitive input has an integral unit");
        prod.scale(&unit.to_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Proven { certificate: Certificate },
    Disproven { witness: Witness },
    Unknown { search_bound: usize },
}

impl Verdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven { .. })
    }

    pub fn is_disproven(&self) -> bool {
        matches!(self, Verdict::Disproven { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Proven { certificate } => Some(certificate),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Disproven { witness } => Some(witness),
            _ => None,
        }
    }
}

fn require_primitive(f: &IntPolynomial, min_degree: usize) -> Result<(), CriteriaError> {
    match f.degree() {
        Some(d) if d >= min_degree => {}
        _ => return Err(CriteriaError::DegreeTooSmall(min_degree)),
    }
    if !f.is_primitive() {
        return Err(CriteriaError::NotPrimitive);
    }
    Ok(())
}

/// Primes dividing `c_0·c_d`, or `c_d` alone when `c_0 = 0`.
fn end_primes(f: &IntPolynomial) -> Vec<BigInt> {
    let c0 = f.trailing_constant();
    let cd = f.leading().cloned().unwrap_or_default();
    let mut ps: Vec<BigInt> = Vec::new();
    for c in [&c0, &cd] {
        if !c.is_zero() {
            ps.extend(factor_int(c).expect("nonzero").primes().cloned());
        }
    }
    ps.sort();
    ps.dedup();
    ps
}

/// All polygon edges at the end primes, paired with their prime, in order
/// of prime then position.
fn all_edges(f: &IntPolynomial) -> Vec<(BigInt, NewtonEdge)> {
    let mut out = Vec::new();
    for p in end_primes(f) {
        let np = newton_polygon(f, &p).expect("nonzero f, prime p");
        for e in np.edges_or_empty() {
            out.push((p.clone(), e));
        }
    }
    out
}

fn eisenstein_edge(
    f: &IntPolynomial,
    max_height: Option<u64>,
) -> Result<Option<Certificate>, CriteriaError> {
    let mut candidates: Vec<(BigInt, NewtonEdge)> = all_edges(f)
        .into_iter()
        .filter(|(p, e)| {
            check_edge_conditions(f, p, e.i, e.j)
                .map(|c| c.all_hold())
                .unwrap_or(false)
        })
        .filter(|(_, e)| max_height.is_none_or(|h| e.height() <= h))
        .collect();
    candidates.sort_by(|(p, e), (q, g)| (e.height(), p, e.i).cmp(&(g.height(), q, g.i)));
    let mut tried: Vec<u64> = Vec::new();
    for (p, e) in candidates {
        let h = e.height();
        if tried.contains(&h) {
            continue;
        }
        tried.push(h);
        let ok = h == 1 || is_irreducible_q(&f.substitute_power(h as usize).unwrap())?;
        if ok {
            return Ok(Some(Certificate::new(
                Criterion::EisensteinEdge,
                f,
                None,
                vec![CertifiedEdge::from_newton(&p, &e)],
            )));
        }
    }
    Ok(None)
}

/// Single-edge criterion: an edge meeting all five hypotheses whose height
/// `h` has `f(t^h)` irreducible. Edges are tried by increasing height.
pub fn prove_eisenstein_edge(f: &IntPolynomial) -> Result<Option<Certificate>, CriteriaError> {
    require_primitive(f, 1)?;
    if !is_irreducible_q(f)? {
        return Ok(None);
    }
    eisenstein_edge(f, None)
}

/// A prime dividing `c_0` or `c_d` exactly once, witnessed by the edge
/// `((0,1),(j,0))` with `j` the first index where `p ∤ c_j` (or the mirror
/// `((i,0),(d,1))` at the leading end).
pub fn prove_simple_end_prime(f: &IntPolynomial) -> Result<Option<Certificate>, CriteriaError> {
    require_primitive(f, 1)?;
    if !is_irreducible_q(f)? {
        return Ok(None);
    }
    let d = f.degree().unwrap();
    for p in end_primes(f) {
        let divides = |k: usize| {
            let c = f.coeff(k);
            c.is_zero() || (&c % &p).is_zero()
        };
        let c0 = f.coeff(0);
        if !c0.is_zero() && vp_nonzero(&c0, &p) == 1 {
            let j = (0..=d).find(|&k| !divides(k)).expect("f is primitive");
            let edge = CertifiedEdge {
                prime: p.clone(),
                i: 0,
                j,
                a: j as i64,
                b: -1,
            };
            return Ok(Some(Certificate::new(
                Criterion::SimpleEndPrime,
                f,
                Some(End::Constant),
                vec![edge],
            )));
        }
        if vp_nonzero(&f.coeff(d), &p) == 1 {
            let i = (0..=d)
                .rev()
                .find(|&k| !divides(k))
                .expect("f is primitive");
            let edge = CertifiedEdge {
                prime: p.clone(),
                i,
                j: d,
                a: (d - i) as i64,
                b: 1,
            };
            return Ok(Some(Certificate::new(
                Criterion::SimpleEndPrime,
                f,
                Some(End::Leading),
                vec![edge],
            )));
        }
    }
    Ok(None)
}

/// Collects edges with coprime run and rise, by prime then position, keeping
/// each edge that lowers the running gcd of heights; succeeds when that gcd
/// reaches 1.
pub fn prove_multi_prime(f: &IntPolynomial) -> Result<Option<Certificate>, CriteriaError> {
    require_primitive(f, 1)?;
    if !is_irreducible_q(f)? {
        return Ok(None);
    }
    let mut kept = Vec::new();
    let mut g = 0u64;
    for (p, e) in all_edges(f) {
        if e.b == 0 || !e.is_primitive() {
            continue;
        }
        let next = g.gcd(&e.height());
        if g == 0 || next < g {
            kept.push(CertifiedEdge::from_newton(&p, &e));
            g = next;
        }
        if g == 1 {
            return Ok(Some(Certificate::new(Criterion::MultiPrime, f, None, kept)));
        }
    }
    Ok(None)
}

fn non_power_end_holds(f: &IntPolynomial, end: End) -> bool {
    let d = match f.degree() {
        Some(d) if d >= 2 => d,
        _ => return false,
    };
    let (c, next) = match end {
        End::Constant => (f.coeff(0), f.coeff(1)),
        End::Leading => (f.coeff(d), f.coeff(d - 1)),
    };
    if c.is_zero() || next.is_zero() || !c.gcd(&next).is_one() {
        return false;
    }
    let c = c.abs();
    c > BigInt::one() && perfect_power(&c).expect("c > 1").is_none()
}

/// `gcd(c_0, c_1) = 1` with `c_0` not `±` a perfect power, or the same at the
/// leading end. The certificate lists the edge `((0,e_p),(1,0))` for every
/// prime `p^{e_p} ∥ c_0` (mirrored at the leading end).
pub fn prove_non_power_constant(f: &IntPolynomial) -> Result<Option<Certificate>, CriteriaError> {
    require_primitive(f, 2)?;
    let end = [End::Constant, End::Leading]
        .into_iter()
        .find(|&end| non_power_end_holds(f, end));
    let Some(end) = end else { return Ok(None) };
    if !is_irreducible_q(f)? {
        return Ok(None);
    }
    let d = f.degree().unwrap();
    let c = match end {
        End::Constant => f.coeff(0),
        End::Leading => f.coeff(d),
    };
    let edges = factor_int(&c)
        .expect("nonzero")
        .factors
        .into_iter()
        .map(|(p, e)| match end {
            End::Constant => CertifiedEdge {
                prime: p,
                i: 0,
                j: 1,
                a: 1,
                b: -(e as i64),
            },
            End::Leading => CertifiedEdge {
                prime: p,
                i: d - 1,
                j: d,
                a: 1,
                b: e as i64,
            },
        })
        .collect();
    Ok(Some(Certificate::new(
        Criterion::NonPowerConstant,
        f,
        Some(end),
        edges,
    )))
}

/// The full decision: normalize to the primitive part, refute at `k = 1` if
/// `f` is reducible, try the criteria, then look for a reducible `f(t^k)`
/// for `2 ≤ k ≤ search_bound`.
///
/// Criteria run in the order non-power-constant, simple-end-prime,
/// eisenstein-edge restricted to height 1, multi-prime, then eisenstein-edge
/// at any height, so the auxiliary factorization of `f(t^{|b|})` is the last
/// resort.
pub fn decide_strong_irreducibility(
    f: &IntPolynomial,
    search_bound: usize,
) -> Result<Verdict, CriteriaError> {
    if search_bound < 1 {
        return Err(CriteriaError::BadSearchBound);
    }
    if f.degree().is_none_or(|d| d < 1) {
        return Err(CriteriaError::DegreeTooSmall(1));
    }
    let g = f.primitive_part();
    let fact = factor_substituted(&g, 1)?;
    if !fact.is_irreducible() {
        return Ok(Verdict::Disproven {
            witness: Witness::new(1, g, fact),
        });
    }
    if g.degree() >= Some(2) {
        if let Some(c) = prove_non_power_constant(&g)? {
            return Ok(Verdict::Proven { certificate: c });
        }
    }
    if let Some(c) = prove_simple_end_prime(&g)? {
        return Ok(Verdict::Proven { certificate: c });
    }
    if let Some(c) = eisenstein_edge(&g, Some(1))? {
        return Ok(Verdict::Proven { certificate: c });
    }
    if let Some(c) = prove_multi_prime(&g)? {
        return Ok(Verdict::Proven { certificate: c });
    }
    if let Some(c) = eisenstein_edge(&g, None)? {
        return Ok(Verdict::Proven { certificate: c });
    }
    // f(t^k) reducible makes every f(t^{jk}) reducible, so the first hit ends
    // the search.
    for k in 2..=search_bound {
        let fk = g.substitute_power(k).unwrap();
        if !is_irreducible_q(&fk)? {
            let fact = factor_substituted(&g, k)?;
            return Ok(Verdict::Disproven {
                witness: Witness::new(k, fk, fact),
            });
        }
    }
    Ok(Verdict::Unknown { search_bound })
}

/// Outcome of screening one member of the family `p t² − (2p+k) t + p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum FamilyOutcome {
    NotApplicable {
        reason: String,
    },
    Decided {
        polynomial: IntPolynomial,
        verdict: Verdict,
    },
}

/// Screens `p t² − (2p+k) t + p`. The hypotheses are `k ≢ 0 (mod p)` and
/// `k ≠ −2p ± (1+p²)`; the latter excludes exactly the members with a root
/// `±p` or `±1/p`.
pub fn screen_prime_family(p: &BigInt, k: &BigInt) -> Result<FamilyOutcome, CriteriaError> {
    if !crate::exactmath::is_prime(p) {
        return Err(CriteriaError::NotPrime(p.clone()));
    }
    if k.mod_floor(p).is_zero() {
        return Ok(FamilyOutcome::NotApplicable {
            reason: format!("{k} is divisible by {p}"),
        });
    }
    let two_p = p * 2;
    let sq = p * p + 1;
    if *k == -&two_p + &sq || *k == -&two_p - &sq {
        return Ok(FamilyOutcome::NotApplicable {
            reason: format!("{k} = -2p ± (1 + p²)"),
        });
    }
    let lambda = prime_family_member(p, k);
    let verdict = decide_strong_irreducibility(&lambda, DEFAULT_SEARCH_BOUND)?;
    Ok(FamilyOutcome::Decided {
        polynomial: lambda,
        verdict,
    })
}

/// `p t² − (2p+k) t + p`.
pub fn prime_family_member(p: &BigInt, k: &BigInt) -> IntPolynomial {
    let mid: BigInt = p * 2 + k;
    IntPolynomial::new(vec![p.clone(), -mid, p.clone()])
}

/// The twist-knot polynomial `n t² − (2n+1) t + n`.
pub fn twist_polynomial(n: &BigInt) -> IntPolynomial {
    let mid: BigInt = n * 2 + 1;
    IntPolynomial::new(vec![n.clone(), -mid, n.clone()])
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
