//! Twist-knot Alexander polynomials `Δ_n(t) = n t² − (2n+1) t + n` and a
//! certifying decision of their strong coprimality.
//!
//! The roots of `Δ_n` are `r_n^{±1}` with `r_n = (2n+1+√(4n+1))/(2n) > 1`.
//! `Δ_n(t^k)` and `Δ_m(t^l)` share a root only if `r_n^k = r_m^l` for some
//! coprime `k, l ≥ 1`, and [`certify_twist_coprime`] records which argument
//! rules that out:
//!
//! * `(4n+1)(4m+1)` is not a square, so `√(4n+1)` and `√(4m+1)` are
//!   linearly independent over ℚ;
//! * otherwise `4n+1 = a²D`, `4m+1 = b²D`. For `D = 1` the roots are the
//!   rationals `(y+1)/y` and `(z+1)/z` with `y = (a−1)/2`, `z = (b−1)/2`;
//!   for `D > 1`, prime ideal valuations in `Z[(1+√D)/2]` force `n` and `m`
//!   to have equal prime support and to be powers `α^l`, `α^k` of a common
//!   base;
//! * a surviving pair `α^l`, `α^k` is refuted by comparing the two sides of
//!   `r_n^k = r_m^l` numerically, with rational interval bounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{
    factor_int, is_perfect_square, is_prime, multiplicative_dependence, squarefree_decompose,
    vp_nonzero,
};
use crate::poly::{poly_gcd, resultant, IntPolynomial};
use crate::quadfield::{
    element_ideal_valuation, ideal_contains, ideal_from_generators, ideal_mul, ideal_norm,
    split_prime, QuadError, QuadInt,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("twist parameter must be at least 1")]
    ZeroParameter,
    #[error("n and m must differ")]
    EqualParameters,
    #[error("oracle bound must be at least 1")]
    BadBound,
    #[error("the zero polynomial has no roots to compare")]
    ZeroPolynomial,
    #[error("(4n+1)(4m+1) is not a square")]
    NonSquareProduct,
    #[error("squarefree part is 1; no quadratic ring")]
    RationalBranch,
    #[error("interval bounds failed to separate after {0} bits")]
    NoSeparation(u64),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// `n t² − (2n+1) t + n`.
pub fn alexander_twist(n: u64) -> Result<IntPolynomial, TwistError> {
    if n == 0 {
        return Err(TwistError::ZeroParameter);
    }
    let n = BigInt::from(n);
    let mid: BigInt = &n * 2 + 1;
    Ok(IntPolynomial::new(vec![n.clone(), -mid, n]))
}

/// `Δ_n` is reducible exactly when `4n+1` is a square, i.e. `n = y(y+1)`.
pub fn twist_reducibility_class(n: u64) -> Result<(bool, Option<u64>), TwistError> {
    if n == 0 {
        return Err(TwistError::ZeroParameter);
    }
    let disc = BigInt::from(n) * 4 + 1;
    Ok(match is_perfect_square(&disc) {
        Some(s) => {
            let y: BigInt = (s - 1) / 2;
            (true, Some(u64::try_from(y).expect("y < n")))
        }
        None => (false, None),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    NonSquareProduct,
    DistinctPrimeSupport,
    MultiplicityMismatch,
    InequalityContradiction,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A closed rational interval `[lo, hi]`, serialized as two decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn disjoint(&self, o: &Interval) -> bool {
        self.hi < o.lo || o.hi < self.lo
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.to_string(), self.hi.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let parse = |s: String| s.parse::<BigRational>().map_err(serde::de::Error::custom);
        Ok(Interval {
            lo: parse(lo)?,
            hi: parse(hi)?,
        })
    }
}

mod opt_decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Every field is present in JSON, `null` when the branch does not use it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    #[serde(with = "opt_decimal")]
    pub a: Option<BigInt>,
    #[serde(with = "opt_decimal")]
    pub b: Option<BigInt>,
    #[serde(rename = "D", with = "opt_decimal")]
    pub d: Option<BigInt>,
    #[serde(with = "opt_decimal")]
    pub prime: Option<BigInt>,
    #[serde(with = "opt_decimal")]
    pub alpha: Option<BigInt>,
    pub k: Option<u32>,
    pub l: Option<u32>,
    pub lhs_interval: Option<Interval>,
    pub rhs_interval: Option<Interval>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistCoprimalityTrace {
    pub n: u64,
    pub m: u64,
    pub branch: Branch,
    pub witnesses: Witnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace for ({n}, {m}) does not replay: {reason}")]
pub struct TraceReplayError {
    pub n: u64,
    pub m: u64,
    pub reason: &'static str,
}

/// `A + B√N` with rational `A`, `B`.
#[derive(Debug, Clone)]
struct Surd {
    a: BigRational,
    b: BigRational,
    n: BigInt,
}

impl Surd {
    fn mul(&self, o: &Surd) -> Surd {
        let n = BigRational::from_integer(self.n.clone());
        Surd {
            a: &self.a * &o.a + &self.b * &o.b * n,
            b: &self.a * &o.b + &self.b * &o.a,
            n: self.n.clone(),
        }
    }

    fn pow(&self, k: u32) -> Surd {
        let mut acc = Surd {
            a: BigRational::one(),
            b: BigRational::zero(),
            n: self.n.clone(),
        };
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// `x ≤ A + B√N`, assuming `B ≥ 0`.
    fn at_least(&self, x: &BigRational) -> bool {
        let gap = x - &self.a;
        !gap.is_positive()
            || &self.b * &self.b * BigRational::from_integer(self.n.clone()) >= &gap * &gap
    }

    /// `A + B√N ≤ x`, assuming `B ≥ 0`.
    fn at_most(&self, x: &BigRational) -> bool {
        let gap = x - &self.a;
        !gap.is_negative()
            && &self.b * &self.b * BigRational::from_integer(self.n.clone()) <= &gap * &gap
    }
}

/// `r_j = (2j+1)/(2j) + √(4j+1)/(2j)`.
fn root_surd(j: &BigInt) -> Surd {
    let den: BigInt = j * 2;
    Surd {
        a: BigRational::new(&den + 1, den.clone()),
        b: BigRational::new(BigInt::one(), den),
        n: j * 4 + 1,
    }
}

fn rational_pow(x: &BigRational, k: u32) -> BigRational {
    Pow::pow(x, k)
}

/// Brackets `r_j^e` using `√(4j+1)` to `bits` binary places.
fn root_power_interval(j: &BigInt, e: u32, bits: u64) -> Interval {
    let n: BigInt = j * 4 + 1;
    let q = (&n << (2 * bits)).sqrt();
    let scale = BigInt::one() << bits;
    let den: BigInt = j * 2;
    let lo = BigRational::new(&q + &scale * (&den + 1), &scale * &den);
    let hi = BigRational::new(&q + 1 + &scale * (&den + 1), &scale * &den);
    Interval {
        lo: rational_pow(&lo, e),
        hi: rational_pow(&hi, e),
    }
}

const MAX_BITS: u64 = 1 << 14;

/// Disjoint brackets for `r_n^k` and `r_m^l`.
fn separate(n: &BigInt, k: u32, m: &BigInt, l: u32) -> Result<(Interval, Interval), TwistError> {
    let mut bits = 16;
    while bits <= MAX_BITS {
        let lhs = root_power_interval(n, k, bits);
        let rhs = root_power_interval(m, l, bits);
        if lhs.disjoint(&rhs) {
            return Ok((lhs, rhs));
        }
        bits *= 2;
    }
    Err(TwistError::NoSeparation(MAX_BITS))
}

fn prime_support(x: &BigInt) -> Vec<BigInt> {
    factor_int(x).expect("nonzero").primes().cloned().collect()
}

fn first_differing_prime(n: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (pn, pm) = (prime_support(n), prime_support(m));
    pn.iter()
        .filter(|p| !pm.contains(p))
        .chain(pm.iter().filter(|p| !pn.contains(p)))
        .min()
        .cloned()
}

/// The shared-root analysis for `Δ_n`, `Δ_m`.
pub fn certify_twist_coprime(n: u64, m: u64) -> Result<TwistCoprimalityTrace, TwistError> {
    if n == 0 || m == 0 {
        return Err(TwistError::ZeroParameter);
    }
    if n == m {
        return Err(TwistError::EqualParameters);
    }
    let (nb, mb) = (BigInt::from(n), BigInt::from(m));
    let (dn, dm): (BigInt, BigInt) = (&nb * 4 + 1, &mb * 4 + 1);
    let trace = |branch, witnesses| TwistCoprimalityTrace {
        n,
        m,
        branch,
        witnesses,
    };
    if is_perfect_square(&(&dn * &dm)).is_none() {
        return Ok(trace(Branch::NonSquareProduct, Witnesses::default()));
    }
    let (a, d) = squarefree_decompose(&dn).expect("positive");
    let (b, d_m) = squarefree_decompose(&dm).expect("positive");
    debug_assert_eq!(d, d_m);
    let mut w = Witnesses {
        a: Some(a.clone()),
        b: Some(b.clone()),
        d: Some(d.clone()),
        ..Witnesses::default()
    };

    // both sides of r_n^k = r_m^l in the rational case are ((y+1)/y)^k
    // and ((z+1)/z)^l; otherwise the surds r_n^k, r_m^l
    let (base_n, base_m) = if d.is_one() {
        ((&a - 1) / 2, (&b - 1) / 2)
    } else {
        if let Some(p) = first_differing_prime(&nb, &mb) {
            w.prime = Some(p);
            return Ok(trace(Branch::DistinctPrimeSupport, w));
        }
        (nb.clone(), mb.clone())
    };

    let dependence = if base_n.is_one() || base_m.is_one() {
        None
    } else if d.is_one() {
        multiplicative_dependence(&base_n, &base_m).expect("both > 1")
    } else {
        // x·k = y·l at every prime, with k = y/g and l = x/g from the first
        let fn_ = factor_int(&nb).expect("nonzero");
        let fm = factor_int(&mb).expect("nonzero");
        let (x0, y0) = (fn_.factors[0].1, fm.factors[0].1);
        let g = x0.gcd(&y0);
        let (k, l) = (y0 / g, x0 / g);
        let bad = fn_
            .factors
            .iter()
            .zip(&fm.factors)
            .find(|((_, x), (_, y))| x * k != y * l);
        match bad {
            Some(((p, _), _)) => {
                w.prime = Some(p.clone());
                None
            }
            None => {
                let alpha = fn_
                    .factors
                    .iter()
                    .fold(BigInt::one(), |acc, (p, x)| acc * Pow::pow(p, x / l));
                Some((alpha, k, l))
            }
        }
    };
    let Some((alpha, k, l)) = dependence else {
        return Ok(trace(Branch::MultiplicityMismatch, w));
    };
    w.alpha = Some(alpha);
    w.k = Some(k);
    w.l = Some(l);
    let (lhs, rhs) = if d.is_one() {
        let y = BigRational::from_integer(base_n.clone());
        let z = BigRational::from_integer(base_m.clone());
        let one = BigRational::one();
        (
            Interval::point(rational_pow(&((&y + &one) / &y), k)),
            Interval::point(rational_pow(&((&z + &one) / &z), l)),
        )
    } else {
        separate(&nb, k, &mb, l)?
    };
    w.lhs_interval = Some(lhs);
    w.rhs_interval = Some(rhs);
    Ok(trace(Branch::InequalityContradiction, w))
}

impl TwistCoprimalityTrace {
    /// Recomputes every witness from `(n, m)`.
    pub fn replay(&self) -> Result<(), TraceReplayError> {
        let fail = |reason| TraceReplayError {
            n: self.n,
            m: self.m,
            reason,
        };
        if self.n == 0 || self.m == 0 || self.n == self.m {
            return Err(fail("parameters must be distinct and positive"));
        }
        let (nb, mb) = (BigInt::from(self.n), BigInt::from(self.m));
        let (dn, dm): (BigInt, BigInt) = (&nb * 4 + 1, &mb * 4 + 1);
        let prod = &dn * &dm;
        let root = prod.sqrt();
        let square = &root * &root == prod;
        let w = &self.witnesses;
        if self.branch == Branch::NonSquareProduct {
            return if square {
                Err(fail("product is a square"))
            } else {
                Ok(())
            };
        }
        if !square {
            return Err(fail("product is not a square"));
        }
        let (Some(a), Some(b), Some(d)) = (&w.a, &w.b, &w.d) else {
            return Err(fail("a, b, D missing"));
        };
        if a * a * d != dn || b * b * d != dm {
            return Err(fail("4n+1 ≠ a²D or 4m+1 ≠ b²D"));
        }
        if !d.is_positive() || factor_int(d).unwrap().factors.iter().any(|(_, e)| *e > 1) {
            return Err(fail("D is not squarefree"));
        }
        let (base_n, base_m) = if d.is_one() {
            ((a - 1) / 2, (b - 1) / 2)
        } else {
            (nb.clone(), mb.clone())
        };
        match self.branch {
            Branch::NonSquareProduct => unreachable!(),
            Branch::DistinctPrimeSupport => {
                let Some(p) = &w.prime else {
                    return Err(fail("prime missing"));
                };
                if d.is_one() || !is_prime(p) || nb.is_multiple_of(p) == mb.is_multiple_of(p) {
                    return Err(fail("prime does not separate the supports"));
                }
                Ok(())
            }
            Branch::MultiplicityMismatch => {
                let dependent = !base_n.is_one()
                    && !base_m.is_one()
                    && multiplicative_dependence(&base_n, &base_m)
                        .unwrap()
                        .is_some();
                if dependent {
                    return Err(fail("a common base exists"));
                }
                Ok(())
            }
            Branch::InequalityContradiction => {
                let (Some(alpha), Some(k), Some(l), Some(lhs), Some(rhs)) =
                    (&w.alpha, w.k, w.l, &w.lhs_interval, &w.rhs_interval)
                else {
                    return Err(fail("inequality witnesses missing"));
                };
                if *alpha <= BigInt::one()
                    || k.gcd(&l) != 1
                    || Pow::pow(alpha, l) != base_n
                    || Pow::pow(alpha, k) != base_m
                {
                    return Err(fail("bases are not α^l and α^k"));
                }
                if !lhs.disjoint(rhs) {
                    return Err(fail("intervals overlap"));
                }
                let contains = |iv: &Interval, base: &BigInt, e: u32| {
                    if d.is_one() {
                        let x = BigRational::from_integer(base.clone());
                        let v = rational_pow(&((&x + BigRational::one()) / &x), e);
                        iv.lo <= v && v <= iv.hi
                    } else {
                        let s = root_surd(base).pow(e);
                        s.at_least(&iv.lo) && s.at_most(&iv.hi)
                    }
                };
                if !contains(lhs, &base_n, k) || !contains(rhs, &base_m, l) {
                    return Err(fail("an interval misses its value"));
                }
                Ok(())
            }
        }
    }
}

/// Offending pair and common factor from [`oracle_coprime_bounded`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleWitness {
    pub k: usize,
    pub l: usize,
    pub common_factor: IntPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOutcome {
    pub coprime: bool,
    pub bound: usize,
    pub witness: Option<OracleWitness>,
}

/// Checks `resultant(f(t^k), g(t^l)) ≠ 0` for all `1 ≤ k, l ≤ bound`.
pub fn oracle_coprime_bounded(
    f: &IntPolynomial,
    g: &IntPolynomial,
    bound: usize,
) -> Result<OracleOutcome, TwistError> {
    if f.is_zero() || g.is_zero() {
        return Err(TwistError::ZeroPolynomial);
    }
    if bound < 1 {
        return Err(TwistError::BadBound);
    }
    for k in 1..=bound {
        let fk = f.substitute_power(k).unwrap();
        for l in 1..=bound {
            let gl = g.substitute_power(l).unwrap();
            if resultant(&fk, &gl).unwrap().is_zero() {
                let h = poly_gcd(&fk.to_rational(), &gl.to_rational()).unwrap();
                let (_, common_factor) = h.clear_denominators();
                return Ok(OracleOutcome {
                    coprime: false,
                    bound,
                    witness: Some(OracleWitness {
                        k,
                        l,
                        common_factor,
                    }),
                });
            }
        }
    }
    Ok(OracleOutcome {
        coprime: true,
        bound,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaKind {
    /// `P_1·P_{−1} = ⟨p⟩`.
    SplitProduct,
    /// `N(P_1) = N(P_{−1}) = p`.
    PrimeNorms,
    /// `P_ε^k = ⟨p^k, (a√D+ε)/2⟩`.
    PowerIdentity,
    /// `(a√D+1)/2` has valuation `v_p(n)` at `P_1` and 0 at `P_{−1}`, and
    /// `(a√D−1)/2 ∉ P_1`.
    ElementValuation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    N,
    M,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub side: Side,
    #[serde(serialize_with = "decimal")]
    pub prime: BigInt,
    pub lemma: LemmaKind,
    /// Exponent for power identities, `ε` folded in as its sign.
    pub exponent: Option<i64>,
    pub passed: bool,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub n: u64,
    pub m: u64,
    #[serde(rename = "D", serialize_with = "decimal")]
    pub d: BigInt,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Replays the split-prime facts behind the `D > 1` branch for every prime
/// of `n` (with `a`) and of `m` (with `b`).
pub fn verify_split_prime_lemmas(n: u64, m: u64) -> Result<LemmaReport, TwistError> {
    if n == 0 || m == 0 {
        return Err(TwistError::ZeroParameter);
    }
    let (nb, mb) = (BigInt::from(n), BigInt::from(m));
    let (dn, dm): (BigInt, BigInt) = (&nb * 4 + 1, &mb * 4 + 1);
    if is_perfect_square(&(&dn * &dm)).is_none() {
        return Err(TwistError::NonSquareProduct);
    }
    let (a, d) = squarefree_decompose(&dn).expect("positive");
    let (b, _) = squarefree_decompose(&dm).expect("positive");
    if d.is_one() {
        return Err(TwistError::RationalBranch);
    }
    let mut checks = Vec::new();
    for (side, value, coef) in [(Side::N, &nb, &a), (Side::M, &mb, &b)] {
        if value.is_one() {
            continue;
        }
        for p in prime_support(value) {
            let mut push = |lemma, exponent, passed| {
                checks.push(LemmaCheck {
                    side,
                    prime: p.clone(),
                    lemma,
                    exponent,
                    passed,
                })
            };
            let (p1, pm1) = split_prime(&p, value, coef, &d)?;
            let principal = ideal_from_generators(&[QuadInt::integer(p.clone(), d.clone())?])?;
            push(
                LemmaKind::SplitProduct,
                None,
                ideal_mul(&p1, &pm1)? == principal,
            );
            push(
                LemmaKind::PrimeNorms,
                None,
                ideal_norm(&p1) == p && ideal_norm(&pm1) == p && p1 != pm1,
            );
            let v = vp_nonzero(value, &p);
            for (eps, pe) in [(1i64, &p1), (-1, &pm1)] {
                let gen = QuadInt::from_half(BigInt::from(eps), coef.clone(), d.clone())?;
                let mut power = pe.clone();
                for k in 1..=v {
                    if k > 1 {
                        power = ideal_mul(&power, pe)?;
                    }
                    let pk = QuadInt::integer(Pow::pow(&p, k as u32), d.clone())?;
                    let expected = ideal_from_generators(&[pk, gen.clone()])?;
                    push(LemmaKind::PowerIdentity, Some(eps * k), power == expected);
                }
            }
            let plus = QuadInt::from_half(BigInt::one(), coef.clone(), d.clone())?;
            let minus = QuadInt::from_half(-BigInt::one(), coef.clone(), d.clone())?;
            let passed = element_ideal_valuation(&plus, &p1)? as i64 == v
                && element_ideal_valuation(&plus, &pm1)? == 0
                && !ideal_contains(&p1, &minus)?;
            push(LemmaKind::ElementValuation, None, passed);
        }
    }
    Ok(LemmaReport { n, m, d, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn polynomials() {
        assert_eq!(alexander_twist(1).unwrap().to_string(), "t^2 - 3t + 1");
        assert_eq!(alexander_twist(4).unwrap().to_string(), "4t^2 - 9t + 4");
        assert_eq!(
            alexander_twist(216).unwrap().to_string(),
            "216t^2 - 433t + 216"
        );
        assert_eq!(alexander_twist(0), Err(TwistError::ZeroParameter));
    }

    #[test]
    fn reducibility_classes() {
        assert_eq!(twist_reducibility_class(2).unwrap(), (true, Some(1)));
        assert_eq!(twist_reducibility_class(3).unwrap(), (false, None));
        assert_eq!(twist_reducibility_class(6).unwrap(), (true, Some(2)));
    }

    #[test]
    fn branch_examples() {
        let t = certify_twist_coprime(1, 2).unwrap();
        assert_eq!(t.branch, Branch::NonSquareProduct);

        let t = certify_twist_coprime(2, 6).unwrap();
        assert_eq!(t.branch, Branch::MultiplicityMismatch);
        assert_eq!(t.witnesses.d, Some(bi(1)));
        assert_eq!(
            (t.witnesses.a.clone(), t.witnesses.b.clone()),
            (Some(bi(3)), Some(bi(5)))
        );

        let t = certify_twist_coprime(6, 20).unwrap();
        assert_eq!(t.branch, Branch::InequalityContradiction);
        let w = &t.witnesses;
        assert_eq!((w.alpha.clone(), w.l, w.k), (Some(bi(2)), Some(1), Some(2)));
        let r = |s: &str| s.parse::<BigRational>().unwrap();
        assert_eq!(w.lhs_interval, Some(Interval::point(r("9/4"))));
        assert_eq!(w.rhs_interval, Some(Interval::point(r("5/4"))));

        let t = certify_twist_coprime(1, 11).unwrap();
        assert_eq!(t.branch, Branch::DistinctPrimeSupport);
        assert_eq!(t.witnesses.d, Some(bi(5)));
        assert_eq!(t.witnesses.prime, Some(bi(11)));

        for t in [(1, 2), (2, 6), (6, 20), (1, 11)] {
            certify_twist_coprime(t.0, t.1).unwrap().replay().unwrap();
        }
        assert_eq!(
            certify_twist_coprime(3, 3),
            Err(TwistError::EqualParameters)
        );
    }

    #[test]
    fn surd_intervals_bracket_and_separate() {
        // n = 2, m = 4 share α = 2 with (l, k) = (1, 2)
        let (lhs, rhs) = separate(&bi(2), 2, &bi(4), 1).unwrap();
        assert!(lhs.disjoint(&rhs));
        let s = root_surd(&bi(2)).pow(2);
        assert!(s.at_least(&lhs.lo) && s.at_most(&lhs.hi));
        let s = root_surd(&bi(4));
        assert!(s.at_least(&rhs.lo) && s.at_most(&rhs.hi));
    }

    #[test]
    fn tampered_traces_fail() {
        let mut t = certify_twist_coprime(1, 11).unwrap();
        t.witnesses.prime = Some(bi(5));
        assert!(t.replay().is_err());
        let mut t = certify_twist_coprime(6, 20).unwrap();
        t.witnesses.rhs_interval = t.witnesses.lhs_interval.clone();
        assert!(t.replay().is_err());
        let mut t = certify_twist_coprime(1, 2).unwrap();
        t.m = 6;
        t.n = 2;
        assert!(t.replay().is_err());
    }

    #[test]
    fn oracle_examples() {
        let d = |n| alexander_twist(n).unwrap();
        assert!(oracle_coprime_bounded(&d(1), &d(2), 4).unwrap().coprime);
        let o = oracle_coprime_bounded(&d(4), &d(4), 1).unwrap();
        assert!(!o.coprime);
        let w = o.witness.unwrap();
        assert_eq!((w.k, w.l), (1, 1));
        assert_eq!(w.common_factor, d(4));
        let f: IntPolynomial = "2t^2 - t - 2".parse().unwrap();
        let o = oracle_coprime_bounded(&f, &d(4), 2).unwrap();
        let w = o.witness.unwrap();
        assert_eq!((w.k, w.l), (1, 2));
        assert_eq!(w.common_factor, f);
        assert_eq!(
            oracle_coprime_bounded(&f, &d(4), 0),
            Err(TwistError::BadBound)
        );
    }

    #[test]
    fn lemma_reports() {
        let r = verify_split_prime_lemmas(11, 31).unwrap();
        assert_eq!(r.d, bi(5));
        assert!(r.all_passed());
        assert!(r
            .checks
            .iter()
            .any(|c| c.side == Side::N && c.prime == bi(11)));
        assert!(r
            .checks
            .iter()
            .any(|c| c.side == Side::M && c.prime == bi(31)));
        let r = verify_split_prime_lemmas(1, 11).unwrap();
        assert!(r.all_passed());
        assert!(r.checks.iter().all(|c| c.side == Side::M));
        assert_eq!(
            verify_split_prime_lemmas(2, 6),
            Err(TwistError::RationalBranch)
        );
        assert_eq!(
            verify_split_prime_lemmas(1, 2),
            Err(TwistError::NonSquareProduct)
        );
    }

    #[test]
    fn trace_json_has_every_key() {
        let t = certify_twist_coprime(1, 11).unwrap();
        let j = serde_json::to_value(&t).unwrap();
        assert_eq!(j["branch"], "DistinctPrimeSupport");
        for key in [
            "a",
            "b",
            "D",
            "prime",
            "alpha",
            "k",
            "l",
            "lhs_interval",
            "rhs_interval",
        ] {
            assert!(j["witnesses"].get(key).is_some(), "{key}");
        }
        assert_eq!(j["witnesses"]["D"], "5");
        assert!(j["witnesses"]["alpha"].is_null());
        let back: TwistCoprimalityTrace = serde_json::from_value(j).unwrap();
        assert_eq!(back, t);
    }
}
