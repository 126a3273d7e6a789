//! Exact integer and rational arithmetic: p-adic valuations, integer
//! factorization, perfect powers and squarefree parts.
//!
//! Integers and rationals are [`num_bigint::BigInt`] and
//! [`num_rational::BigRational`]; both parse from and print to plain decimal
//! strings (`"-26"`, `"18/5"`).

mod primes;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

pub use num_bigint::BigInt;
use num_integer::Integer;
pub use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

pub use primes::{first_primes, is_prime, small_primes, TRIAL_DIVISION_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MathError {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("zero has no prime factorization")]
    ZeroFactorization,
    #[error("argument {value} out of domain: {reason}")]
    OutOfDomain { value: BigInt, reason: &'static str },
}

/// A p-adic valuation: a finite exponent or `+∞` (the valuation of zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        use Valuation::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

fn require_prime(p: &BigInt) -> Result<(), MathError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(MathError::NotPrime(p.clone()))
    }
}

/// Exponent of `p` in a nonzero integer. Caller guarantees `p > 1`.
pub(crate) fn vp_nonzero(x: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!x.is_zero());
    let mut x = x.clone();
    let mut k = 0;
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        x = q;
        k += 1;
    }
}

/// p-adic valuation of a rational number.
pub fn vp(x: &BigRational, p: &BigInt) -> Result<Valuation, MathError> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(
        vp_nonzero(x.numer(), p) - vp_nonzero(x.denom(), p),
    ))
}

/// p-adic valuation of an integer.
pub fn vp_int(x: &BigInt, p: &BigInt) -> Result<Valuation, MathError> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(vp_nonzero(x, p)))
}

/// Signed prime factorization of a nonzero integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub sign: i8,
    /// `(prime, exponent)` sorted by prime.
    pub factors: Vec<(BigInt, u32)>,
}

impl IntFactorization {
    pub fn reconstruct(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= Pow::pow(p, *e);
        }
        acc
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }
}

pub fn factor_int(n: &BigInt) -> Result<IntFactorization, MathError> {
    if n.is_zero() {
        return Err(MathError::ZeroFactorization);
    }
    Ok(IntFactorization {
        sign: if n.is_negative() { -1 } else { 1 },
        factors: primes::factor_abs(n),
    })
}

/// Nonnegative square root of `n` when `n` is a perfect square.
pub fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// `n = base^exponent` with the largest possible exponent `≥ 2` (hence the
/// smallest base), or `None` when `n` is not a perfect power.
pub fn perfect_power(n: &BigInt) -> Result<Option<(BigInt, u32)>, MathError> {
    if *n <= BigInt::one() {
        return Err(MathError::OutOfDomain {
            value: n.clone(),
            reason: "perfect_power requires n > 1",
        });
    }
    let max_exp = n.bits() as u32;
    for k in (2..=max_exp).rev() {
        let r = n.nth_root(k);
        if r > BigInt::one() && Pow::pow(&r, k) == *n {
            return Ok(Some((r, k)));
        }
    }
    Ok(None)
}

/// Writes `n = a²·D` with `D` squarefree.
pub fn squarefree_decompose(n: &BigInt) -> Result<(BigInt, BigInt), MathError> {
    if !n.is_positive() {
        return Err(MathError::OutOfDomain {
            value: n.clone(),
            reason: "squarefree decomposition requires n > 0",
        });
    }
    let fact = factor_int(n)?;
    let mut a = BigInt::one();
    let mut d = BigInt::one();
    for (p, e) in &fact.factors {
        a *= Pow::pow(p, e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    Ok((a, d))
}

/// Finds `alpha > 1` and coprime `k, l` with `n = alpha^l` and `m = alpha^k`.
///
/// Returned as `(alpha, k, l)`.
pub fn multiplicative_dependence(
    n: &BigInt,
    m: &BigInt,
) -> Result<Option<(BigInt, u32, u32)>, MathError> {
    for v in [n, m] {
        if *v <= BigInt::one() {
            return Err(MathError::OutOfDomain {
                value: v.clone(),
                reason: "multiplicative dependence requires values > 1",
            });
        }
    }
    let fn_ = factor_int(n)?;
    let fm = factor_int(m)?;
    if fn_.factors.len() != fm.factors.len() || fn_.primes().zip(fm.primes()).any(|(p, q)| p != q) {
        return Ok(None);
    }
    let (en0, em0) = (fn_.factors[0].1, fm.factors[0].1);
    let g = en0.gcd(&em0);
    let (l, k) = (en0 / g, em0 / g);
    let mut alpha = BigInt::one();
    for ((p, en), (_, em)) in fn_.factors.iter().zip(&fm.factors) {
        if en * k != em * l {
            return Ok(None);
        }
        alpha *= Pow::pow(p, en / l);
    }
    Ok(Some((alpha, k, l)))
}

/// Integer square root bracket: `floor(sqrt(n))` for `n ≥ 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    n.sqrt()
}
