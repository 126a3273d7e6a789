//! The ring of integers `Z[ω]`, `ω = (1+√D)/2`, of `ℚ(√D)` for squarefree
//! `D ≡ 1 (mod 4)`, `D ≠ 1`.
//!
//! Elements are `u + vω`; multiplication uses `ω² = ω + (D−1)/4`. Ideals are
//! sublattices of `Z² = Z·1 ⊕ Z·ω` kept in Hermite normal form
//! `[[a, b], [0, c]]`, i.e. the lattice `Za + Z(b + cω)` with `a, c > 0` and
//! `0 ≤ b < a`, so ideal equality is matrix equality and the norm is `a·c`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactmath::{factor_int, is_prime, vp_nonzero};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("D = {0} must be squarefree and congruent to 1 mod 4")]
    BadDiscriminant(BigInt),
    #[error("D = 1 is the rational case and has no quadratic ring")]
    RationalBranch,
    #[error("(x + y√D)/2 needs x ≡ y (mod 2), got x = {x}, y = {y}")]
    NotIntegral { x: BigInt, y: BigInt },
    #[error("operands live in rings with different D ({0} and {1})")]
    MismatchedD(BigInt, BigInt),
    #[error("all generators are zero")]
    ZeroIdeal,
    #[error("zero has no finite valuation")]
    ZeroElement,
    #[error("ideal of norm {0} is not prime")]
    NotPrimeIdeal(BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("{p} does not divide {n}")]
    PrimeDoesNotDivide { p: BigInt, n: BigInt },
    #[error("4n + 1 = {lhs} differs from a²D = {rhs}")]
    MalformedSplit { lhs: BigInt, rhs: BigInt },
    #[error("{p} divides aD")]
    PrimeDividesAD { p: BigInt },
    #[error("valuation exceeds the cap {0}")]
    ValuationCap(u32),
}

fn check_d(d: &BigInt) -> Result<(), QuadError> {
    if d.is_one() {
        return Err(QuadError::RationalBranch);
    }
    if d.is_zero() || !d.mod_floor(&BigInt::from(4)).is_one() {
        return Err(QuadError::BadDiscriminant(d.clone()));
    }
    let squarefree = factor_int(d)
        .expect("nonzero")
        .factors
        .iter()
        .all(|(_, e)| *e == 1);
    if !squarefree {
        return Err(QuadError::BadDiscriminant(d.clone()));
    }
    Ok(())
}

/// `u + vω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub u: BigInt,
    pub v: BigInt,
    d: BigInt,
}

impl QuadInt {
    pub fn new(u: BigInt, v: BigInt, d: BigInt) -> Result<Self, QuadError> {
        check_d(&d)?;
        Ok(QuadInt { u, v, d })
    }

    /// `(x + y√D)/2 = (x−y)/2 + yω`.
    pub fn from_half(x: BigInt, y: BigInt, d: BigInt) -> Result<Self, QuadError> {
        let diff = &x - &y;
        if diff.is_odd() {
            return Err(QuadError::NotIntegral { x, y });
        }
        QuadInt::new(diff / 2, y, d)
    }

    pub fn integer(u: BigInt, d: BigInt) -> Result<Self, QuadError> {
        QuadInt::new(u, BigInt::zero(), d)
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn c(&self) -> BigInt {
        (&self.d - 1) / 4
    }

    fn same_ring(&self, o: &QuadInt) -> Result<(), QuadError> {
        if self.d == o.d {
            Ok(())
        } else {
            Err(QuadError::MismatchedD(self.d.clone(), o.d.clone()))
        }
    }

    fn mul_unchecked(&self, o: &QuadInt) -> QuadInt {
        let vt = &self.v * &o.v;
        QuadInt {
            u: &self.u * &o.u + &vt * self.c(),
            v: &self.u * &o.v + &self.v * &o.u + vt,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, o: &QuadInt) -> Result<QuadInt, QuadError> {
        self.same_ring(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn add(&self, o: &QuadInt) -> Result<QuadInt, QuadError> {
        self.same_ring(o)?;
        Ok(QuadInt {
            u: &self.u + &o.u,
            v: &self.v + &o.v,
            d: self.d.clone(),
        })
    }

    /// `ū = u + v − vω`.
    pub fn conjugate(&self) -> QuadInt {
        QuadInt {
            u: &self.u + &self.v,
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    fn times_omega(&self) -> QuadInt {
        QuadInt {
            u: &self.v * self.c(),
            v: &self.u + &self.v,
            d: self.d.clone(),
        }
    }

    /// Field norm `x·x̄ = u² + uv − v²(D−1)/4`, signed.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u + &self.u * &self.v - &self.v * &self.v * self.c()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // (2u + v + v√D)/2
        let x: BigInt = &self.u * 2 + &self.v;
        write!(f, "({} + {}√{})/2", x, self.v, self.d)
    }
}

pub fn element_norm(x: &QuadInt) -> BigInt {
    x.norm()
}

/// An ideal `Za + Z(b + cω)` in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadIdeal {
    #[serde(serialize_with = "decimal")]
    pub a: BigInt,
    #[serde(serialize_with = "decimal")]
    pub b: BigInt,
    #[serde(serialize_with = "decimal")]
    pub c: BigInt,
    #[serde(serialize_with = "decimal")]
    d: BigInt,
}

fn decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// HNF of the integer lattice spanned by `vecs` (as `(u, v)` pairs).
fn hnf(vecs: impl IntoIterator<Item = (BigInt, BigInt)>) -> Option<(BigInt, BigInt, BigInt)> {
    let mut a = BigInt::zero();
    let (mut b, mut c) = (BigInt::zero(), BigInt::zero());
    for (u, v) in vecs {
        if v.is_zero() {
            a = a.gcd(&u);
            continue;
        }
        if c.is_zero() {
            (b, c) = (u, v);
            continue;
        }
        let e = c.extended_gcd(&v);
        let g = e.gcd;
        let nb = &e.x * &b + &e.y * &u;
        // (v/g)(b, c) − (c/g)(u, v) has zero second coordinate
        let rest = (&v / &g) * &b - (&c / &g) * &u;
        a = a.gcd(&rest);
        (b, c) = (nb, g);
    }
    if a.is_zero() || c.is_zero() {
        return None;
    }
    if c.is_negative() {
        (b, c) = (-b, -c);
    }
    Some((a.clone(), b.mod_floor(&a), c))
}

impl QuadIdeal {
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Lattice basis as ring elements: `a` and `b + cω`.
    pub fn basis(&self) -> [QuadInt; 2] {
        [
            QuadInt {
                u: self.a.clone(),
                v: BigInt::zero(),
                d: self.d.clone(),
            },
            QuadInt {
                u: self.b.clone(),
                v: self.c.clone(),
                d: self.d.clone(),
            },
        ]
    }

    pub fn unit(d: &BigInt) -> Result<Self, QuadError> {
        ideal_from_generators(&[QuadInt::integer(BigInt::one(), d.clone())?])
    }

    /// Whether the lattice is closed under multiplication by `ω`.
    pub fn is_ideal(&self) -> bool {
        self.basis()
            .iter()
            .all(|g| self.contains_unchecked(&g.times_omega()))
    }

    fn contains_unchecked(&self, x: &QuadInt) -> bool {
        if !x.v.is_multiple_of(&self.c) {
            return false;
        }
        let w = &x.v / &self.c;
        (&x.u - w * &self.b).is_multiple_of(&self.a)
    }

    pub fn pow(&self, k: u32) -> QuadIdeal {
        let mut acc = QuadIdeal::unit(&self.d).expect("valid D");
        for _ in 0..k {
            acc = ideal_mul(&acc, self).expect("same D");
        }
        acc
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [0, {}]]", self.a, self.b, self.c)
    }
}

/// HNF of the lattice spanned by `{g, gω}` over the generators.
pub fn ideal_from_generators(gens: &[QuadInt]) -> Result<QuadIdeal, QuadError> {
    let d = match gens.first() {
        Some(g) => g.d.clone(),
        None => return Err(QuadError::ZeroIdeal),
    };
    for g in gens {
        if g.d != d {
            return Err(QuadError::MismatchedD(d, g.d.clone()));
        }
    }
    let vecs = gens.iter().flat_map(|g| {
        let gw = g.times_omega();
        [(g.u.clone(), g.v.clone()), (gw.u, gw.v)]
    });
    let (a, b, c) = hnf(vecs).ok_or(QuadError::ZeroIdeal)?;
    Ok(QuadIdeal { a, b, c, d })
}

pub fn ideal_mul(i: &QuadIdeal, j: &QuadIdeal) -> Result<QuadIdeal, QuadError> {
    if i.d != j.d {
        return Err(QuadError::MismatchedD(i.d.clone(), j.d.clone()));
    }
    let gens: Vec<QuadInt> = i
        .basis()
        .iter()
        .flat_map(|x| j.basis().map(|y| x.mul_unchecked(&y)))
        .collect();
    ideal_from_generators(&gens)
}

/// Index of the ideal in the ring: the HNF determinant.
pub fn ideal_norm(i: &QuadIdeal) -> BigInt {
    &i.a * &i.c
}

pub fn ideal_contains(i: &QuadIdeal, x: &QuadInt) -> Result<bool, QuadError> {
    if i.d != x.d {
        return Err(QuadError::MismatchedD(i.d.clone(), x.d.clone()));
    }
    Ok(i.contains_unchecked(x))
}

/// `P_1 = ⟨p, (a√D+1)/2⟩` and `P_{−1} = ⟨p, (a√D−1)/2⟩` for a prime
/// `p | n` with `4n+1 = a²D`.
pub fn split_prime(
    p: &BigInt,
    n: &BigInt,
    a: &BigInt,
    d: &BigInt,
) -> Result<(QuadIdeal, QuadIdeal), QuadError> {
    check_d(d)?;
    if !is_prime(p) {
        return Err(QuadError::NotPrime(p.clone()));
    }
    if !n.is_multiple_of(p) {
        return Err(QuadError::PrimeDoesNotDivide {
            p: p.clone(),
            n: n.clone(),
        });
    }
    let lhs: BigInt = n * 4 + 1;
    let rhs = a * a * d;
    if lhs != rhs {
        return Err(QuadError::MalformedSplit { lhs, rhs });
    }
    if (a * d).is_multiple_of(p) {
        return Err(QuadError::PrimeDividesAD { p: p.clone() });
    }
    let pe = QuadInt::integer(p.clone(), d.clone())?;
    let mk = |eps: i32| -> Result<QuadIdeal, QuadError> {
        let g = QuadInt::from_half(BigInt::from(eps), a.clone(), d.clone())?;
        ideal_from_generators(&[pe.clone(), g])
    };
    Ok((mk(1)?, mk(-1)?))
}

/// Largest `e` with `x ∈ P^e`, for a prime ideal `P`. The search stops at
/// `v_{N(P)}(|N(x)|) + 2`, which no genuine valuation reaches.
pub fn element_ideal_valuation(x: &QuadInt, p: &QuadIdeal) -> Result<u32, QuadError> {
    if x.is_zero() {
        return Err(QuadError::ZeroElement);
    }
    if x.d != p.d {
        return Err(QuadError::MismatchedD(x.d.clone(), p.d.clone()));
    }
    let np = ideal_norm(p);
    if !is_prime(&np) {
        return Err(QuadError::NotPrimeIdeal(np));
    }
    let cap = vp_nonzero(&x.norm().abs(), &np) as u32 + 2;
    let mut power = p.clone();
    let mut e = 0;
    while power.contains_unchecked(x) {
        e += 1;
        if e > cap {
            return Err(QuadError::ValuationCap(cap));
        }
        power = ideal_mul(&power, p)?;
    }
    Ok(e)
}
