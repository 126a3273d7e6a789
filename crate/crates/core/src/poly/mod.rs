//! Dense univariate polynomials over ℤ and ℚ.

mod parse;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use parse::{parse_poly, ParseError};
pub use rational::RatPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("substitution exponent must be positive")]
    ZeroExponent,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
}

/// Integer polynomial `c_0 + c_1 t + … + c_d t^d`, stored low-to-high with
/// nonzero leading coefficient (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// By degree, then coefficients from the constant term up.
impl Ord for IntPolynomial {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&o.coeffs.len())
            .then_with(|| self.coeffs.cmp(&o.coeffs))
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c·t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_constant(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides every coefficient by `c`; `None` unless all divide exactly.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(Self::new(out))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `f(t^k)`.
    pub fn substitute_power(&self, k: usize) -> Result<Self, PolyError> {
        if k == 0 {
            return Err(PolyError::ZeroExponent);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Ok(Self::new(out))
    }

    /// gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Positive content and the primitive part with positive leading
    /// coefficient; `content · primitive = ±self`.
    pub fn content_and_primitive(&self) -> Result<(BigInt, Self), PolyError> {
        let lc = self.leading().ok_or(PolyError::ZeroPolynomial)?;
        let content = self.content();
        let signed = if lc.is_negative() {
            -content.clone()
        } else {
            content.clone()
        };
        let prim = self
            .div_scalar_exact(&signed)
            .expect("content divides every coefficient");
        Ok((content, prim))
    }

    /// Primitive part with positive leading coefficient (zero stays zero).
    pub fn primitive_part(&self) -> Self {
        match self.content_and_primitive() {
            Ok((_, p)) => p,
            Err(_) => Self::zero(),
        }
    }

    /// Flips the sign so the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        if self.leading().is_some_and(Signed::is_negative) {
            -self
        } else {
            self
        }
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// `t^d f(1/t)`: the coefficient list reversed (after dropping a factor
    /// `t^v` when `c_0 = 0`, so the result has degree `d − v`).
    pub fn reciprocal(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(Self::new(self.coeffs.iter().rev().cloned().collect()))
    }

    /// Multiplicity of the root `t = 0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Exact quotient `self / d` over ℤ, `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let Some(n) = self.degree() else {
            return Some(Self::zero());
        };
        if n < dd {
            return None;
        }
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for i in (0..=n - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qi, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qi * c;
            }
            q[i] = qi;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg self − deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo-division by zero polynomial");
        let Some(n) = self.degree() else {
            return Self::zero();
        };
        if n < dd {
            return self.clone();
        }
        let lc = d.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut steps = n - dd + 1;
        for i in (0..=n - dd).rev() {
            let top = rem[i + dd].clone();
            for c in rem.iter_mut() {
                *c *= lc;
            }
            steps -= 1;
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &top * c;
            }
        }
        debug_assert_eq!(steps, 0);
        rem.truncate(dd);
        Self::new(rem)
    }

    pub fn to_rational(&self) -> RatPolynomial {
        RatPolynomial::from(self)
    }

    /// Sum of squared coefficients.
    pub fn norm_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    fn binop(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        Self::new(
            (0..n)
                .map(|k| {
                    op(
                        self.coeffs.get(k).unwrap_or(&zero),
                        other.coeffs.get(k).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.binop(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self.binop(rhs, |a, b| a - b)
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl IntPolynomial {
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigInt::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl FromStr for IntPolynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_poly(s)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_poly(&s).map_err(serde::de::Error::custom)
    }
}

/// gcd over ℤ of two integer polynomials' primitive parts, via the primitive
/// remainder sequence. Positive leading coefficient; zero only if both are.
pub fn primitive_gcd(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    let mut a = f.primitive_part();
    let mut b = g.primitive_part();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    a
}

/// Monic gcd over ℚ.
pub fn poly_gcd(f: &RatPolynomial, g: &RatPolynomial) -> Result<RatPolynomial, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (_, fi) = f.clear_denominators();
    let (_, gi) = g.clear_denominators();
    Ok(primitive_gcd(&fi, &gi).to_rational().monic())
}

/// Resultant over ℤ by the subresultant remainder sequence.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Result<BigInt, PolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut sign = BigInt::one();
    let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    if b.degree() == Some(0) {
        let db0 = b.leading().unwrap();
        return Ok(sign * Pow::pow(db0, a.degree().unwrap() as u32));
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar_exact(&ca).unwrap();
    b = b.div_scalar_exact(&cb).unwrap();
    let t = Pow::pow(&ca, b.degree().unwrap() as u32) * Pow::pow(&cb, a.degree().unwrap() as u32);
    let mut g_ = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.degree().unwrap(), b.degree().unwrap());
        let delta = (dega - degb) as u32;
        if dega % 2 == 1 && degb % 2 == 1 {
            sign = -sign;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        let divisor = &g_ * Pow::pow(&h, delta);
        b = r
            .div_scalar_exact(&divisor)
            .expect("subresultant division is exact");
        g_ = a.leading().unwrap().clone();
        h = match delta {
            0 => h,
            1 => g_.clone(),
            _ => Pow::pow(&g_, delta) / Pow::pow(&h, delta - 1),
        };
        if b.degree() == Some(0) {
            let dega = a.degree().unwrap() as u32;
            let lb = b.leading().unwrap();
            let hh = if dega == 0 {
                h.clone()
            } else {
                Pow::pow(lb, dega) / Pow::pow(&h, dega - 1)
            };
            return Ok(sign * t * hh);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    /// Determinant of the Sylvester matrix by fraction-free elimination.
    fn sylvester_resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let size = m + n;
        if size == 0 {
            return BigInt::one();
        }
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + i][i + j] = c.clone();
            }
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size {
            if mat[k][k].is_zero() {
                let Some(r) = (k + 1..size).find(|&r| !mat[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                mat.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let v = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = v / &prev;
                }
            }
            prev = mat[k][k].clone();
        }
        sign * prev
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p("t - 2") * &p("t + 2"), p("t^2 - 4"));
        assert_eq!(
            &p("2t^2 - t - 2") * &p("2t^2 + t - 2"),
            p("4t^4 - 9t^2 + 4")
        );
        assert_eq!(&p("3t + 1") + &IntPolynomial::zero(), p("3t + 1"));
        assert_eq!(&p("t^2 + 1") - &p("t^2"), p("1"));
        assert_eq!((&p("t^2 + 1") - &p("t^2 + 1")).degree(), None);
    }

    #[test]
    fn substitution() {
        let n4 = p("4t^2 - 9t + 4");
        assert_eq!(n4.substitute_power(2).unwrap(), p("4t^4 - 9t^2 + 4"));
        assert_eq!(n4.substitute_power(1).unwrap(), n4);
        assert_eq!(p("t - 2").substitute_power(3).unwrap(), p("t^3 - 2"));
        assert_eq!(n4.substitute_power(0), Err(PolyError::ZeroExponent));
    }

    #[test]
    fn content_primitive() {
        assert_eq!(
            p("4t^2 - 6t + 2").content_and_primitive().unwrap(),
            (BigInt::from(2), p("2t^2 - 3t + 1"))
        );
        let knot = p("8t^4 - 26t^3 + 35t^2 - 26t + 8");
        assert_eq!(
            knot.content_and_primitive().unwrap(),
            (BigInt::one(), knot.clone())
        );
        assert_eq!(
            p("-3t").content_and_primitive().unwrap(),
            (BigInt::from(3), p("t"))
        );
        assert_eq!(
            IntPolynomial::zero().content_and_primitive(),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn gcds() {
        let g = poly_gcd(
            &p("t^2 - 1").to_rational(),
            &p("t^2 - 2t + 1").to_rational(),
        )
        .unwrap();
        assert_eq!(g, p("t - 1").to_rational());
        let g = poly_gcd(
            &p("t^2 - 3t + 1").to_rational(),
            &p("2t^2 - 5t + 2").to_rational(),
        )
        .unwrap();
        assert_eq!(g, RatPolynomial::one());
        let f = p("2t^2 + 4").to_rational();
        assert_eq!(
            poly_gcd(&f, &RatPolynomial::zero()).unwrap(),
            p("t^2 + 2").to_rational()
        );
        assert_eq!(
            poly_gcd(&RatPolynomial::zero(), &RatPolynomial::zero()),
            Err(PolyError::BothZero)
        );
    }

    #[test]
    fn resultants() {
        assert_eq!(
            resultant(&p("t - 1"), &p("t + 1")).unwrap(),
            BigInt::from(2)
        );
        let t2 = p("2t^2 - 5t + 2");
        assert_eq!(resultant(&t2, &t2).unwrap(), BigInt::zero());
        let a = p("t^2 - 3t + 1").substitute_power(2).unwrap();
        let b = t2.substitute_power(3).unwrap();
        let r = resultant(&a, &b).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r, sylvester_resultant(&a, &b));
        assert_eq!(resultant(&p("3"), &p("t^2 + 1")).unwrap(), BigInt::from(9));
        assert!(resultant(&IntPolynomial::zero(), &t2).is_err());
    }

    #[test]
    fn resultant_matches_sylvester_on_mixed_degrees() {
        let cases = [
            ("t^3 - 2t + 5", "4t^2 + t - 7"),
            ("2t^2 + 3", "t^5 - t + 1"),
            ("6t^4 - 3t^2 + 9", "2t^3 + 4t"),
            ("t^4 - 1", "t^2 + 1"),
            ("5t - 3", "7t + 2"),
        ];
        for (a, b) in cases {
            let (a, b) = (p(a), p(b));
            assert_eq!(
                resultant(&a, &b).unwrap(),
                sylvester_resultant(&a, &b),
                "{a} / {b}"
            );
            assert_eq!(
                resultant(&b, &a).unwrap(),
                sylvester_resultant(&b, &a),
                "{b} / {a}"
            );
        }
    }

    #[test]
    fn reciprocals() {
        assert_eq!(p("2t^2 - 5t + 3").reciprocal().unwrap(), p("3t^2 - 5t + 2"));
        let tw = p("7t^2 - 15t + 7");
        assert_eq!(tw.reciprocal().unwrap(), tw);
        assert_eq!(p("t^3 - 2").reciprocal().unwrap(), p("-2t^3 + 1"));
    }

    #[test]
    fn exact_division() {
        let f = p("4t^4 - 9t^2 + 4");
        assert_eq!(f.div_exact(&p("2t^2 - t - 2")), Some(p("2t^2 + t - 2")));
        assert_eq!(f.div_exact(&p("t - 1")), None);
        assert_eq!(p("t^2 - 1").div_exact(&p("2t - 2")), None);
    }

    #[test]
    fn display() {
        assert_eq!(p("-t^3 + 0t - 1").to_string(), "-t^3 - 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p("t").to_string(), "t");
    }
}
