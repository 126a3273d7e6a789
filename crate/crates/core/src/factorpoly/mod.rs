//! Factorization over `F_p` and over ℚ, and the irreducibility decision
//! built on it.
//!
//! Over ℚ the algorithm is Zassenhaus: a squarefree decomposition via
//! `gcd(f, f')`, a modular factorization at the good prime (among the first
//! [`CANDIDATE_PRIMES`] primes) with the fewest factors, quadratic Hensel
//! lifting past twice the Mignotte bound times `|lc(f)|`, and recombination
//! over subsets of increasing size.

mod gf;
mod hensel;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use gf::GfPoly;

use crate::exactmath::{first_primes, is_prime, isqrt, small_primes};
use crate::poly::{primitive_gcd, IntPolynomial, RatPolynomial};

/// How many small primes are examined when choosing the modular image.
pub const CANDIDATE_PRIMES: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("irreducibility is undefined for constant polynomials")]
    Constant,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{p} divides the leading coefficient")]
    PrimeDividesLeading { p: u64 },
}

/// Factorization over `F_p`: `unit · ∏ factor^multiplicity` with monic
/// irreducible factors sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModFactorization {
    pub unit: u64,
    pub factors: Vec<(GfPoly, u32)>,
}

impl ModFactorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factorization over ℚ: `unit · ∏ factor^multiplicity`, factors primitive
/// irreducible integer polynomials with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> RatPolynomial {
        let prod = self
            .factors
            .iter()
            .fold(IntPolynomial::constant(BigInt::one()), |acc, (g, m)| {
                &acc * &g.pow(*m)
            });
        let scaled: Vec<BigRational> = prod
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) * &self.unit)
            .collect();
        RatPolynomial::new(scaled)
    }

    /// Total number of irreducible factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factor_count() == 1
    }
}

fn canonical_order(a: &IntPolynomial, b: &IntPolynomial) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Factors `f` over `F_p`.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Result<ModFactorization, FactorError> {
    if !is_prime(&BigInt::from(p)) {
        return Err(FactorError::NotPrime(p));
    }
    let fbar = GfPoly::from_int(f, p);
    if f.is_zero() || fbar.degree() != f.degree() {
        return Err(FactorError::PrimeDividesLeading { p });
    }
    let unit = fbar.leading();
    let mut factors = Vec::new();
    for (g, mult) in gf::squarefree_factors(&fbar.monic()) {
        for h in gf::factor_squarefree(&g) {
            factors.push((h, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(ModFactorization { unit, factors })
}

/// Squarefree decomposition of a primitive polynomial with positive leading
/// coefficient: `f = ∏ a_i^i`, returned as `(a_i, i)` for nonconstant `a_i`.
fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let mut out = Vec::new();
    let d = primitive_gcd(f, &f.derivative());
    let mut c = f.div_exact(&d).expect("gcd divides f");
    let mut d = d;
    let mut i = 1;
    while c.degree().is_some_and(|deg| deg > 0) {
        let y = primitive_gcd(&c, &d);
        let a = c.div_exact(&y).expect("gcd divides");
        if a.degree().is_some_and(|deg| deg > 0) {
            out.push((a.normalize_sign(), i));
        }
        d = d.div_exact(&y).expect("gcd divides");
        c = y;
        i += 1;
    }
    out
}

/// Mignotte-style coefficient bound `2^d · (‖f‖₂ + 1)` for any factor.
fn factor_coefficient_bound(f: &IntPolynomial) -> BigInt {
    let d = f.degree().unwrap_or(0);
    (isqrt(&f.norm_squared()) + BigInt::one()) << d
}

/// Picks the good prime with the fewest modular factors. Returns the prime,
/// the monic reduction and its factor count.
fn choose_prime(f: &IntPolynomial) -> (u64, GfPoly, usize) {
    let lc = f.leading().unwrap();
    let mut best: Option<(u64, GfPoly, usize)> = None;
    // Past the candidate window, keep going until some good prime turns up.
    for (examined, p) in small_primes().iter().map(|&p| u64::from(p)).enumerate() {
        if examined >= CANDIDATE_PRIMES && best.is_some() {
            break;
        }
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fbar = GfPoly::from_int(f, p).monic();
        if !fbar.is_squarefree() {
            continue;
        }
        let count = gf::factor_count(&fbar);
        if best.as_ref().is_none_or(|(_, _, c)| count < *c) {
            best = Some((p, fbar, count));
            if count == 1 {
                break;
            }
        }
    }
    best.expect("a squarefree polynomial has a good prime")
}

/// Zassenhaus on a squarefree primitive polynomial of positive degree with
/// positive leading coefficient.
fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let deg = f.degree().unwrap();
    if deg == 1 {
        return vec![f.clone()];
    }
    let (p, fbar, count) = choose_prime(f);
    if count == 1 {
        return vec![f.clone()];
    }
    let modular = gf::factor_squarefree(&fbar);
    let lc = f.leading().unwrap().abs();
    let bound = factor_coefficient_bound(f) * &lc * BigInt::from(2);
    let (modulus, mut lifted) = hensel::lift(f, &modular, p, &bound);

    let mut remaining = f.clone();
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        match find_true_factor(&remaining, &lifted, size, &modulus) {
            Some((subset, factor)) => {
                remaining = remaining.div_exact(&factor).expect("verified divisor");
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found.push(factor);
            }
            None => size += 1,
        }
    }
    found.push(remaining.normalize_sign());
    found
}

/// Searches subsets of `size` lifted factors whose scaled product is a true
/// divisor of `f`.
fn find_true_factor(
    f: &IntPolynomial,
    lifted: &[IntPolynomial],
    size: usize,
    modulus: &BigInt,
) -> Option<(Vec<usize>, IntPolynomial)> {
    let lc = f.leading().unwrap().clone();
    let lc_const = &lc * f.trailing_constant();
    let mut idx: Vec<usize> = (0..size).collect();
    let n = lifted.len();
    loop {
        // cheap necessary test on constant terms first
        let const_prod = idx.iter().fold(lc.clone(), |acc, &i| {
            (acc * lifted[i].trailing_constant()).mod_floor(modulus)
        });
        let c0 =
            hensel::symmetric(&IntPolynomial::constant(const_prod), modulus).trailing_constant();
        let plausible = if c0.is_zero() {
            lc_const.is_zero()
        } else {
            (&lc_const % &c0).is_zero()
        };
        if plausible {
            let prod = idx
                .iter()
                .fold(IntPolynomial::constant(lc.clone()), |acc, &i| {
                    hensel::symmetric(&(&acc * &lifted[i]), modulus)
                });
            let candidate = prod.primitive_part();
            if f.div_exact(&candidate).is_some() {
                return Some((idx, candidate));
            }
        }
        // next combination in lexicographic order
        let mut k = size;
        while k > 0 && idx[k - 1] == n - size + k - 1 {
            k -= 1;
        }
        if k == 0 {
            return None;
        }
        idx[k - 1] += 1;
        for j in k..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Complete factorization of a nonzero integer polynomial over ℚ.
pub fn factor_over_q(f: &IntPolynomial) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let (_, prim) = f.content_and_primitive().unwrap();
    let mut factors: Vec<(IntPolynomial, u32)> = Vec::new();
    let zeros = prim.zero_root_multiplicity();
    let rest = if zeros > 0 {
        factors.push((IntPolynomial::from_i64s(&[0, 1]), zeros as u32));
        IntPolynomial::new(prim.coeffs()[zeros..].to_vec())
    } else {
        prim
    };
    if rest.degree().is_some_and(|d| d > 0) {
        for (a, mult) in squarefree_decomposition(&rest) {
            for g in zassenhaus(&a) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| canonical_order(a, b));
    let prod_lc = factors.iter().fold(BigInt::one(), |acc, (g, m)| {
        acc * num_traits::Pow::pow(g.leading().unwrap(), *m)
    });
    let unit = BigRational::new(f.leading().unwrap().clone(), prod_lc);
    Ok(Factorization { unit, factors })
}

/// Factorization of a rational polynomial, with denominators absorbed in the
/// unit.
pub fn factor_rational(f: &RatPolynomial) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let (scale, g) = f.clear_denominators();
    let mut fact = factor_over_q(&g)?;
    fact.unit *= scale;
    Ok(fact)
}

/// Whether the primitive part of `f` is irreducible over ℚ.
pub fn is_irreducible_q(f: &IntPolynomial) -> Result<bool, FactorError> {
    match f.degree() {
        None => Err(FactorError::ZeroPolynomial),
        Some(0) => Err(FactorError::Constant),
        Some(1) => Ok(true),
        Some(_) => {
            let prim = f.primitive_part();
            if prim.trailing_constant().is_zero() {
                return Ok(false);
            }
            // one-sided shortcut: a squarefree image irreducible mod a good prime
            for p in first_primes(CANDIDATE_PRIMES) {
                let fbar = GfPoly::from_int(&prim, p);
                if fbar.degree() == prim.degree() && fbar.monic().is_squarefree() {
                    if gf::factor_count(&fbar.monic()) == 1 {
                        return Ok(true);
                    }
                    break;
                }
            }
            Ok(factor_over_q(&prim)?.is_irreducible())
        }
    }
}

/// `f(t^k)` factored over ℚ.
pub fn factor_substituted(f: &IntPolynomial, k: usize) -> Result<Factorization, FactorError> {
    factor_over_q(
        &f.substitute_power(k)
            .map_err(|_| FactorError::ZeroPolynomial)?,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn factors_of(s: &str) -> Vec<(IntPolynomial, u32)> {
        factor_over_q(&p(s)).unwrap().factors
    }

    #[test]
    fn mod_p_examples() {
        let tw216_cubed = p("216t^2 - 433t + 216").substitute_power(3).unwrap();
        let fm = factor_mod_p(&tw216_cubed, 11).unwrap();
        assert!(fm.is_irreducible());
        assert_eq!(fm.factors[0].0.degree(), Some(6));

        let fm = factor_mod_p(&p("t^2 - 1"), 3).unwrap();
        assert_eq!(fm.factors.len(), 2);
        assert_eq!(fm.factors[0].0.coeffs(), &[1, 1]);
        assert_eq!(fm.factors[1].0.coeffs(), &[2, 1]);

        assert!(factor_mod_p(&p("t^2 + t + 1"), 2).unwrap().is_irreducible());
        assert_eq!(
            factor_mod_p(&p("2t^2 + 1"), 2),
            Err(FactorError::PrimeDividesLeading { p: 2 })
        );
        assert_eq!(factor_mod_p(&p("t + 1"), 9), Err(FactorError::NotPrime(9)));
    }

    #[test]
    fn rational_examples() {
        assert_eq!(
            factors_of("2t^2 - 5t + 2"),
            vec![(p("t - 2"), 1), (p("2t - 1"), 1)]
        );
        assert_eq!(
            factors_of("4t^4 - 9t^2 + 4"),
            vec![(p("2t^2 - t - 2"), 1), (p("2t^2 + t - 2"), 1)]
        );
        assert_eq!(factors_of("t^2 - 3t + 1"), vec![(p("t^2 - 3t + 1"), 1)]);
    }

    #[test]
    fn units_and_multiplicities() {
        let f = p("-12t^5 + 24t^4 - 12t^3");
        let fact = factor_over_q(&f).unwrap();
        assert_eq!(fact.factors, vec![(p("t - 1"), 2), (p("t"), 3)]);
        assert_eq!(fact.unit, BigRational::from_integer(BigInt::from(-12)));
        assert_eq!(fact.expand(), f.to_rational());
        let c = factor_over_q(&p("-7")).unwrap();
        assert!(c.factors.is_empty());
        assert_eq!(
            factor_over_q(&IntPolynomial::zero()),
            Err(FactorError::ZeroPolynomial)
        );
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible_q(&p("8t^4 - 26t^3 + 35t^2 - 26t + 8")).unwrap());
        assert!(!is_irreducible_q(&p("12t^2 - 25t + 12")).unwrap());
        assert!(is_irreducible_q(&p("t")).unwrap());
        assert!(is_irreducible_q(&p("6t + 4")).unwrap());
        assert!(!is_irreducible_q(&p("t^2")).unwrap());
        assert_eq!(is_irreducible_q(&p("5")), Err(FactorError::Constant));
    }

    #[test]
    fn swinnerton_dyer_like_many_modular_factors() {
        // x^4 - 10x^2 + 1 is irreducible but splits into ≤ 2-degree pieces mod every prime
        let f = p("t^4 - 10t^2 + 1");
        assert!(is_irreducible_q(&f).unwrap());
        let g = &f * &f;
        assert_eq!(factor_over_q(&g).unwrap().factors, vec![(f, 2)]);
    }

    #[test]
    fn cyclotomic_product() {
        let fact = factor_over_q(&p("t^12 - 1")).unwrap();
        let degs: Vec<usize> = fact
            .factors
            .iter()
            .map(|(g, _)| g.degree().unwrap())
            .collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
        assert_eq!(fact.expand(), p("t^12 - 1").to_rational());
    }
}
