//! Quadratic Hensel lifting of a modular factorization `f ≡ lc · ∏ g_i`
//! from `p` to `p^(2^j)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::gf::GfPoly;
use crate::poly::IntPolynomial;

/// Modular polynomial arithmetic over `ℤ/mℤ`, coefficients kept in `[0, m)`.
struct Ring<'a> {
    m: &'a BigInt,
}

impl Ring<'_> {
    fn reduce(&self, f: &IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(self.m)).collect())
    }

    fn mul(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        self.reduce(&(a * b))
    }

    fn add(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        self.reduce(&(a + b))
    }

    fn sub(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        self.reduce(&(a - b))
    }

    /// Division by a monic `d`.
    fn div_rem_monic(
        &self,
        a: &IntPolynomial,
        d: &IntPolynomial,
    ) -> (IntPolynomial, IntPolynomial) {
        let dd = d.degree().expect("nonzero divisor");
        debug_assert!(d.leading().unwrap().is_one());
        let mut r: Vec<BigInt> = self.reduce(a).into_coeffs();
        if r.len() <= dd {
            return (IntPolynomial::zero(), IntPolynomial::new(r));
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd].mod_floor(self.m);
            if coef.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs().iter().enumerate() {
                r[i + j] = (&r[i + j] - &coef * b).mod_floor(self.m);
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (IntPolynomial::new(q), IntPolynomial::new(r))
    }
}

/// One quadratic step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` with `h`
/// monic, produce the same relations modulo `m²`.
fn hensel_step(
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    s: &IntPolynomial,
    t: &IntPolynomial,
    m: &BigInt,
) -> (IntPolynomial, IntPolynomial, IntPolynomial, IntPolynomial) {
    let m2 = m * m;
    let r = Ring { m: &m2 };
    let e = r.sub(f, &r.mul(g, h));
    let (q, rem) = r.div_rem_monic(&r.mul(s, &e), h);
    let g1 = r.add(g, &r.add(&r.mul(t, &e), &r.mul(&q, g)));
    let h1 = r.add(h, &rem);
    let b = r.sub(
        &r.add(&r.mul(s, &g1), &r.mul(t, &h1)),
        &IntPolynomial::constant(BigInt::one()),
    );
    let (c, d) = r.div_rem_monic(&r.mul(s, &b), &h1);
    let s1 = r.sub(s, &d);
    let t1 = r.sub(t, &r.add(&r.mul(t, &b), &r.mul(&c, &g1)));
    (g1, h1, s1, t1)
}

/// Lifts the monic, pairwise coprime modular factors of squarefree `f` until
/// the modulus `p^(2^j)` reaches `bound`. Returns the modulus and the lifted
/// monic factors (in input order).
pub(crate) fn lift(
    f: &IntPolynomial,
    factors: &[GfPoly],
    p: u64,
    bound: &BigInt,
) -> (BigInt, Vec<IntPolynomial>) {
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut steps = 0u32;
    while modulus < *bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lc_p = GfPoly::from_int(&IntPolynomial::constant(f.leading().unwrap().clone()), p);
    let mut target = f.clone();
    let mut out = Vec::with_capacity(factors.len());
    for (idx, hbar) in factors.iter().enumerate() {
        if idx + 1 == factors.len() {
            // target ≡ lc · hbar; normalize to monic.
            let lc = target.leading().unwrap().clone();
            let inv = mod_inverse(&lc, &modulus);
            out.push(Ring { m: &modulus }.reduce(&target.scale(&inv)));
            break;
        }
        let gbar = factors[idx + 1..]
            .iter()
            .fold(lc_p.clone(), |acc, x| acc.mul(x));
        let (one, sbar, tbar) = gbar.ext_gcd(hbar);
        debug_assert!(one.is_one());
        let (mut g, mut h, mut s, mut t) =
            (gbar.to_int(), hbar.to_int(), sbar.to_int(), tbar.to_int());
        let mut m = pb.clone();
        for _ in 0..steps {
            (g, h, s, t) = hensel_step(&target, &g, &h, &s, &t, &m);
            m = &m * &m;
        }
        out.push(h);
        target = g;
    }
    (modulus, out)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Symmetric representative in `(-m/2, m/2]`.
pub(crate) fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half: BigInt = m >> 1;
    IntPolynomial::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}
