//! Test-side oracles that share no code with the library algorithms.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use strongirr::{BigInt, IntPolynomial};

pub fn random_poly(
    rng: &mut ChaCha8Rng,
    min_deg: usize,
    max_deg: usize,
    bound: i64,
) -> IntPolynomial {
    let d = rng.gen_range(min_deg..=max_deg);
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    while c[d] == 0 {
        c[d] = rng.gen_range(-bound..=bound);
    }
    IntPolynomial::from_i64s(&c)
}

fn small_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = 2u64;
    while out.len() < count {
        if (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
        {
            out.push(n);
        }
        n += 1;
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let li = inv(m[dm], p);
    while r.len() > dm {
        let q = r[r.len() - 1] * li % p;
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - q * c % p) % p;
        }
        trim(&mut r);
    }
    r
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

/// Degrees of the irreducible factors of a squarefree `f` mod `p`, by
/// distinct-degree factorization; `None` if `p` is unsuitable.
fn modular_degrees(f: &IntPolynomial, p: u64) -> Option<Vec<usize>> {
    let pb = BigInt::from(p);
    let mut f: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| {
            let r = ((c % &pb) + &pb) % &pb;
            u64::try_from(r).unwrap()
        })
        .collect();
    let d = f.len() - 1;
    if f[d] == 0 {
        return None;
    }
    let g = gcd(&f, &derivative(&f, p), p);
    if g.len() > 1 {
        return None;
    }
    let mut degrees = Vec::new();
    let mut h = vec![0, 1];
    let mut i = 1;
    while f.len() > 1 {
        if 2 * i > f.len() - 1 {
            degrees.push(f.len() - 1);
            break;
        }
        let mut hp = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                hp = mulmod(&hp, &base, &f, p);
            }
            base = mulmod(&base, &base, &f, p);
            e >>= 1;
        }
        h = hp;
        let g = gcd(&f, &sub(&h, &[0, 1], p), p);
        let dg = g.len() - 1;
        for _ in 0..dg / i {
            degrees.push(i);
        }
        if dg > 0 {
            // f /= g by repeated long division
            f = div(&f, &g, p);
            h = rem(&h, &f, p);
        }
        i += 1;
    }
    Some(degrees)
}

fn div(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let li = inv(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    for k in (0..q.len()).rev() {
        let c = r[k + dm] * li % p;
        q[k] = c;
        for (i, &x) in m.iter().enumerate() {
            r[k + i] = (r[k + i] + p - c * x % p) % p;
        }
    }
    q
}

fn subset_sums(degrees: &[usize], total: usize) -> Vec<bool> {
    let mut reach = vec![false; total + 1];
    reach[0] = true;
    for &d in degrees {
        for s in (d..=total).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

/// `Some(true)` when modular degree patterns rule out every proper factor
/// degree, `Some(false)` when `f` has a visible rational factor, `None`
/// when inconclusive.
pub fn degree_sieve_irreducible(f: &IntPolynomial) -> Option<bool> {
    let d = f.degree()?;
    if d <= 1 {
        return Some(true);
    }
    if f.coeffs()[0] == BigInt::from(0) {
        return Some(false);
    }
    let mut possible = vec![true; d + 1];
    for p in small_primes(60) {
        if let Some(deg) = modular_degrees(f, p) {
            let reach = subset_sums(&deg, d);
            for s in 1..d {
                possible[s] &= reach[s];
            }
            if (1..d).all(|s| !possible[s]) {
                return Some(true);
            }
        }
    }
    None
}

/// Lower hull by brute force: a point is a vertex iff no pair of other
/// points puts it on or above their chord from below.
pub fn brute_lower_hull(points: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let on_or_above = |(k, v): (usize, i64), (i, vi): (usize, i64), (j, vj): (usize, i64)| {
        // (v − vi)(j − i) ≥ (vj − vi)(k − i)
        (v - vi) as i128 * (j as i128 - i as i128) >= (vj - vi) as i128 * (k as i128 - i as i128)
    };
    points
        .iter()
        .copied()
        .filter(|&x| {
            !points.iter().any(|&l| {
                points
                    .iter()
                    .any(|&r| l.0 < x.0 && x.0 < r.0 && on_or_above(x, l, r))
            })
        })
        .collect()
}
