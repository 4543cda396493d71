//! Dense univariate polynomials over a [`Field`], stored little-endian.
//!
//! Only what modulus validation needs: products, remainders, gcd and modular
//! powers, plus a Rabin irreducibility test and an exhaustive factor scan
//! used to cross-check it in tests.

use super::{prime_factors, Field};

pub fn trim<F: Field>(field: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|&c| field.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree<F: Field>(field: &F, a: &[F::Elem]) -> Option<usize> {
    a.iter().rposition(|&c| !field.is_zero(c))
}

pub fn mul<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if field.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(field, out)
}

pub fn sub<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(field.zero());
            let y = b.get(i).copied().unwrap_or(field.zero());
            field.sub(x, y)
        })
        .collect();
    trim(field, out)
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem<F: Field>(field: &F, a: &[F::Elem], m: &[F::Elem]) -> Vec<F::Elem> {
    let dm = degree(field, m).expect("division by the zero polynomial");
    let lead_inv = field.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = trim(field, a.to_vec());
    while let Some(dr) = degree(field, &r) {
        if dr < dm {
            break;
        }
        let c = field.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &mc) in m[..=dm].iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(c, mc));
        }
        r = trim(field, r);
    }
    r
}

pub fn gcd<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = trim(field, a.to_vec());
    let mut y = trim(field, b.to_vec());
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(field, &x) {
        let inv = field.inv(x[d]).expect("nonzero");
        x.iter_mut().for_each(|c| *c = field.mul(*c, inv));
    }
    x
}

pub fn pow_mod<F: Field>(field: &F, base: &[F::Elem], mut exp: u64, m: &[F::Elem]) -> Vec<F::Elem> {
    let mut acc = rem(field, &[field.one()], m);
    let mut b = rem(field, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), m);
        }
        b = rem(field, &mul(field, &b, &b), m);
        exp >>= 1;
    }
    acc
}

/// Rabin's test: a degree-`d` polynomial `f` over `F_r` is irreducible iff
/// `x^{r^d} = x mod f` and `gcd(x^{r^{d/l}} - x, f) = 1` for every prime `l | d`.
pub fn is_irreducible<F: Field>(field: &F, f: &[F::Elem]) -> bool {
    let Some(d) = degree(field, f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let r = field.order();
    let x = vec![field.zero(), field.one()];
    // frob[i] = x^{r^i} mod f
    let mut frob = vec![rem(field, &x, f)];
    for i in 1..=d {
        let next = pow_mod(field, &frob[i - 1], r, f);
        frob.push(next);
    }
    if !sub(field, &frob[d], &x).is_empty() {
        return false;
    }
    prime_factors(d as u64).into_iter().all(|l| {
        let h = sub(field, &frob[d / l as usize], &x);
        degree(field, &gcd(field, &h, f)) == Some(0)
    })
}

/// Exhaustive check: `f` has no monic factor of degree `1..=deg/2`.
/// Exponential in the degree; only for cross-checking at tiny sizes.
pub fn is_irreducible_exhaustive<F: Field>(field: &F, f: &[F::Elem]) -> bool {
    let Some(d) = degree(field, f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let r = field.order();
    for fd in 1..=d / 2 {
        let count = r.pow(fd as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(fd + 1);
            let mut v = idx;
            for _ in 0..fd {
                cand.push(field.element(v % r));
                v /= r;
            }
            cand.push(field.one());
            if rem(field, f, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `d`, scanning the lower
/// coefficient vectors in increasing little-endian index order.
pub fn first_irreducible<F: Field>(field: &F, d: usize) -> Vec<F::Elem> {
    let r = field.order();
    let count = r.checked_pow(d as u32).expect("degree too large to scan");
    (0..count)
        .map(|idx| {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                cand.push(field.element(v % r));
                v /= r;
            }
            cand.push(field.one());
            cand
        })
        .find(|cand| is_irreducible(field, cand))
        .expect("irreducible polynomials exist in every degree")
}
