//! Exact arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q^n}`.
//!
//! Elements are small `Copy` handles (packed little-endian digit vectors);
//! all arithmetic goes through an immutable field context, so a context can
//! be shared freely between threads.
//!
//! * [`PrimeField`]: `F_p`, elements are plain `u32` residues.
//! * [`BaseField`]: `F_q = F_p[y]/(g)`, elements are [`BaseElement`].
//! * [`ExtField`]: `F_{q^n} = F_q[x]/(f)`, elements are [`ExtElement`],
//!   with Frobenius powers, trace and norm down to `F_q`.

mod base;
mod ext;
mod params;
pub mod poly;
mod prime;

use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;
use thiserror::Error;

pub use base::{BaseElement, BaseField};
pub use ext::{ArithmeticMode, ExtElement, ExtField};
pub use params::FieldParams;
pub use prime::PrimeField;

/// Largest supported `q`.
pub const MAX_BASE_ORDER: u64 = 1 << 16;
/// Largest supported `q^n`.
pub const MAX_EXT_ORDER: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus has degree {got:?}, expected {expected}")]
    WrongDegree { expected: usize, got: Option<usize> },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is not irreducible")]
    NotIrreducible,
    #[error("coefficient {value} out of range for modulus {modulus}")]
    CoefficientOutOfRange { value: u64, modulus: u64 },
    #[error("field too large: {0}")]
    TooLarge(String),
    #[error("invalid field parameters: {0}")]
    Invalid(String),
}

/// A finite field context. Elements are plain values; every operation is
/// routed through the context that knows the moduli.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem, GfError>;

    /// The element with enumeration index `index` (`0 <= index < order`).
    /// Index 0 is zero and index 1 is one.
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, a: Self::Elem) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, a: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(0..self.order()))
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        self.element(rng.gen_range(1..self.order()))
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// First generator of the multiplicative group, scanning indices upward.
pub(crate) fn find_primitive<F: Field>(field: &F) -> F::Elem {
    let group = field.order() - 1;
    let factors = prime_factors(group);
    (1..field.order())
        .map(|i| field.element(i))
        .find(|&g| factors.iter().all(|&r| field.pow(g, group / r) != field.one()))
        .expect("multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(65521));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(65535));
        assert_eq!(prime_factors(255), vec![3, 5, 17]);
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }
}
