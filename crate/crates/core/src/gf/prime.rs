use super::{is_prime, Field, GfError};

/// The prime field `F_p`; elements are residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.p as u64
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.pow(a, self.p as u64 - 2))
    }

    fn element(&self, index: u64) -> u32 {
        debug_assert!(index < self.p as u64);
        index as u32
    }

    fn index_of(&self, a: u32) -> u64 {
        a as u64
    }
}
