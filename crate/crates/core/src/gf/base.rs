use std::fmt;

use super::{find_primitive, poly, Field, GfError, PrimeField, MAX_BASE_ORDER};

/// An element of `F_q`, stored as the packed index `sum c_i p^i` of its
/// coefficient vector over `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BaseElement(pub(crate) u32);

impl BaseElement {
    pub const ZERO: BaseElement = BaseElement(0);
    pub const ONE: BaseElement = BaseElement(1);

    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

/// `F_q = F_p[y]/(g)` with log/exp tables for multiplication.
#[derive(Clone)]
pub struct BaseField {
    prime: PrimeField,
    e: usize,
    q: u32,
    modulus: Vec<u32>,
    log: Vec<u32>,
    exp: Vec<u32>,
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseField").field("p", &self.prime.p()).field("e", &self.e).field("g", &self.modulus).finish()
    }
}

impl BaseField {
    /// Builds `F_p[y]/(g)`; `g` is a monic irreducible polynomial over `F_p`
    /// given little-endian (`e + 1` coefficients).
    pub fn new(p: u32, g: &[u32]) -> Result<Self, GfError> {
        let prime = PrimeField::new(p)?;
        if let Some(&c) = g.iter().find(|&&c| c >= p) {
            return Err(GfError::CoefficientOutOfRange { value: c as u64, modulus: p as u64 });
        }
        let e = match poly::degree(&prime, g) {
            Some(d) if d >= 1 => d,
            got => return Err(GfError::WrongDegree { expected: g.len().saturating_sub(1).max(1), got }),
        };
        if g.len() != e + 1 {
            return Err(GfError::WrongDegree { expected: g.len() - 1, got: Some(e) });
        }
        if g[e] != 1 {
            return Err(GfError::NotMonic);
        }
        let q = (p as u64)
            .checked_pow(e as u32)
            .filter(|&q| q <= MAX_BASE_ORDER)
            .ok_or_else(|| GfError::TooLarge(format!("q = {p}^{e} exceeds {MAX_BASE_ORDER}")))?;
        if !poly::is_irreducible(&prime, g) {
            return Err(GfError::NotIrreducible);
        }
        let mut field = Self { prime, e, q: q as u32, modulus: g.to_vec(), log: Vec::new(), exp: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    /// `F_p` itself, presented with modulus `g = y`.
    pub fn prime(p: u32) -> Result<Self, GfError> {
        Self::new(p, &[0, 1])
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let g = find_primitive(&SlowBase(self));
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().enumerate().take(q - 1) {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g.0);
        }
        for i in q - 1..2 * (q - 1) {
            exp[i] = exp[i - (q - 1)];
        }
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let pa = self.digits(BaseElement(a));
        let pb = self.digits(BaseElement(b));
        let prod = poly::mul(&self.prime, &pa, &pb);
        let r = poly::rem(&self.prime, &prod, &self.modulus);
        self.from_digits(&r).expect("reduced digits are in range").0
    }

    pub fn p(&self) -> u32 {
        self.prime.p()
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.prime
    }

    /// Coefficients over `F_p`, little-endian, length `e`.
    pub fn digits(&self, a: BaseElement) -> Vec<u32> {
        let p = self.prime.p();
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Inverse of [`digits`](Self::digits); accepts up to `e` digits.
    pub fn from_digits(&self, digits: &[u32]) -> Result<BaseElement, GfError> {
        let p = self.prime.p();
        if digits.len() > self.e {
            return Err(GfError::Invalid(format!("{} digits for an extension of degree {}", digits.len(), self.e)));
        }
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            if d >= p {
                return Err(GfError::CoefficientOutOfRange { value: d as u64, modulus: p as u64 });
            }
            acc = acc * p + d;
        }
        Ok(BaseElement(acc))
    }

    /// `a` is a square in `F_q`. Every element is a square when `q` is even.
    pub fn is_square(&self, a: BaseElement) -> bool {
        if self.p() == 2 || a.0 == 0 {
            return true;
        }
        self.log[a.0 as usize].is_multiple_of(2)
    }

    /// Some square root of `a`, if one exists.
    pub fn sqrt(&self, a: BaseElement) -> Option<BaseElement> {
        if a.0 == 0 {
            return Some(a);
        }
        let l = self.log[a.0 as usize];
        if self.p() == 2 {
            // squaring is a bijection; halve the log modulo the odd group order
            let m = self.q - 1;
            let half = if l.is_multiple_of(2) { l / 2 } else { (l + m) / 2 };
            return Some(BaseElement(self.exp[half as usize]));
        }
        l.is_multiple_of(2).then(|| BaseElement(self.exp[(l / 2) as usize]))
    }
}

impl Field for BaseField {
    type Elem = BaseElement;

    fn order(&self) -> u64 {
        self.q as u64
    }

    fn characteristic(&self) -> u64 {
        self.prime.p() as u64
    }

    fn zero(&self) -> BaseElement {
        BaseElement(0)
    }

    fn one(&self) -> BaseElement {
        BaseElement(1)
    }

    #[inline]
    fn add(&self, a: BaseElement, b: BaseElement) -> BaseElement {
        let p = self.prime.p();
        if p == 2 {
            return BaseElement(a.0 ^ b.0);
        }
        if self.e == 1 {
            let s = a.0 + b.0;
            return BaseElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut acc, mut scale) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.e {
            let d = (x % p + y % p) % p;
            acc += d * scale;
            scale *= p;
            x /= p;
            y /= p;
        }
        BaseElement(acc)
    }

    #[inline]
    fn neg(&self, a: BaseElement) -> BaseElement {
        let p = self.prime.p();
        if p == 2 || a.0 == 0 {
            return a;
        }
        if self.e == 1 {
            return BaseElement(p - a.0);
        }
        let (mut x, mut acc, mut scale) = (a.0, 0u32, 1u32);
        for _ in 0..self.e {
            let d = (p - x % p) % p;
            acc += d * scale;
            scale *= p;
            x /= p;
        }
        BaseElement(acc)
    }

    #[inline]
    fn mul(&self, a: BaseElement, b: BaseElement) -> BaseElement {
        if a.0 == 0 || b.0 == 0 {
            return BaseElement(0);
        }
        BaseElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    fn inv(&self, a: BaseElement) -> Result<BaseElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(BaseElement(self.exp[(self.q - 1 - self.log[a.0 as usize]) as usize]))
    }

    fn pow(&self, a: BaseElement, exp: u64) -> BaseElement {
        if exp == 0 {
            return BaseElement(1);
        }
        if a.0 == 0 {
            return a;
        }
        let m = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (exp % m)) % m;
        BaseElement(self.exp[l as usize])
    }

    fn element(&self, index: u64) -> BaseElement {
        debug_assert!(index < self.q as u64);
        BaseElement(index as u32)
    }

    fn index_of(&self, a: BaseElement) -> u64 {
        a.0 as u64
    }
}

/// Table-free view used while the tables are being built.
#[derive(Debug, Clone)]
struct SlowBase<'a>(&'a BaseField);

impl Field for SlowBase<'_> {
    type Elem = BaseElement;

    fn order(&self) -> u64 {
        self.0.q as u64
    }
    fn characteristic(&self) -> u64 {
        self.0.p() as u64
    }
    fn zero(&self) -> BaseElement {
        BaseElement(0)
    }
    fn one(&self) -> BaseElement {
        BaseElement(1)
    }
    fn add(&self, a: BaseElement, b: BaseElement) -> BaseElement {
        self.0.add(a, b)
    }
    fn neg(&self, a: BaseElement) -> BaseElement {
        self.0.neg(a)
    }
    fn mul(&self, a: BaseElement, b: BaseElement) -> BaseElement {
        BaseElement(self.0.slow_mul(a.0, b.0))
    }
    fn inv(&self, _a: BaseElement) -> Result<BaseElement, GfError> {
        unreachable!("inversion is not needed to find a generator")
    }
    fn element(&self, index: u64) -> BaseElement {
        BaseElement(index as u32)
    }
    fn index_of(&self, a: BaseElement) -> u64 {
        a.0 as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<BaseField> {
        vec![
            BaseField::prime(2).unwrap(),
            BaseField::prime(3).unwrap(),
            BaseField::prime(7).unwrap(),
            BaseField::new(2, &[1, 1, 1]).unwrap(),
            BaseField::new(2, &[1, 1, 0, 1]).unwrap(),
            BaseField::new(3, &[1, 0, 1]).unwrap(),
            BaseField::new(5, &[2, 0, 1]).unwrap(),
        ]
    }

    #[test]
    fn tables_agree_with_schoolbook() {
        for f in fields() {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b).0, f.slow_mul(a.0, b.0), "{f:?} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn exhaustive_axioms() {
        for f in fields() {
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.mul(a, f.one()), a);
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
            assert_eq!(f.inv(f.zero()), Err(GfError::DivisionByZero));
        }
    }

    #[test]
    fn squares_match_exhaustive_table() {
        for f in fields() {
            let squares: std::collections::HashSet<_> = f.elements().map(|b| f.mul(b, b)).collect();
            for a in f.elements() {
                assert_eq!(f.is_square(a), squares.contains(&a), "{f:?} {a:?}");
                if let Some(r) = f.sqrt(a) {
                    assert_eq!(f.mul(r, r), a);
                }
                assert_eq!(f.sqrt(a).is_some(), squares.contains(&a));
            }
        }
        let f3 = BaseField::prime(3).unwrap();
        assert!(f3.is_square(BaseElement(1)));
        assert!(!f3.is_square(BaseElement(2)));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(BaseField::new(4, &[0, 1]).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(BaseField::new(2, &[1, 0, 1]).unwrap_err(), GfError::NotIrreducible);
        assert_eq!(BaseField::new(3, &[1, 0, 2]).unwrap_err(), GfError::NotMonic);
        assert!(matches!(BaseField::new(3, &[1, 3, 1]), Err(GfError::CoefficientOutOfRange { .. })));
    }
}
