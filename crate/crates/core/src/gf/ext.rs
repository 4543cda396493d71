use std::fmt;

use super::{find_primitive, poly, BaseElement, BaseField, Field, FieldParams, GfError, MAX_EXT_ORDER};

/// Fields up to this order get log/exp tables.
const TABLE_LIMIT: u64 = 1 << 20;

/// An element of `F_{q^n}`, stored as the packed index `sum c_i q^i` of its
/// coefficient vector `(c_0, ..., c_{n-1})` over `F_q` (each `c_i` itself
/// packed as a [`BaseElement`] index). Elements of `F_q` are exactly the
/// indices below `q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtElement(pub(crate) u64);

impl ExtElement {
    pub const ZERO: ExtElement = ExtElement(0);
    pub const ONE: ExtElement = ExtElement(1);

    pub fn index(self) -> u64 {
        self.0
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArithmeticMode {
    /// Log/exp tables when the field is small enough, schoolbook otherwise.
    #[default]
    Auto,
    /// Always schoolbook multiplication with reduction modulo `f`.
    Schoolbook,
}

#[derive(Clone)]
struct Tables {
    log: Vec<u32>,
    exp: Vec<u32>,
}

/// `F_{q^n} = F_q[x]/(f)`.
#[derive(Clone)]
pub struct ExtField {
    params: FieldParams,
    base: BaseField,
    n: usize,
    order: u64,
    modulus: Vec<BaseElement>,
    tables: Option<Tables>,
    /// `frob_basis[i][j] = (x^j)^{q^i}`
    frob_basis: Vec<Vec<ExtElement>>,
    /// `q^i mod (q^n - 1)`
    q_pow_mod: Vec<u64>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("q", &self.base.q())
            .field("n", &self.n)
            .field("f", &self.modulus)
            .field("tables", &self.tables.is_some())
            .finish()
    }
}

impl ExtField {
    pub fn new(params: &FieldParams) -> Result<Self, GfError> {
        Self::with_mode(params, ArithmeticMode::Auto)
    }

    /// Shorthand for auto-generated moduli.
    pub fn generate(p: u32, e: usize, n: usize) -> Result<Self, GfError> {
        Self::new(&FieldParams::generate(p, e, n)?)
    }

    pub fn with_mode(params: &FieldParams, mode: ArithmeticMode) -> Result<Self, GfError> {
        let base = BaseField::new(params.p, &params.g)?;
        let n = params.n;
        if n == 0 {
            return Err(GfError::Invalid("extension degree n must be at least 1".into()));
        }
        let q = base.q() as u64;
        let order = q
            .checked_pow(n as u32)
            .filter(|&o| o <= MAX_EXT_ORDER)
            .ok_or_else(|| GfError::TooLarge(format!("q^n = {q}^{n} exceeds {MAX_EXT_ORDER}")))?;
        if params.f.len() != n + 1 {
            return Err(GfError::WrongDegree { expected: n, got: params.f.len().checked_sub(1) });
        }
        let modulus = params.f.iter().map(|c| base.from_digits(c)).collect::<Result<Vec<_>, _>>()?;
        if modulus[n] != BaseElement::ONE {
            return Err(GfError::NotMonic);
        }
        if !poly::is_irreducible(&base, &modulus) {
            return Err(GfError::NotIrreducible);
        }
        let mut field = Self {
            params: params.clone(),
            base,
            n,
            order,
            modulus,
            tables: None,
            frob_basis: Vec::new(),
            q_pow_mod: Vec::new(),
        };
        let m = order - 1;
        field.q_pow_mod = (0..n).map(|i| if m == 0 { 0 } else { q.pow(i as u32) % m }).collect();
        if mode == ArithmeticMode::Auto && order <= TABLE_LIMIT {
            field.build_tables();
        }
        field.frob_basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let xj = field.monomial(j);
                        field.pow(xj, q.pow(i as u32))
                    })
                    .collect()
            })
            .collect();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let order = self.order as usize;
        let g = find_primitive(self);
        let mut exp = vec![0u32; 2 * (order - 1)];
        let mut log = vec![0u32; order];
        let mut x = ExtElement::ONE;
        for (i, slot) in exp.iter_mut().take(order - 1).enumerate() {
            *slot = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = self.schoolbook_mul(x, g);
        }
        for i in order - 1..2 * (order - 1) {
            exp[i] = exp[i - (order - 1)];
        }
        self.tables = Some(Tables { log, exp });
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    /// Extension degree `n`.
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.base.q() as u64
    }

    pub fn modulus(&self) -> &[BaseElement] {
        &self.modulus
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// `x^j` for `j < n`; for `n = 1` only `j = 0` is meaningful.
    pub fn monomial(&self, j: usize) -> ExtElement {
        debug_assert!(j < self.n);
        ExtElement(self.q().pow(j as u32))
    }

    /// The power basis `(1, x, ..., x^{n-1})` of `F_{q^n}` over `F_q`.
    pub fn power_basis(&self) -> Vec<ExtElement> {
        (0..self.n).map(|j| self.monomial(j)).collect()
    }

    pub fn coeffs(&self, a: ExtElement) -> Vec<BaseElement> {
        let q = self.q();
        let mut v = a.0;
        (0..self.n)
            .map(|_| {
                let d = v % q;
                v /= q;
                BaseElement(d as u32)
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[BaseElement]) -> ExtElement {
        debug_assert!(coeffs.len() <= self.n);
        let q = self.q();
        ExtElement(coeffs.iter().rev().fold(0u64, |acc, c| acc * q + c.0 as u64))
    }

    pub fn embed(&self, c: BaseElement) -> ExtElement {
        ExtElement(c.0 as u64)
    }

    /// `Some(c)` when `a` lies in the subfield `F_q`.
    pub fn to_base(&self, a: ExtElement) -> Option<BaseElement> {
        (a.0 < self.q()).then_some(BaseElement(a.0 as u32))
    }

    /// `c * a` for `c` in `F_q`, coefficient-wise.
    pub fn scale(&self, c: BaseElement, a: ExtElement) -> ExtElement {
        if let Some(t) = &self.tables {
            if c.0 == 0 || a.0 == 0 {
                return ExtElement::ZERO;
            }
            let lc = t.log[c.0 as usize] as usize;
            return ExtElement(t.exp[lc + t.log[a.0 as usize] as usize] as u64);
        }
        let coeffs: Vec<_> = self.coeffs(a).into_iter().map(|x| self.base.mul(c, x)).collect();
        self.from_coeffs(&coeffs)
    }

    /// Digits over `F_p`, one inner vector per `F_q` coefficient.
    pub fn to_digits(&self, a: ExtElement) -> Vec<Vec<u32>> {
        self.coeffs(a).into_iter().map(|c| self.base.digits(c)).collect()
    }

    pub fn from_digits(&self, digits: &[Vec<u32>]) -> Result<ExtElement, GfError> {
        if digits.len() > self.n {
            return Err(GfError::Invalid(format!("{} coefficients for degree {}", digits.len(), self.n)));
        }
        let coeffs = digits.iter().map(|d| self.base.from_digits(d)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.from_coeffs(&coeffs))
    }

    pub fn schoolbook_mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        let n = self.n;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![BaseElement::ZERO; 2 * n - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = self.base.add(prod[i + j], self.base.mul(x, y));
            }
        }
        for d in (n..2 * n - 1).rev() {
            let c = prod[d];
            if c.0 == 0 {
                continue;
            }
            for i in 0..n {
                prod[d - n + i] = self.base.sub(prod[d - n + i], self.base.mul(c, self.modulus[i]));
            }
            prod[d] = BaseElement::ZERO;
        }
        if n == 1 {
            // x = -f_0; constants never need reduction
            return ExtElement(prod[0].0 as u64);
        }
        self.from_coeffs(&prod[..n])
    }

    /// `a^{q^i}`, with `i` taken modulo `n`.
    pub fn frobenius(&self, a: ExtElement, i: usize) -> ExtElement {
        let i = i % self.n;
        if i == 0 || a.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let m = self.order - 1;
            let l = (t.log[a.0 as usize] as u64 * self.q_pow_mod[i]) % m;
            return ExtElement(t.exp[l as usize] as u64);
        }
        self.coeffs(a)
            .into_iter()
            .zip(&self.frob_basis[i])
            .fold(ExtElement::ZERO, |acc, (c, &xj)| self.add(acc, self.scale(c, xj)))
    }

    /// Inverse Frobenius power: `a^{q^{-i}} = a^{q^{n-i}}`.
    pub fn frobenius_inv(&self, a: ExtElement, i: usize) -> ExtElement {
        let i = i % self.n;
        self.frobenius(a, (self.n - i) % self.n)
    }

    /// `Tr(a) = a + a^q + ... + a^{q^{n-1}}`.
    pub fn trace(&self, a: ExtElement) -> BaseElement {
        let s = (0..self.n).fold(ExtElement::ZERO, |acc, i| self.add(acc, self.frobenius(a, i)));
        self.to_base(s).expect("trace lies in the base field")
    }

    /// `N(a) = a a^q ... a^{q^{n-1}}`.
    pub fn norm(&self, a: ExtElement) -> BaseElement {
        let s = (0..self.n).fold(ExtElement::ONE, |acc, i| self.mul(acc, self.frobenius(a, i)));
        self.to_base(s).expect("norm lies in the base field")
    }

    /// Is `a` a square in `F_{q^n}`?
    pub fn is_square(&self, a: ExtElement) -> bool {
        if self.base.p() == 2 || a.0 == 0 {
            return true;
        }
        self.pow(a, (self.order - 1) / 2) == ExtElement::ONE
    }

    fn digit_add(&self, a: u64, b: u64, negate_b: bool) -> u64 {
        let q = self.q();
        let (mut x, mut y, mut acc, mut scale) = (a, b, 0u64, 1u64);
        for _ in 0..self.n {
            let da = BaseElement((x % q) as u32);
            let mut db = BaseElement((y % q) as u32);
            if negate_b {
                db = self.base.neg(db);
            }
            acc += self.base.add(da, db).0 as u64 * scale;
            scale *= q;
            x /= q;
            y /= q;
        }
        acc
    }
}

impl Field for ExtField {
    type Elem = ExtElement;

    fn order(&self) -> u64 {
        self.order
    }

    fn characteristic(&self) -> u64 {
        self.base.p() as u64
    }

    fn zero(&self) -> ExtElement {
        ExtElement::ZERO
    }

    fn one(&self) -> ExtElement {
        ExtElement::ONE
    }

    #[inline]
    fn add(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if self.base.p() == 2 {
            return ExtElement(a.0 ^ b.0);
        }
        ExtElement(self.digit_add(a.0, b.0, false))
    }

    #[inline]
    fn neg(&self, a: ExtElement) -> ExtElement {
        if self.base.p() == 2 {
            return a;
        }
        ExtElement(self.digit_add(0, a.0, true))
    }

    #[inline]
    fn sub(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if self.base.p() == 2 {
            return ExtElement(a.0 ^ b.0);
        }
        ExtElement(self.digit_add(a.0, b.0, true))
    }

    #[inline]
    fn mul(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        if a.0 == 0 || b.0 == 0 {
            return ExtElement::ZERO;
        }
        match &self.tables {
            Some(t) => ExtElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            None => self.schoolbook_mul(a, b),
        }
    }

    fn inv(&self, a: ExtElement) -> Result<ExtElement, GfError> {
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        match &self.tables {
            Some(t) => {
                let m = (self.order - 1) as usize;
                Ok(ExtElement(t.exp[m - t.log[a.0 as usize] as usize] as u64))
            }
            None => Ok(self.pow(a, self.order - 2)),
        }
    }

    fn pow(&self, a: ExtElement, exp: u64) -> ExtElement {
        if exp == 0 {
            return ExtElement::ONE;
        }
        if a.0 == 0 {
            return a;
        }
        if let Some(t) = &self.tables {
            let m = self.order - 1;
            let l = (t.log[a.0 as usize] as u128 * (exp % m) as u128 % m as u128) as usize;
            return ExtElement(t.exp[l] as u64);
        }
        let mut base = a;
        let mut acc = ExtElement::ONE;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.schoolbook_mul(acc, base);
            }
            base = self.schoolbook_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn element(&self, index: u64) -> ExtElement {
        debug_assert!(index < self.order);
        ExtElement(index)
    }

    fn index_of(&self, a: ExtElement) -> u64 {
        a.0
    }
}
