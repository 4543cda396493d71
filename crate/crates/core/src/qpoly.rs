//! Linearized (q-)polynomials `P = sum_{i<n} p_i X^{q^i}` modulo `X^{q^n} - X`,
//! i.e. the `F_q`-linear endomorphisms of `F_{q^n}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bilinear::Basis;
use crate::gf::{BaseElement, ExtElement, ExtField, Field, GfError};
use crate::linalg::{Matrix, MatrixFq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QPolyError {
    #[error("division by the zero q-polynomial")]
    DivisionByZero,
    #[error("adjoint needs a nonzero twist")]
    ZeroTwist,
    #[error("expected {expected} coefficients, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QPoly {
    coeffs: Vec<ExtElement>,
}

impl QPoly {
    pub fn zero(n: usize) -> Self {
        Self { coeffs: vec![ExtElement::ZERO; n] }
    }

    /// The identity map `X`.
    pub fn identity(n: usize) -> Self {
        Self::monomial(n, 0, ExtElement::ONE)
    }

    /// `a X^{q^i}`.
    pub fn monomial(n: usize, i: usize, a: ExtElement) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[i % n] = a;
        p
    }

    /// Coefficients `p_0, p_1, ...`; shorter inputs are zero-padded.
    pub fn from_coeffs(n: usize, mut coeffs: Vec<ExtElement>) -> Result<Self, QPolyError> {
        if coeffs.len() > n {
            return Err(QPolyError::WrongLength { expected: n, got: coeffs.len() });
        }
        coeffs.resize(n, ExtElement::ZERO);
        Ok(Self { coeffs })
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ExtElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> ExtElement {
        self.coeffs[i]
    }

    /// Largest `i` with `p_i != 0`; `None` for the zero polynomial.
    pub fn q_degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != ExtElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.q_degree().is_none()
    }

    /// Lowest `i` with `p_i != 0`.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != ExtElement::ZERO)
    }

    pub fn add(&self, ext: &ExtField, other: &Self) -> Self {
        self.zip(other, |a, b| ext.add(a, b))
    }

    pub fn sub(&self, ext: &ExtField, other: &Self) -> Self {
        self.zip(other, |a, b| ext.sub(a, b))
    }

    pub fn neg(&self, ext: &ExtField) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| ext.neg(c)).collect() }
    }

    /// `aX ∘ P`.
    pub fn scale(&self, ext: &ExtField, a: ExtElement) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&c| ext.mul(a, c)).collect() }
    }

    /// `P ∘ cX` for `c` in `F_q`, which equals `cX ∘ P`.
    pub fn scale_base(&self, ext: &ExtField, c: BaseElement) -> Self {
        Self { coeffs: self.coeffs.iter().map(|&x| ext.scale(c, x)).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(ExtElement, ExtElement) -> ExtElement) -> Self {
        assert_eq!(self.n(), other.n(), "q-polynomials over different extensions");
        Self { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect() }
    }

    pub fn evaluate(&self, ext: &ExtField, x: ExtElement) -> ExtElement {
        let mut acc = ext.zero();
        let mut xi = x;
        for &c in &self.coeffs {
            acc = ext.add(acc, ext.mul(c, xi));
            xi = ext.frobenius(xi, 1);
        }
        acc
    }

    /// `self ∘ other`, exponents reduced modulo `n`.
    pub fn compose(&self, ext: &ExtField, other: &Self) -> Self {
        let n = self.n();
        let mut out = Self::zero(n);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ext.zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != ext.zero() {
                    let k = (i + j) % n;
                    out.coeffs[k] = ext.add(out.coeffs[k], ext.mul(a, ext.frobenius(b, i)));
                }
            }
        }
        out
    }

    /// `self ∘ X^{q^m}`: a cyclic shift of the coefficients.
    pub fn compose_frobenius(&self, m: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.rotate_right(m % self.n().max(1));
        Self { coeffs }
    }

    /// Left division in the skew ring without wrap-around: returns `(Q, R)`
    /// with `self = divisor ∘ Q + R` and `deg R < deg divisor`.
    pub fn left_divide(&self, ext: &ExtField, divisor: &Self) -> Result<(Self, Self), QPolyError> {
        let d = divisor.q_degree().ok_or(QPolyError::DivisionByZero)?;
        let lead_inv = ext.inv(divisor.coeffs[d])?;
        let mut quot = Self::zero(self.n());
        let mut rem = self.clone();
        while let Some(a) = rem.q_degree().filter(|&a| a >= d) {
            let shift = a - d;
            let c = ext.frobenius_inv(ext.mul(rem.coeffs[a], lead_inv), d);
            quot.coeffs[shift] = ext.add(quot.coeffs[shift], c);
            for (i, &l) in divisor.coeffs[..=d].iter().enumerate() {
                if l != ext.zero() {
                    let t = ext.mul(l, ext.frobenius(c, i));
                    rem.coeffs[i + shift] = ext.sub(rem.coeffs[i + shift], t);
                }
            }
            debug_assert_eq!(rem.coeffs[a], ext.zero());
        }
        Ok((quot, rem))
    }

    /// The adjoint with respect to `<x, y>_u = Tr(u x y)`:
    /// `P^⊤ = p_0 X + sum_{i>=1} p_i^{q^{n-i}} u^{q^{n-i}-1} X^{q^{n-i}}`.
    pub fn adjoint(&self, ext: &ExtField, u: ExtElement) -> Result<Self, QPolyError> {
        let u_inv = ext.inv(u).map_err(|_| QPolyError::ZeroTwist)?;
        let n = self.n();
        let mut out = Self::zero(n);
        out.coeffs[0] = self.coeffs[0];
        for i in 1..n {
            let j = n - i;
            let twist = ext.mul(ext.frobenius(u, j), u_inv);
            out.coeffs[j] = ext.mul(ext.frobenius(self.coeffs[i], j), twist);
        }
        Ok(out)
    }

    pub fn is_self_adjoint(&self, ext: &ExtField, u: ExtElement) -> Result<bool, QPolyError> {
        Ok(self.adjoint(ext, u)? == *self)
    }

    /// Matrix of the map in `basis`: column `j` holds the coordinates of `P(b_j)`.
    pub fn matrix_of(&self, ext: &ExtField, basis: &Basis) -> MatrixFq {
        let cols: Vec<Vec<BaseElement>> =
            basis.elements().iter().map(|&b| basis.coordinates(ext, self.evaluate(ext, b))).collect();
        Matrix::from_columns(self.n(), &cols).expect("coordinate vectors have length n")
    }

    /// The q-polynomial whose matrix in `basis` is `m`.
    pub fn from_matrix(ext: &ExtField, basis: &Basis, m: &MatrixFq) -> Self {
        let values: Vec<ExtElement> = (0..m.cols()).map(|j| basis.combine(ext, &m.column(j))).collect();
        Self::interpolate(ext, basis, &values)
    }

    /// `(P(b_1), ..., P(b_n))`.
    pub fn vector_form(&self, ext: &ExtField, basis: &Basis) -> Vec<ExtElement> {
        basis.elements().iter().map(|&b| self.evaluate(ext, b)).collect()
    }

    /// The unique q-polynomial with `P(b_j) = values[j]`.
    pub fn interpolate(ext: &ExtField, basis: &Basis, values: &[ExtElement]) -> Self {
        let minv = basis.moore_inverse();
        let n = basis.len();
        let coeffs = (0..n)
            .map(|i| (0..n).fold(ext.zero(), |acc, j| ext.add(acc, ext.mul(values[j], minv.get(j, i)))))
            .collect();
        Self { coeffs }
    }

    /// Rank over `F_q` of the map `x -> P(x)`.
    pub fn rank(&self, ext: &ExtField) -> usize {
        self.power_matrix(ext).rank(ext.base())
    }

    /// An `F_q`-basis of the kernel.
    pub fn kernel(&self, ext: &ExtField) -> Vec<ExtElement> {
        self.power_matrix(ext).kernel(ext.base()).iter().map(|v| ext.from_coeffs(v)).collect()
    }

    fn power_matrix(&self, ext: &ExtField) -> MatrixFq {
        let cols: Vec<Vec<BaseElement>> =
            ext.power_basis().iter().map(|&b| ext.coeffs(self.evaluate(ext, b))).collect();
        Matrix::from_columns(self.n(), &cols).expect("coefficient vectors have length n")
    }

    /// Flattened `F_q` coordinates: `n` power-basis coefficients per `p_i`.
    pub fn to_base_vector(&self, ext: &ExtField) -> Vec<BaseElement> {
        self.coeffs.iter().flat_map(|&c| ext.coeffs(c)).collect()
    }

    pub fn from_base_vector(ext: &ExtField, v: &[BaseElement]) -> Self {
        let n = ext.degree();
        assert_eq!(v.len(), n * n);
        Self { coeffs: v.chunks(n).map(|c| ext.from_coeffs(c)).collect() }
    }

    pub fn random<R: rand::Rng + ?Sized>(ext: &ExtField, rng: &mut R) -> Self {
        Self { coeffs: (0..ext.degree()).map(|_| ext.random(rng)).collect() }
    }

    pub fn to_json(&self, ext: &ExtField) -> QPolyJson {
        QPolyJson { coeffs: self.coeffs.iter().map(|&c| ext.to_digits(c)).collect() }
    }

    pub fn from_json(ext: &ExtField, json: &QPolyJson) -> Result<Self, QPolyError> {
        let coeffs = json.coeffs.iter().map(|d| ext.from_digits(d)).collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != ext.degree() {
            return Err(QPolyError::WrongLength { expected: ext.degree(), got: coeffs.len() });
        }
        Ok(Self { coeffs })
    }
}

/// Serialized q-polynomial: one digit table per coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPolyJson {
    pub coeffs: Vec<Vec<Vec<u32>>>,
}

/// The monic q-polynomial of q-degree `dim V` vanishing exactly on the
/// `F_q`-span of `v`.
pub fn annihilator(ext: &ExtField, v: &[ExtElement]) -> QPoly {
    let n = ext.degree();
    // coefficients beyond degree n - 1 never occur for independent inputs,
    // but the running product is kept without reduction
    let mut coeffs = vec![ext.one()];
    for &w in v {
        let val = eval_unreduced(ext, &coeffs, w);
        if val == ext.zero() {
            continue;
        }
        // (X^q - val^{q-1} X) ∘ A
        let c = ext.mul(ext.frobenius(val, 1), ext.inv(val).expect("nonzero"));
        let mut next = vec![ext.zero(); coeffs.len() + 1];
        for (i, &a) in coeffs.iter().enumerate() {
            next[i + 1] = ext.add(next[i + 1], ext.frobenius(a, 1));
            next[i] = ext.sub(next[i], ext.mul(c, a));
        }
        coeffs = next;
    }
    assert!(coeffs.len() <= n + 1);
    if coeffs.len() == n + 1 {
        // X^{q^n} = X on F_{q^n}
        let top = coeffs.pop().expect("nonempty");
        coeffs[0] = ext.add(coeffs[0], top);
    }
    QPoly::from_coeffs(n, coeffs).expect("length at most n")
}

fn eval_unreduced(ext: &ExtField, coeffs: &[ExtElement], x: ExtElement) -> ExtElement {
    let mut acc = ext.zero();
    let mut xi = x;
    for &c in coeffs {
        acc = ext.add(acc, ext.mul(c, xi));
        xi = ext.frobenius(xi, 1);
    }
    acc
}
