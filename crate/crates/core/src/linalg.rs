//! Dense exact linear algebra over any [`Field`]: row reduction, rank,
//! kernels, linear solves, determinants, Moore matrices and congruence
//! diagonalization of symmetric forms.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{BaseElement, ExtElement, ExtField, Field};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("alternating form in characteristic 2 has no diagonal congruent form")]
    Alternating,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

pub type MatrixFq = Matrix<BaseElement>;
pub type MatrixExt = Matrix<ExtElement>;

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

/// A particular solution of `A x = b` together with a basis of `ker A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet<E> {
    pub particular: Vec<E>,
    pub kernel: Vec<Vec<E>>,
}

impl<E: Copy> Matrix<E> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!("{} entries for {rows}x{cols}", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<E>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<E>]) -> Result<Self, LinalgError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(LinalgError::Dimension("column length mismatch".into()));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> E {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    pub fn map<T: Copy>(&self, f: impl Fn(E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| f(x)).collect() }
    }
}

impl<E: Copy + Eq> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { field.one() } else { field.zero() })
    }

    pub fn random<F: Field<Elem = E>, R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        Self::from_fn(rows, cols, |_, _| field.random(rng))
    }

    /// A uniformly random `rows x cols` matrix of rank `rows` (needs
    /// `rows <= cols`), by rejection; `None` after `attempts` misses.
    pub fn random_full_row_rank<F: Field<Elem = E>, R: Rng + ?Sized>(
        field: &F,
        rows: usize,
        cols: usize,
        attempts: usize,
        rng: &mut R,
    ) -> Option<Self> {
        assert!(rows <= cols, "a {rows}x{cols} matrix cannot have rank {rows}");
        (0..attempts).map(|_| Self::random(field, rows, cols, rng)).find(|m| m.rank(field) == rows)
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|&x| field.is_zero(x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.add(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| field.sub(a, b)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: E) -> Self {
        self.map(|x| field.mul(c, x))
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.get(r, c), field.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(field.zero(), |acc, (&a, &b)| field.add(acc, field.mul(a, b))))
            .collect()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, field: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = field.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = field.mul(inv, m.get(row, c));
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if field.is_zero(factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = field.sub(m.get(r, c), field.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank<F: Field<Elem = E>>(&self, field: &F) -> usize {
        // forward elimination only
        let mut m = self.clone();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = field.inv(m.get(row, col)).expect("pivot is nonzero");
            for r in row + 1..m.rows {
                let factor = field.mul(m.get(r, col), inv);
                if field.is_zero(factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = field.sub(m.get(r, c), field.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            row += 1;
        }
        row
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); self.cols];
                v[fc] = field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Solves `A x = b`, returning a particular solution and a kernel basis.
    pub fn solve<F: Field<Elem = E>>(&self, field: &F, b: &[E]) -> Result<SolutionSet<E>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!("rhs has length {}, expected {}", b.len(), self.rows)));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| if c < self.cols { self.get(r, c) } else { b[r] });
        let (red, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut particular = vec![field.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            particular[pc] = red.get(i, self.cols);
        }
        Ok(SolutionSet { particular, kernel: self.kernel(field) })
    }

    pub fn determinant<F: Field<Elem = E>>(&self, field: &F) -> Result<E, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let mut det = field.one();
        for col in 0..m.cols {
            let Some(pr) = (col..m.rows).find(|&r| !field.is_zero(m.get(r, col))) else {
                return Ok(field.zero());
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = field.neg(det);
            }
            let pivot = m.get(col, col);
            det = field.mul(det, pivot);
            let inv = field.inv(pivot).expect("pivot is nonzero");
            for r in col + 1..m.rows {
                let factor = field.mul(m.get(r, col), inv);
                if field.is_zero(factor) {
                    continue;
                }
                for c in col..m.cols {
                    let v = field.sub(m.get(r, c), field.mul(factor, m.get(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Result<Self, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c)
            } else if c - n == r {
                field.one()
            } else {
                field.zero()
            }
        });
        let (red, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(Self::from_fn(n, n, |r, c| red.get(r, n + c)))
    }
}

/// Moore matrix of `a`: entry `(i, j)` is `a_j^{q^i}` for `i = 0..n-1`.
pub fn moore_matrix(field: &ExtField, a: &[ExtElement]) -> MatrixExt {
    Matrix::from_fn(field.degree(), a.len(), |i, j| field.frobenius(a[j], i))
}

/// `(T, D)` from [`congruence_diagonalize`].
pub type Congruence<E> = (Matrix<E>, Matrix<E>);

/// Congruence diagonalization of a symmetric matrix: returns `(T, D)` with
/// `T` invertible, `D` diagonal and `T^T G T = D`.
///
/// Pivots on anisotropic vectors. In odd characteristic an all-isotropic
/// block with `<v, w> != 0` yields the anisotropic vector `v + w`. In
/// characteristic 2 an alternating block cannot be split on its own; a
/// hyperbolic pair `x, y` there is merged with an earlier anisotropic vector
/// `e` into `e + x', e + y, e + x' + y` (with `<x', y> = <e, e>`), which are
/// pairwise orthogonal and all of norm `<e, e>`.
pub fn congruence_diagonalize<F: Field>(field: &F, g: &Matrix<F::Elem>) -> Result<Congruence<F::Elem>, LinalgError> {
    if !g.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let n = g.rows();
    let pair = |v: &[F::Elem], w: &[F::Elem]| -> F::Elem {
        let gw = g.mul_vec(field, w);
        v.iter().zip(&gw).fold(field.zero(), |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
    };
    let axpy = |y: &[F::Elem], a: F::Elem, x: &[F::Elem]| -> Vec<F::Elem> {
        y.iter().zip(x).map(|(&yi, &xi)| field.add(yi, field.mul(a, xi))).collect()
    };
    let char2 = field.characteristic() == 2;

    let mut done: Vec<(Vec<F::Elem>, F::Elem)> = Vec::with_capacity(n);
    let mut rest: Vec<Vec<F::Elem>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect();

    while !rest.is_empty() {
        if let Some(pos) = rest.iter().position(|v| !field.is_zero(pair(v, v))) {
            let v = rest.remove(pos);
            let d = pair(&v, &v);
            let d_inv = field.inv(d).expect("anisotropic");
            for w in rest.iter_mut() {
                let c = field.neg(field.mul(pair(w, &v), d_inv));
                *w = axpy(w, c, &v);
            }
            done.push((v, d));
            continue;
        }
        let hyperbolic = (0..rest.len())
            .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !field.is_zero(pair(&rest[i], &rest[j])));
        let Some((i, j)) = hyperbolic else {
            // remaining vectors span the radical
            done.extend(rest.drain(..).map(|v| (v, field.zero())));
            break;
        };
        if !char2 {
            let w = rest[j].clone();
            rest[i] = axpy(&rest[i], field.one(), &w);
            continue;
        }
        let Some(e_pos) = done.iter().position(|(_, d)| !field.is_zero(*d)) else {
            return Err(LinalgError::Alternating);
        };
        let y = rest.swap_remove(j);
        let x = rest.swap_remove(i);
        let c = pair(&x, &y);
        let c_inv = field.inv(c).expect("nonzero pairing");
        for w in rest.iter_mut() {
            let wy = pair(w, &y);
            let wx = pair(w, &x);
            let t = axpy(w, field.neg(field.mul(wy, c_inv)), &x);
            *w = axpy(&t, field.neg(field.mul(wx, c_inv)), &y);
        }
        let (e, d) = done.swap_remove(e_pos);
        let x_scaled: Vec<_> = x.iter().map(|&xi| field.mul(field.mul(d, c_inv), xi)).collect();
        let e_x = axpy(&e, field.one(), &x_scaled);
        let e_y = axpy(&e, field.one(), &y);
        let e_xy = axpy(&e_x, field.one(), &y);
        done.extend([(e_x, d), (e_y, d), (e_xy, d)]);
    }

    let columns: Vec<Vec<F::Elem>> = done.iter().map(|(v, _)| v.clone()).collect();
    let t = Matrix::from_columns(n, &columns)?;
    let d = Matrix::from_fn(n, n, |r, c| if r == c { done[r].1 } else { field.zero() });
    debug_assert_eq!(t.transpose().mul(field, g).mul(field, &t), d);
    Ok((t, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{BaseField, FieldParams};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bases() -> Vec<BaseField> {
        vec![
            BaseField::prime(2).unwrap(),
            BaseField::prime(3).unwrap(),
            BaseField::prime(5).unwrap(),
            BaseField::new(2, &[1, 1, 1]).unwrap(),
            BaseField::new(3, &[1, 0, 1]).unwrap(),
        ]
    }

    #[test]
    fn rank_basics() {
        let f = BaseField::prime(3).unwrap();
        assert_eq!(MatrixFq::zeros(&f, 4, 5).rank(&f), 0);
        assert_eq!(MatrixFq::identity(&f, 5).rank(&f), 5);
        let v = [BaseElement(1), BaseElement(2), BaseElement(0)];
        let w = [BaseElement(2), BaseElement(1), BaseElement(1), BaseElement(1)];
        let outer = MatrixFq::from_fn(3, 4, |r, c| f.mul(v[r], w[c]));
        assert_eq!(outer.rank(&f), 1);
    }

    #[test]
    fn kernel_identity_and_zero() {
        let f = BaseField::prime(2).unwrap();
        assert!(MatrixFq::identity(&f, 4).kernel(&f).is_empty());
        assert_eq!(MatrixFq::zeros(&f, 3, 4).kernel(&f).len(), 4);
    }

    #[test]
    fn solve_cases() {
        let f = BaseField::prime(5).unwrap();
        let b: Vec<_> = (0..4).map(|i| BaseElement(i + 1)).collect();
        let sol = MatrixFq::identity(&f, 4).solve(&f, &b).unwrap();
        assert_eq!(sol.particular, b);
        assert!(sol.kernel.is_empty());
        assert_eq!(MatrixFq::zeros(&f, 4, 4).solve(&f, &b), Err(LinalgError::Inconsistent));
        assert!(matches!(MatrixFq::zeros(&f, 4, 4).solve(&f, &b[..3]), Err(LinalgError::Dimension(_))));
    }

    #[test]
    fn planted_solutions_and_rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in bases() {
            for _ in 0..500 {
                let rows = rng.gen_range(1..7);
                let cols = rng.gen_range(1..7);
                let a = MatrixFq::random(&f, rows, cols, &mut rng);
                let kernel = a.kernel(&f);
                assert_eq!(a.rank(&f) + kernel.len(), cols);
                for k in &kernel {
                    assert!(a.mul_vec(&f, k).iter().all(|&x| x == f.zero()));
                }
                let x: Vec<_> = (0..cols).map(|_| f.random(&mut rng)).collect();
                let b = a.mul_vec(&f, &x);
                let sol = a.solve(&f, &b).unwrap();
                assert_eq!(a.mul_vec(&f, &sol.particular), b);
                // x - particular lies in the kernel span
                let diff: Vec<_> = x.iter().zip(&sol.particular).map(|(&u, &v)| f.sub(u, v)).collect();
                let mut cols_k = kernel.clone();
                cols_k.push(diff);
                let km = MatrixFq::from_columns(cols, &cols_k).unwrap();
                assert_eq!(km.rank(&f), kernel.len());
            }
        }
    }

    #[test]
    fn rank_invariant_under_invertible_multiplication() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in bases() {
            for _ in 0..100 {
                let n = rng.gen_range(1..6);
                let m = MatrixFq::random(&f, n, n, &mut rng);
                let p = random_invertible(&f, n, &mut rng);
                let q = random_invertible(&f, n, &mut rng);
                assert_eq!(p.mul(&f, &m).mul(&f, &q).rank(&f), m.rank(&f));
            }
        }
    }

    fn random_invertible(f: &BaseField, n: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
        loop {
            let m = MatrixFq::random(f, n, n, rng);
            if m.rank(f) == n {
                return m;
            }
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in bases() {
            for _ in 0..100 {
                let n = rng.gen_range(1..6);
                let a = MatrixFq::random(&f, n, n, &mut rng);
                let b = MatrixFq::random(&f, n, n, &mut rng);
                let det_ab = a.mul(&f, &b).determinant(&f).unwrap();
                assert_eq!(det_ab, f.mul(a.determinant(&f).unwrap(), b.determinant(&f).unwrap()));
                assert_eq!(a.determinant(&f).unwrap() != f.zero(), a.rank(&f) == n);
                match a.inverse(&f) {
                    Ok(inv) => assert_eq!(a.mul(&f, &inv), MatrixFq::identity(&f, n)),
                    Err(e) => {
                        assert_eq!(e, LinalgError::Singular);
                        assert!(a.rank(&f) < n);
                    }
                }
            }
        }
    }

    #[test]
    fn moore_determinant_detects_independence_exhaustively() {
        for n in 1..=3 {
            let ext = ExtField::new(&FieldParams::generate(2, 1, n).unwrap()).unwrap();
            let q = ext.order();
            let total = q.pow(n as u32);
            for idx in 0..total {
                let a: Vec<ExtElement> = (0..n).map(|j| ext.element((idx / q.pow(j as u32)) % q)).collect();
                let coords = Matrix::from_columns(n, &a.iter().map(|&x| ext.coeffs(x)).collect::<Vec<_>>()).unwrap();
                let independent = coords.rank(ext.base()) == n;
                let det = moore_matrix(&ext, &a).determinant(&ext).unwrap();
                assert_eq!(det != ext.zero(), independent, "a = {a:?}");
            }
        }
    }

    #[test]
    fn moore_of_unit_vector() {
        let ext = ExtField::generate(3, 1, 3).unwrap();
        let m = moore_matrix(&ext, &[ext.one(), ext.zero(), ext.zero()]);
        for i in 0..3 {
            assert_eq!(m.get(i, 0), ext.one());
            assert_eq!(m.get(i, 1), ext.zero());
            assert_eq!(m.get(i, 2), ext.zero());
        }
    }

    #[test]
    fn diagonalize_trivial_cases() {
        let f = BaseField::prime(3).unwrap();
        let id = MatrixFq::identity(&f, 4);
        let (t, d) = congruence_diagonalize(&f, &id).unwrap();
        assert_eq!(t, id);
        assert_eq!(d, id);
        let diag = MatrixFq::from_fn(3, 3, |r, c| if r == c { BaseElement(r as u32 % 3) } else { BaseElement(0) });
        let (t, d) = congruence_diagonalize(&f, &diag).unwrap();
        assert_eq!(t.transpose().mul(&f, &diag).mul(&f, &t), d);
        let not_sym = MatrixFq::from_fn(2, 2, |r, c| BaseElement((r == 0 && c == 1) as u32));
        assert_eq!(congruence_diagonalize(&f, &not_sym).unwrap_err(), LinalgError::NotSymmetric);
    }

    #[test]
    fn diagonalize_diagonal_input_keeps_identity_transform() {
        let f = BaseField::prime(5).unwrap();
        let diag = MatrixFq::from_fn(3, 3, |r, c| if r == c { BaseElement(r as u32 + 1) } else { BaseElement(0) });
        let (t, d) = congruence_diagonalize(&f, &diag).unwrap();
        assert_eq!(t, MatrixFq::identity(&f, 3));
        assert_eq!(d, diag);
    }

    #[test]
    fn diagonalize_random_gram_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for f in bases() {
            for _ in 0..200 {
                let n = rng.gen_range(1..7);
                let s = random_invertible(&f, n, &mut rng);
                let g = s.transpose().mul(&f, &s);
                let (t, d) = congruence_diagonalize(&f, &g).unwrap();
                assert_eq!(t.transpose().mul(&f, &g).mul(&f, &t), d);
                assert_eq!(t.rank(&f), n);
                let diag_prod = (0..n).fold(f.one(), |acc, i| f.mul(acc, d.get(i, i)));
                assert!((0..n).all(|i| d.get(i, i) != f.zero()));
                // det D = det(T)^2 det G
                let det_t = t.determinant(&f).unwrap();
                assert_eq!(diag_prod, f.mul(f.mul(det_t, det_t), g.determinant(&f).unwrap()));
            }
        }
    }

    #[test]
    fn diagonalize_char2_needs_hyperbolic_merge() {
        let f = BaseField::prime(2).unwrap();
        // diag(1) ⊕ [[0,1],[1,0]]
        let g = MatrixFq::from_rows(&[
            vec![BaseElement(1), BaseElement(0), BaseElement(0)],
            vec![BaseElement(0), BaseElement(0), BaseElement(1)],
            vec![BaseElement(0), BaseElement(1), BaseElement(0)],
        ])
        .unwrap();
        let (t, d) = congruence_diagonalize(&f, &g).unwrap();
        assert_eq!(d, MatrixFq::identity(&f, 3));
        assert_eq!(t.rank(&f), 3);
        let hyperbolic =
            MatrixFq::from_rows(&[vec![BaseElement(0), BaseElement(1)], vec![BaseElement(1), BaseElement(0)]]).unwrap();
        assert_eq!(congruence_diagonalize(&f, &hyperbolic).unwrap_err(), LinalgError::Alternating);
    }

    #[test]
    fn diagonalize_random_symmetric_with_degenerate_part() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for f in bases() {
            for _ in 0..200 {
                let n = rng.gen_range(1..6);
                let m = MatrixFq::random(&f, n, n, &mut rng);
                let g = m.add(&f, &m.transpose());
                match congruence_diagonalize(&f, &g) {
                    Ok((t, d)) => {
                        assert_eq!(t.transpose().mul(&f, &g).mul(&f, &t), d);
                        assert_eq!(t.rank(&f), n);
                    }
                    // M + M^T is alternating in characteristic 2
                    Err(e) => {
                        assert_eq!(e, LinalgError::Alternating);
                        assert_eq!(f.characteristic(), 2);
                    }
                }
            }
        }
    }
}
