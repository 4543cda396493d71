//! The twisted trace form `<x, y>_u = Tr(u x y)` on `F_{q^n}`, choice of the
//! twist `u`, orthonormal bases, and coordinate maps between `F_{q^n}^n`
//! and `n x n` matrices over `F_q`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{BaseElement, ExtElement, ExtField, Field, FieldParams, GfError};
use crate::linalg::{congruence_diagonalize, moore_matrix, LinalgError, Matrix, MatrixExt, MatrixFq};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BilinearError {
    #[error("basis has {got} elements, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("elements are not linearly independent over F_q")]
    Dependent,
    #[error("twist u must be nonzero")]
    ZeroTwist,
    #[error("discriminant of <.,.>_u is not a square in F_q (norm of u = {norm:?}); no orthonormal basis exists")]
    NonSquareDiscriminant { norm: BaseElement },
    #[error("basis is not orthonormal for <.,.>_u")]
    NotOrthonormal,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which case of the orthonormal-basis existence result applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistBranch {
    /// `q` even, `u = 1`.
    EvenQ,
    /// `q` and `n` odd, `u = 1`.
    OddQOddN,
    /// `q` odd, `n` even, `N(u)` a non-square in `F_q`.
    NonSquareNorm,
    /// A twist supplied by the caller.
    Custom,
}

impl TwistBranch {
    pub fn describe(self) -> &'static str {
        match self {
            TwistBranch::EvenQ => "q even: trace form (u = 1) has an orthonormal basis",
            TwistBranch::OddQOddN => "q and n odd: trace form (u = 1) has an orthonormal basis",
            TwistBranch::NonSquareNorm => "q odd, n even: twist u with non-square norm",
            TwistBranch::Custom => "caller-supplied twist",
        }
    }
}

/// `<x, y>_u = Tr(u x y)`.
pub fn pairing(ext: &ExtField, x: ExtElement, y: ExtElement, u: ExtElement) -> BaseElement {
    ext.trace(ext.mul(u, ext.mul(x, y)))
}

/// Gram matrix `G[i][j] = <a_i, a_j>_u`.
pub fn gram_matrix(ext: &ExtField, elems: &[ExtElement], u: ExtElement) -> MatrixFq {
    Matrix::from_fn(elems.len(), elems.len(), |i, j| pairing(ext, elems[i], elems[j], u))
}

/// Picks `u = 1` when `q` is even or `n` is odd, and otherwise the first
/// element (in index order) whose norm is a non-square in `F_q`.
pub fn select_twist(ext: &ExtField) -> (ExtElement, TwistBranch) {
    if ext.characteristic() == 2 {
        return (ext.one(), TwistBranch::EvenQ);
    }
    if ext.degree() % 2 == 1 {
        return (ext.one(), TwistBranch::OddQOddN);
    }
    let u = (1..ext.order())
        .map(|i| ext.element(i))
        .find(|&u| !ext.base().is_square(ext.norm(u)))
        .expect("half of the nonzero elements have non-square norm");
    (u, TwistBranch::NonSquareNorm)
}

/// An `F_q`-basis of `F_{q^n}` with cached coordinate and interpolation maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis {
    elems: Vec<ExtElement>,
    /// maps power-basis coefficients to coordinates in `elems`
    to_coords: MatrixFq,
    moore_inv: MatrixExt,
}

impl Basis {
    pub fn new(ext: &ExtField, elems: Vec<ExtElement>) -> Result<Self, BilinearError> {
        let n = ext.degree();
        if elems.len() != n {
            return Err(BilinearError::WrongLength { expected: n, got: elems.len() });
        }
        let cols: Vec<Vec<BaseElement>> = elems.iter().map(|&e| ext.coeffs(e)).collect();
        let to_coords = Matrix::from_columns(n, &cols)?.inverse(ext.base()).map_err(|e| match e {
            LinalgError::Singular => BilinearError::Dependent,
            other => other.into(),
        })?;
        let moore_inv = moore_matrix(ext, &elems).inverse(ext)?;
        Ok(Self { elems, to_coords, moore_inv })
    }

    /// `(1, x, ..., x^{n-1})`.
    pub fn power(ext: &ExtField) -> Self {
        Self::new(ext, ext.power_basis()).expect("power basis is a basis")
    }

    pub fn elements(&self) -> &[ExtElement] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Coordinates of `y` in this basis.
    pub fn coordinates(&self, ext: &ExtField, y: ExtElement) -> Vec<BaseElement> {
        self.to_coords.mul_vec(ext.base(), &ext.coeffs(y))
    }

    /// `sum c_i b_i`.
    pub fn combine(&self, ext: &ExtField, coords: &[BaseElement]) -> ExtElement {
        coords.iter().zip(&self.elems).fold(ext.zero(), |acc, (&c, &b)| ext.add(acc, ext.scale(c, b)))
    }

    /// Inverse of the Moore matrix `(b_j^{q^i})`.
    pub fn moore_inverse(&self) -> &MatrixExt {
        &self.moore_inv
    }
}

/// The matrix whose column `i` holds the coordinates of `x_i` in `basis`.
pub fn vector_to_matrix(ext: &ExtField, x: &[ExtElement], basis: &Basis) -> MatrixFq {
    let cols: Vec<Vec<BaseElement>> = x.iter().map(|&xi| basis.coordinates(ext, xi)).collect();
    Matrix::from_columns(ext.degree(), &cols).expect("coordinate vectors have length n")
}

/// Inverse of [`vector_to_matrix`].
pub fn matrix_to_vector(ext: &ExtField, m: &MatrixFq, basis: &Basis) -> Vec<ExtElement> {
    (0..m.cols()).map(|c| basis.combine(ext, &m.column(c))).collect()
}

/// A twist `u` together with a basis that is orthonormal for `<., .>_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearSetup {
    u: ExtElement,
    basis: Basis,
    branch: TwistBranch,
}

impl BilinearSetup {
    /// Twist from [`select_twist`] and a basis from [`orthonormal_basis`].
    pub fn new(ext: &ExtField) -> Self {
        let (u, branch) = select_twist(ext);
        let mut setup = orthonormal_basis(ext, u).expect("selected twist has square discriminant");
        setup.branch = branch;
        setup
    }

    /// Rebuilds a setup from stored parts, checking orthonormality.
    pub fn from_parts(
        ext: &ExtField,
        u: ExtElement,
        basis: Vec<ExtElement>,
        branch: TwistBranch,
    ) -> Result<Self, BilinearError> {
        if u == ext.zero() {
            return Err(BilinearError::ZeroTwist);
        }
        let basis = Basis::new(ext, basis)?;
        if gram_matrix(ext, basis.elements(), u) != MatrixFq::identity(ext.base(), ext.degree()) {
            return Err(BilinearError::NotOrthonormal);
        }
        Ok(Self { u, basis, branch })
    }

    pub fn u(&self) -> ExtElement {
        self.u
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn branch(&self) -> TwistBranch {
        self.branch
    }

    pub fn gram(&self, ext: &ExtField) -> MatrixFq {
        gram_matrix(ext, self.basis.elements(), self.u)
    }

    pub fn to_file(&self, ext: &ExtField) -> SetupFile {
        SetupFile {
            field: ext.params().clone(),
            u: ext.to_digits(self.u),
            basis: self.basis.elements().iter().map(|&b| ext.to_digits(b)).collect(),
            branch: self.branch,
        }
    }
}

/// Builds a basis with identity Gram matrix for `<., .>_u`.
///
/// Starts from the power basis, diagonalizes its Gram matrix by congruence
/// and rescales. In odd characteristic, diagonal entries that are
/// non-squares are first normalized to a fixed non-square `v` and then
/// rotated in pairs: with `a^2 + b^2 = 1/v`, the vectors `a e + b f` and
/// `-b e + a f` are orthonormal. An odd number of non-squares means the
/// discriminant is a non-square, which is reported as an error.
pub fn orthonormal_basis(ext: &ExtField, u: ExtElement) -> Result<BilinearSetup, BilinearError> {
    if u == ext.zero() {
        return Err(BilinearError::ZeroTwist);
    }
    let base = ext.base();
    let n = ext.degree();
    let gram = gram_matrix(ext, &ext.power_basis(), u);
    let (t, d) = congruence_diagonalize(base, &gram)?;
    let mut vecs: Vec<Vec<BaseElement>> = (0..n).map(|j| t.column(j)).collect();
    let scale = |v: &mut Vec<BaseElement>, c: BaseElement| v.iter_mut().for_each(|x| *x = base.mul(c, *x));

    let non_square = (base.characteristic() != 2)
        .then(|| base.elements().find(|&c| !base.is_square(c)).expect("odd q has non-squares"));
    let mut pending = Vec::new();
    for (j, v) in vecs.iter_mut().enumerate() {
        let dj = d.get(j, j);
        debug_assert!(dj != base.zero(), "trace form is non-degenerate");
        if let Some(r) = base.sqrt(dj) {
            scale(v, base.inv(r)?);
        } else {
            let nu = non_square.expect("only odd q has non-squares");
            let r = base.sqrt(base.div(dj, nu)?).expect("ratio of non-squares is a square");
            scale(v, base.inv(r)?);
            pending.push(j);
        }
    }
    if pending.len() % 2 == 1 {
        return Err(BilinearError::NonSquareDiscriminant { norm: ext.norm(u) });
    }
    if let Some(nu) = non_square {
        let (a, b) = sum_of_two_squares(base, base.inv(nu)?);
        for pair in pending.chunks(2) {
            let (e, f) = (vecs[pair[0]].clone(), vecs[pair[1]].clone());
            vecs[pair[0]] = e.iter().zip(&f).map(|(&x, &y)| base.add(base.mul(a, x), base.mul(b, y))).collect();
            vecs[pair[1]] = e.iter().zip(&f).map(|(&x, &y)| base.sub(base.mul(a, y), base.mul(b, x))).collect();
        }
    }
    let elems: Vec<ExtElement> = vecs.iter().map(|v| ext.from_coeffs(v)).collect();
    let basis = Basis::new(ext, elems)?;
    if gram_matrix(ext, basis.elements(), u) != MatrixFq::identity(base, n) {
        return Err(BilinearError::NotOrthonormal);
    }
    Ok(BilinearSetup { u, basis, branch: TwistBranch::Custom })
}

/// Some `(a, b)` with `a^2 + b^2 = target`; exists for every element of `F_q`.
fn sum_of_two_squares(base: &crate::gf::BaseField, target: BaseElement) -> (BaseElement, BaseElement) {
    base.elements()
        .find_map(|a| base.sqrt(base.sub(target, base.mul(a, a))).map(|b| (a, b)))
        .expect("every element of a finite field is a sum of two squares")
}

/// Serialized form of a setup; element digits as in [`ExtField::to_digits`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetupFile {
    pub field: FieldParams,
    pub u: Vec<Vec<u32>>,
    pub basis: Vec<Vec<Vec<u32>>>,
    pub branch: TwistBranch,
}

impl SetupFile {
    pub fn load(&self) -> Result<(ExtField, BilinearSetup), BilinearError> {
        let ext = ExtField::new(&self.field)?;
        let u = ext.from_digits(&self.u)?;
        let basis = self.basis.iter().map(|b| ext.from_digits(b)).collect::<Result<Vec<_>, _>>()?;
        let setup = BilinearSetup::from_parts(&ext, u, basis, self.branch)?;
        Ok((ext, setup))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ext(p: u32, e: usize, n: usize) -> ExtField {
        ExtField::generate(p, e, n).unwrap()
    }

    #[test]
    fn pairing_basics() {
        let f = ext(2, 1, 2);
        let omega = f.monomial(1);
        assert_eq!(pairing(&f, omega, omega, f.one()), BaseElement::ONE);
        let g = ext(3, 1, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let (x, y, u) = (g.random(&mut rng), g.random(&mut rng), g.random(&mut rng));
            assert_eq!(pairing(&g, x, g.zero(), u), BaseElement::ZERO);
            assert_eq!(pairing(&g, x, y, u), pairing(&g, y, x, u));
        }
    }

    #[test]
    fn twist_selection_branches() {
        assert_eq!(select_twist(&ext(2, 1, 4)), (ExtElement::ONE, TwistBranch::EvenQ));
        assert_eq!(select_twist(&ext(2, 2, 2)).1, TwistBranch::EvenQ);
        assert_eq!(select_twist(&ext(3, 1, 3)), (ExtElement::ONE, TwistBranch::OddQOddN));
        // q = 3, n = 2: first non-square of F_9 in index order
        let f9 = ext(3, 1, 2);
        let squares: std::collections::HashSet<_> = f9.elements().map(|a| f9.mul(a, a)).collect();
        let expected = f9.elements().find(|a| !squares.contains(a)).unwrap();
        assert_eq!(select_twist(&f9), (expected, TwistBranch::NonSquareNorm));
    }

    #[test]
    fn orthonormal_for_u_one() {
        for (p, e, n) in [(2, 1, 2), (2, 1, 3), (3, 1, 3), (2, 2, 2), (2, 1, 5), (5, 1, 3), (2, 1, 8)] {
            let f = ext(p, e, n);
            let setup = orthonormal_basis(&f, f.one()).unwrap();
            assert_eq!(setup.gram(&f), MatrixFq::identity(f.base(), n), "(p,e,n) = {:?}", (p, e, n));
            for (i, &bi) in setup.basis().elements().iter().enumerate() {
                for (j, &bj) in setup.basis().elements().iter().enumerate() {
                    let expected = if i == j { BaseElement::ONE } else { BaseElement::ZERO };
                    assert_eq!(pairing(&f, bi, bj, f.one()), expected);
                }
            }
        }
    }

    #[test]
    fn nonsquare_twist_succeeds_and_trace_form_fails_for_f9() {
        let f = ext(3, 1, 2);
        let (u, _) = select_twist(&f);
        assert!(orthonormal_basis(&f, u).is_ok());
        assert!(matches!(orthonormal_basis(&f, f.one()), Err(BilinearError::NonSquareDiscriminant { .. })));
        assert_eq!(orthonormal_basis(&f, f.zero()).unwrap_err(), BilinearError::ZeroTwist);
    }

    #[test]
    fn degree_one_basis() {
        for p in [2, 3, 5, 7] {
            let f = ext(p, 1, 1);
            let setup = BilinearSetup::new(&f);
            let c = setup.basis().elements()[0];
            assert_eq!(f.mul(f.mul(c, c), setup.u()), f.one());
        }
    }

    #[test]
    fn vector_matrix_bridge() {
        let f = ext(3, 1, 4);
        let setup = BilinearSetup::new(&f);
        let b = setup.basis();
        let n = 4;
        assert_eq!(vector_to_matrix(&f, b.elements(), b), MatrixFq::identity(f.base(), n));
        assert!(vector_to_matrix(&f, &vec![f.zero(); n], b).is_zero(f.base()));
        let other = Basis::power(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            // vectors spanning a random-dimensional subspace
            let dim = rng.gen_range(0..=n);
            let gens: Vec<ExtElement> = (0..dim).map(|_| f.random(&mut rng)).collect();
            let x: Vec<ExtElement> = (0..n)
                .map(|_| gens.iter().fold(f.zero(), |acc, &g| f.add(acc, f.scale(f.base().random(&mut rng), g))))
                .collect();
            let m = vector_to_matrix(&f, &x, b);
            assert_eq!(m.rank(f.base()), vector_to_matrix(&f, &x, &other).rank(f.base()));
            assert_eq!(matrix_to_vector(&f, &m, b), x);
        }
    }

    #[test]
    fn trace_form_is_non_degenerate() {
        for (p, n) in [(2, 3), (3, 2), (3, 4), (2, 6)] {
            let f = ext(p, 1, n);
            let (u, _) = select_twist(&f);
            for x in f.elements().skip(1) {
                assert!(f.elements().any(|y| pairing(&f, x, y, u) != BaseElement::ZERO));
            }
        }
    }

    #[test]
    fn setup_file_round_trip() {
        let f = ext(3, 1, 2);
        let setup = BilinearSetup::new(&f);
        let file = setup.to_file(&f);
        let json = serde_json::to_string(&file).unwrap();
        let back: SetupFile = serde_json::from_str(&json).unwrap();
        let (f2, s2) = back.load().unwrap();
        assert_eq!(f2.params(), f.params());
        assert_eq!(s2, setup);
        let mut broken = file.clone();
        broken.u = f.to_digits(f.one());
        assert_eq!(broken.load().unwrap_err(), BilinearError::NotOrthonormal);
    }
}
