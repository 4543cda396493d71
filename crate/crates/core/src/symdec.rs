//! Decoders for symmetric errors.
//!
//! The low-rate decoder works for any matrix code containing no nonzero
//! symmetric matrix: since `Φ(M) = M - Mᵀ` kills every symmetric error,
//! `Φ(Y) = Φ(C)` determines `C`. It corrects symmetric errors of any rank.
//!
//! The high-rate decoder handles `C = Gab_k ∘ X^q` with `k > n/2` and
//! self-adjoint errors of rank at most `n - k`. A preimage `C'` of `Φ(Y)`
//! leaves `Y - C' = S + E` with `S` self-adjoint in `C`, hence in
//! `Gab_{2k-n+1} ∘ X^{q^{n-k}}`, which is then decoded with a Gabidulin
//! decoder restricted to self-adjoint errors.

use rand::Rng;
use thiserror::Error;

use crate::bilinear::{Basis, BilinearSetup};
use crate::gabidulin::{
    wb_decode_with, DecodeReport, DecodeStatus, Decoding, Diagnostics, GabCode, GabError, WbOptions,
};
use crate::gf::{BaseElement, BaseField, ExtElement, ExtField, Field};
use crate::linalg::{LinalgError, Matrix, MatrixFq};
use crate::qpoly::{QPoly, QPolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("code contains a nonzero symmetric matrix")]
    NotSymFree,
    #[error("generators are not linearly independent")]
    DependentGenerators,
    #[error("not a valid instance: {0}")]
    InvalidInstance(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("expected {expected}x{expected} matrices")]
    Dimension { expected: usize },
    #[error(transparent)]
    Gabidulin(#[from] GabError),
    #[error(transparent)]
    QPoly(#[from] QPolyError),
}

/// `M - Mᵀ`.
pub fn phi_matrix(base: &BaseField, m: &MatrixFq) -> MatrixFq {
    m.sub(base, &m.transpose())
}

/// `P - P^⊤`; vanishes exactly on self-adjoint q-polynomials.
pub fn phi_qpoly(ext: &ExtField, p: &QPoly, u: ExtElement) -> Result<QPoly, QPolyError> {
    Ok(p.sub(ext, &p.adjoint(ext, u)?))
}

/// An `F_q`-linear space of `n x n` matrices given by independent generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixCode {
    n: usize,
    generators: Vec<MatrixFq>,
}

impl MatrixCode {
    pub fn new(base: &BaseField, n: usize, generators: Vec<MatrixFq>) -> Result<Self, SymError> {
        if generators.iter().any(|g| g.rows() != n || g.cols() != n) {
            return Err(SymError::Dimension { expected: n });
        }
        let code = Self { n, generators };
        if code.flat_generators().rank(base) != code.dim() {
            return Err(SymError::DependentGenerators);
        }
        Ok(code)
    }

    /// Matrix form of `code` in `basis`, with generators `β_j X^{q^i}` for
    /// the power basis `β` and each exponent `i` in the code's support.
    pub fn from_gabidulin(ext: &ExtField, basis: &Basis, code: &GabCode) -> Self {
        let n = ext.degree();
        let generators = (code.shift()..code.shift() + code.k())
            .flat_map(|i| ext.power_basis().into_iter().map(move |b| QPoly::monomial(n, i, b)))
            .map(|g| g.matrix_of(ext, basis))
            .collect();
        Self::new(ext.base(), n, generators).expect("Gabidulin generators are independent")
    }

    /// A random code of the given dimension with no nonzero symmetric
    /// element, by rejection. Needs `dim <= n(n-1)/2`.
    pub fn random_sym_free<R: Rng + ?Sized>(base: &BaseField, n: usize, dim: usize, rng: &mut R) -> Option<Self> {
        assert!(dim <= n * (n - 1) / 2, "dimension {dim} exceeds n(n-1)/2");
        (0..1000).find_map(|_| {
            let gens = (0..dim).map(|_| MatrixFq::random(base, n, n, rng)).collect();
            Self::new(base, n, gens).ok().filter(|c| check_sym_free(base, c))
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[MatrixFq] {
        &self.generators
    }

    pub fn combine(&self, base: &BaseField, coeffs: &[BaseElement]) -> MatrixFq {
        coeffs
            .iter()
            .zip(&self.generators)
            .fold(MatrixFq::zeros(base, self.n, self.n), |acc, (&c, g)| acc.add(base, &g.scale(base, c)))
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, base: &BaseField, rng: &mut R) -> MatrixFq {
        let coeffs: Vec<BaseElement> = (0..self.dim()).map(|_| base.random(rng)).collect();
        self.combine(base, &coeffs)
    }

    pub fn contains(&self, base: &BaseField, m: &MatrixFq) -> bool {
        let mut cols: Vec<Vec<BaseElement>> = self.generators.iter().map(|g| g.entries().to_vec()).collect();
        cols.push(m.entries().to_vec());
        Matrix::from_columns(self.n * self.n, &cols).expect("n^2 entries").rank(base) == self.dim()
    }

    fn flat_generators(&self) -> MatrixFq {
        let cols: Vec<Vec<BaseElement>> = self.generators.iter().map(|g| g.entries().to_vec()).collect();
        Matrix::from_columns(self.n * self.n, &cols).expect("n^2 entries")
    }

    /// Matrix of `Φ` restricted to the code, in generator coordinates.
    fn phi_system(&self, base: &BaseField) -> MatrixFq {
        let cols: Vec<Vec<BaseElement>> =
            self.generators.iter().map(|g| phi_matrix(base, g).entries().to_vec()).collect();
        Matrix::from_columns(self.n * self.n, &cols).expect("n^2 entries")
    }
}

/// True iff the only symmetric matrix in `code` is zero.
pub fn check_sym_free(base: &BaseField, code: &MatrixCode) -> bool {
    code.phi_system(base).rank(base) == code.dim()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowRateDecoding {
    pub codeword: MatrixFq,
    pub error: MatrixFq,
    pub coefficients: Vec<BaseElement>,
}

/// Corrects symmetric errors of arbitrary rank in a code with no nonzero
/// symmetric element.
#[derive(Debug, Clone)]
pub struct LowRateDecoder {
    code: MatrixCode,
    system: MatrixFq,
}

impl LowRateDecoder {
    pub fn new(base: &BaseField, code: MatrixCode) -> Result<Self, SymError> {
        let system = code.phi_system(base);
        if system.rank(base) != code.dim() {
            return Err(SymError::NotSymFree);
        }
        Ok(Self { code, system })
    }

    pub fn code(&self) -> &MatrixCode {
        &self.code
    }

    pub fn decode(&self, base: &BaseField, y: &MatrixFq) -> Result<LowRateDecoding, SymError> {
        let n = self.code.n;
        if y.rows() != n || y.cols() != n {
            return Err(SymError::Dimension { expected: n });
        }
        let target = phi_matrix(base, y);
        let sol = self.system.solve(base, target.entries()).map_err(|e| match e {
            LinalgError::Inconsistent => SymError::InvalidInstance("Φ(Y) has no preimage in the code".into()),
            other => SymError::InvalidInstance(other.to_string()),
        })?;
        debug_assert!(sol.kernel.is_empty());
        let codeword = self.code.combine(base, &sol.particular);
        let error = y.sub(base, &codeword);
        if !error.is_symmetric() {
            return Err(SymError::InvalidInstance("residual Y - C is not symmetric".into()));
        }
        Ok(LowRateDecoding { codeword, error, coefficients: sol.particular })
    }
}

/// Decoder for `Gab_k ∘ X^q`, `n/2 < k < n`, against self-adjoint errors of
/// rank at most `n - k`.
#[derive(Debug, Clone)]
pub struct HighRateDecoder {
    u: ExtElement,
    code: GabCode,
    reduced: GabCode,
    generators: Vec<QPoly>,
    system: MatrixFq,
    opts: WbOptions,
}

impl HighRateDecoder {
    pub fn new(ext: &ExtField, u: ExtElement, k: usize) -> Result<Self, SymError> {
        let n = ext.degree();
        if 2 * k <= n || k >= n {
            return Err(SymError::Unsupported(format!("high-rate decoding needs n/2 < k < n, got n = {n}, k = {k}")));
        }
        let code = GabCode::new(n, k, 1)?;
        let reduced = GabCode::new(n, 2 * k - n + 1, n - k)?;
        let generators: Vec<QPoly> =
            (1..=k).flat_map(|i| ext.power_basis().into_iter().map(move |b| QPoly::monomial(n, i, b))).collect();
        let cols = generators
            .iter()
            .map(|g| Ok(phi_qpoly(ext, g, u)?.to_base_vector(ext)))
            .collect::<Result<Vec<_>, QPolyError>>()?;
        let system = Matrix::from_columns(n * n, &cols).expect("n^2 coordinates");
        Ok(Self { u, code, reduced, generators, system, opts: WbOptions::default() })
    }

    pub fn with_options(mut self, opts: WbOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn code(&self) -> &GabCode {
        &self.code
    }

    /// `Gab_{2k-n+1} ∘ X^{q^{n-k}}`, which contains every self-adjoint codeword.
    pub fn reduced_code(&self) -> &GabCode {
        &self.reduced
    }

    pub fn radius(&self) -> usize {
        self.code.n() - self.code.k()
    }

    /// Self-adjoint elements of the code, as an `F_q`-basis.
    pub fn symmetric_part(&self, ext: &ExtField) -> Vec<QPoly> {
        self.system.kernel(ext.base()).iter().map(|c| self.combine(ext, c)).collect()
    }

    fn combine(&self, ext: &ExtField, coeffs: &[BaseElement]) -> QPoly {
        let n = ext.degree();
        coeffs.iter().zip(&self.generators).fold(QPoly::zero(n), |acc, (&c, g)| acc.add(ext, &g.scale_base(ext, c)))
    }

    /// Decodes `y`. A decoding is tried at radius `n - k - 1`, where the
    /// reduced code decodes uniquely; failing that, all solutions at radius
    /// `n - k` are enumerated and filtered by self-adjointness of the error.
    pub fn decode(&self, ext: &ExtField, y: &QPoly) -> Result<DecodeReport, SymError> {
        let base = ext.base();
        let u = self.u;
        let target = phi_qpoly(ext, y, u)?.to_base_vector(ext);
        let sol = match self.system.solve(base, &target) {
            Ok(sol) => sol,
            Err(_) => {
                let note = Some("Φ(Y) has no preimage in the code".to_string());
                return Ok(DecodeReport::fail(Diagnostics { note, ..Default::default() }));
            }
        };
        let preimage = self.combine(ext, &sol.particular);
        let residual = y.sub(ext, &preimage);
        let self_adjoint = |d: &Decoding| d.error.is_self_adjoint(ext, u).unwrap_or(false);

        let t = self.radius();
        let mut report = wb_decode_with(ext, &self.reduced, &residual, t - 1, self.opts, self_adjoint)?;
        if report.status != DecodeStatus::Ok {
            report = wb_decode_with(ext, &self.reduced, &residual, t, self.opts, self_adjoint)?;
        }
        let candidates: Vec<Decoding> = report
            .candidates
            .into_iter()
            .map(|d| Decoding { codeword: preimage.add(ext, &d.codeword), error: d.error })
            .filter(|d| self.code.contains(&d.codeword) && self_adjoint(d) && d.error.rank(ext) <= t)
            .collect();
        Ok(DecodeReport::from_candidates(candidates, report.diagnostics))
    }
}

/// Chooses the decoder for `Gab_k ∘ X^q` by rate: low-rate below `n/2`,
/// high-rate above, and at exactly `n/2` the low-rate decoder when the code
/// happens to contain no nonzero self-adjoint element.
#[derive(Debug, Clone)]
pub enum SymDecoder {
    Low { decoder: LowRateDecoder, basis: Basis },
    High(HighRateDecoder),
}

impl SymDecoder {
    pub fn new(ext: &ExtField, setup: &BilinearSetup, k: usize) -> Result<Self, SymError> {
        let n = ext.degree();
        if k == 0 || k >= n {
            return Err(SymError::Unsupported(format!("need 0 < k < n, got n = {n}, k = {k}")));
        }
        if 2 * k > n {
            return Ok(Self::High(HighRateDecoder::new(ext, setup.u(), k)?));
        }
        let code = MatrixCode::from_gabidulin(ext, setup.basis(), &GabCode::new(n, k, 1)?);
        match LowRateDecoder::new(ext.base(), code) {
            Ok(decoder) => Ok(Self::Low { decoder, basis: setup.basis().clone() }),
            Err(SymError::NotSymFree) if 2 * k == n => Err(SymError::Unsupported(format!(
                "k = n/2 = {k}: Gab_k ∘ X^q contains nonzero self-adjoint elements, so neither decoder applies"
            ))),
            Err(e) => Err(e),
        }
    }

    /// Decodes a received q-polynomial; invalid instances become `Fail`.
    pub fn decode(&self, ext: &ExtField, y: &QPoly) -> Result<DecodeReport, SymError> {
        match self {
            Self::High(dec) => dec.decode(ext, y),
            Self::Low { decoder, basis } => {
                let ym = y.matrix_of(ext, basis);
                Ok(match decoder.decode(ext.base(), &ym) {
                    Ok(d) => {
                        let codeword = QPoly::from_matrix(ext, basis, &d.codeword);
                        let error = y.sub(ext, &codeword);
                        let diagnostics =
                            Diagnostics { error_rank: Some(d.error.rank(ext.base())), ..Default::default() };
                        DecodeReport::from_candidates(vec![Decoding { codeword, error }], diagnostics)
                    }
                    Err(SymError::InvalidInstance(note)) => {
                        DecodeReport::fail(Diagnostics { note: Some(note), ..Default::default() })
                    }
                    Err(e) => return Err(e),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::select_twist;
    use crate::channel::random_symmetric_matrix;
    use crate::gabidulin::random_error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sym_matrix(base: &BaseField, n: usize, r: usize, rng: &mut ChaCha8Rng) -> MatrixFq {
        random_symmetric_matrix(base, n, r, rng).unwrap()
    }

    #[test]
    fn phi_matrix_basics() {
        let base = BaseField::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = MatrixFq::random(&base, 4, 4, &mut rng);
        let p = phi_matrix(&base, &m);
        assert_eq!(p.transpose(), p.scale(&base, base.neg(base.one())));
        let two = base.add(base.one(), base.one());
        assert_eq!(phi_matrix(&base, &p), p.scale(&base, two));
        let s = m.add(&base, &m.transpose());
        assert!(phi_matrix(&base, &s).is_zero(&base));
        let mut e = MatrixFq::zeros(&base, 3, 3);
        e.set(0, 2, base.one());
        let pe = phi_matrix(&base, &e);
        assert_eq!((pe.get(0, 2), pe.get(2, 0)), (base.one(), base.neg(base.one())));
    }

    #[test]
    fn phi_kernel_is_symmetric_matrices() {
        for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)] {
            let base = BaseField::prime(p).unwrap();
            let q = p as u64;
            let total = q.pow((n * n) as u32);
            let mut zeros = 0u64;
            for mut idx in 0..total {
                let m = MatrixFq::from_fn(n, n, |_, _| {
                    let e = base.element(idx % q);
                    idx /= q;
                    e
                });
                if phi_matrix(&base, &m).is_zero(&base) {
                    assert!(m.is_symmetric());
                    zeros += 1;
                }
            }
            assert_eq!(zeros, q.pow((n * (n + 1) / 2) as u32));
        }
    }

    #[test]
    fn phi_qpoly_basics() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, n) in [(2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = ExtField::generate(p, 1, n).unwrap();
            let setup = BilinearSetup::new(&f);
            let u = setup.u();
            let a = f.random(&mut rng);
            assert!(phi_qpoly(&f, &QPoly::monomial(n, 0, a), u).unwrap().is_zero());
            for i in 0..n {
                let m = QPoly::monomial(n, i, f.one());
                let sym = m.add(&f, &m.adjoint(&f, u).unwrap());
                assert!(phi_qpoly(&f, &sym, u).unwrap().is_zero());
            }
            for _ in 0..20 {
                let pq = QPoly::random(&f, &mut rng);
                let lhs = phi_qpoly(&f, &pq, u).unwrap().matrix_of(&f, setup.basis());
                assert_eq!(lhs, phi_matrix(f.base(), &pq.matrix_of(&f, setup.basis())));
            }
        }
    }

    #[test]
    fn sym_free_checks() {
        let base = BaseField::prime(3).unwrap();
        let mut anti = MatrixFq::zeros(&base, 3, 3);
        anti.set(0, 1, base.one());
        anti.set(1, 0, base.neg(base.one()));
        assert!(check_sym_free(&base, &MatrixCode::new(&base, 3, vec![anti]).unwrap()));
        let id = MatrixCode::new(&base, 3, vec![MatrixFq::identity(&base, 3)]).unwrap();
        assert!(!check_sym_free(&base, &id));
        assert_eq!(LowRateDecoder::new(&base, id).unwrap_err(), SymError::NotSymFree);

        for (p, n) in [(2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 2), (5, 3)] {
            let f = ExtField::generate(p, 1, n).unwrap();
            let setup = BilinearSetup::new(&f);
            for k in 1..n {
                let code = MatrixCode::from_gabidulin(&f, setup.basis(), &GabCode::new(n, k, 1).unwrap());
                assert_eq!(code.dim(), n * k);
                if 2 * k < n {
                    assert!(check_sym_free(f.base(), &code), "(q,n,k) = {:?}", (p, n, k));
                }
                if 2 * k > n {
                    assert!(!check_sym_free(f.base(), &code));
                }
            }
        }
    }

    #[test]
    fn symmetric_part_support() {
        for (p, n) in [(2, 5), (2, 6), (3, 4), (3, 5)] {
            let f = ExtField::generate(p, 1, n).unwrap();
            let (u, _) = select_twist(&f);
            for k in n / 2 + 1..n {
                let dec = HighRateDecoder::new(&f, u, k).unwrap();
                let sym = dec.symmetric_part(&f);
                assert!(!sym.is_empty());
                for s in &sym {
                    assert!(s.is_self_adjoint(&f, u).unwrap());
                    assert!(dec.reduced_code().contains(s));
                }
            }
        }
    }

    #[test]
    fn low_rate_recovers_full_rank_errors() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, n, k) in [(2, 6, 2), (3, 5, 2)] {
            let f = ExtField::generate(p, 1, n).unwrap();
            let base = f.base();
            let setup = BilinearSetup::new(&f);
            let code = MatrixCode::from_gabidulin(&f, setup.basis(), &GabCode::new(n, k, 1).unwrap());
            let dec = LowRateDecoder::new(base, code.clone()).unwrap();
            let c = code.random_codeword(base, &mut rng);
            let r = dec.decode(base, &c).unwrap();
            assert_eq!((r.codeword, r.error.is_zero(base)), (c, true));
            for r in 1..=n {
                for _ in 0..30 {
                    let c = code.random_codeword(base, &mut rng);
                    let e = sym_matrix(base, n, r, &mut rng);
                    let out = dec.decode(base, &c.add(base, &e)).unwrap();
                    assert_eq!((out.codeword, out.error), (c, e));
                }
            }
        }
    }

    #[test]
    fn low_rate_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (p, n) in [(2, 4), (3, 3), (2, 5)] {
            let base = BaseField::prime(p).unwrap();
            let code = MatrixCode::random_sym_free(&base, n, n * (n - 1) / 2, &mut rng).unwrap();
            let dec = LowRateDecoder::new(&base, code.clone()).unwrap();
            for gen in code.generators() {
                let e = sym_matrix(&base, n, n, &mut rng);
                let out = dec.decode(&base, &gen.add(&base, &e)).unwrap();
                assert_eq!(&out.codeword, gen);
            }
        }
    }

    #[test]
    fn low_rate_flags_invalid_instances() {
        let base = BaseField::prime(3).unwrap();
        let mut anti = MatrixFq::zeros(&base, 3, 3);
        anti.set(0, 1, base.one());
        anti.set(1, 0, base.neg(base.one()));
        let dec = LowRateDecoder::new(&base, MatrixCode::new(&base, 3, vec![anti]).unwrap()).unwrap();
        let mut y = MatrixFq::zeros(&base, 3, 3);
        y.set(0, 2, base.one());
        assert!(matches!(dec.decode(&base, &y), Err(SymError::InvalidInstance(_))));
    }

    #[test]
    fn high_rate_recovers() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, n, k) in [(2, 8, 5), (3, 5, 3), (2, 6, 4)] {
            let f = ExtField::generate(p, 1, n).unwrap();
            let setup = BilinearSetup::new(&f);
            let dec = HighRateDecoder::new(&f, setup.u(), k).unwrap();
            let c = dec.code().random_codeword(&f, &mut rng);
            assert_eq!(dec.decode(&f, &c).unwrap().codeword(), Some(&c));
            for r in 0..=n - k {
                for _ in 0..30 {
                    let c = dec.code().random_codeword(&f, &mut rng);
                    let m = sym_matrix(f.base(), n, r, &mut rng);
                    let e = QPoly::from_matrix(&f, setup.basis(), &m);
                    let report = dec.decode(&f, &c.add(&f, &e)).unwrap();
                    for d in &report.candidates {
                        assert!(dec.code().contains(&d.codeword));
                        assert!(d.error.is_self_adjoint(&f, setup.u()).unwrap());
                        assert!(d.error.rank(&f) <= n - k);
                    }
                    assert!(report.candidates.iter().any(|d| d.codeword == c));
                    if r < n - k {
                        assert_eq!(report.codeword(), Some(&c));
                    }
                }
            }
        }
    }

    #[test]
    fn router() {
        for (p, n) in [(2, 4), (2, 6), (3, 4)] {
            let f = ExtField::generate(p, 1, n).unwrap();
            let setup = BilinearSetup::new(&f);
            assert!(matches!(SymDecoder::new(&f, &setup, 1), Ok(SymDecoder::Low { .. })));
            assert!(matches!(SymDecoder::new(&f, &setup, n - 1), Ok(SymDecoder::High(_))));
            assert!(SymDecoder::new(&f, &setup, 0).is_err());
            assert!(SymDecoder::new(&f, &setup, n).is_err());
            assert!(matches!(SymDecoder::new(&f, &setup, n / 2), Err(SymError::Unsupported(_))));
        }
        let f = ExtField::generate(2, 1, 5).unwrap();
        let setup = BilinearSetup::new(&f);
        let dec = SymDecoder::new(&f, &setup, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let c = GabCode::new(5, 2, 1).unwrap().random_codeword(&f, &mut rng);
        // a non-symmetric error is not a valid instance for the low-rate decoder
        let mut bad = random_error(&f, 1, &mut rng);
        while bad.is_self_adjoint(&f, setup.u()).unwrap() {
            bad = random_error(&f, 1, &mut rng);
        }
        let report = dec.decode(&f, &c.add(&f, &bad)).unwrap();
        assert_ne!(report.codeword(), Some(&c));
        for d in &report.candidates {
            assert!(d.error.is_self_adjoint(&f, setup.u()).unwrap());
        }
    }
}
