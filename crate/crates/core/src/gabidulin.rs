//! Gabidulin codes `Gab_k ∘ X^{q^s} = span{X^{q^s}, ..., X^{q^{s+k-1}}}` and
//! the Welch-Berlekamp style decoder solving `L ∘ Y = N`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bilinear::Basis;
use crate::gf::{ExtElement, ExtField, Field};
use crate::linalg::{Matrix, MatrixExt, MatrixFq};
use crate::qpoly::QPoly;

/// Default bound on the number of projective solution-space points examined
/// beyond the unique decoding radius. Large enough for a full projective
/// line over any field with `q^n <= 2^16`.
pub const DEFAULT_CANDIDATE_CAP: u64 = 65_537;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GabError {
    #[error("invalid code parameters n = {n}, k = {k}, s = {s}")]
    InvalidCode { n: usize, k: usize, s: usize },
    #[error("message has {got} symbols, expected {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("radius t = {t} too large for k = {k}, n = {n} (need k + t <= n)")]
    RadiusTooLarge { n: usize, k: usize, t: usize },
    #[error("received word lives over F_q^{got}, code over F_q^{expected}")]
    LengthMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GabCode {
    n: usize,
    k: usize,
    s: usize,
}

impl GabCode {
    pub fn new(n: usize, k: usize, s: usize) -> Result<Self, GabError> {
        if n == 0 || k > n || s >= n || (k > 0 && s + k > n) {
            return Err(GabError::InvalidCode { n, k, s });
        }
        Ok(Self { n, k, s })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn shift(&self) -> usize {
        self.s
    }

    pub fn min_distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// `floor((n - k) / 2)`.
    pub fn unique_radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn contains(&self, p: &QPoly) -> bool {
        p.n() == self.n
            && p.coeffs()
                .iter()
                .enumerate()
                .all(|(i, &c)| c == ExtElement::ZERO || (self.s..self.s + self.k).contains(&i))
    }

    /// `sum m_i X^{q^{s+i}}`.
    pub fn encode(&self, message: &[ExtElement]) -> Result<QPoly, GabError> {
        if message.len() != self.k {
            return Err(GabError::MessageLength { expected: self.k, got: message.len() });
        }
        let mut coeffs = vec![ExtElement::ZERO; self.n];
        coeffs[self.s..self.s + self.k].copy_from_slice(message);
        Ok(QPoly::from_coeffs(self.n, coeffs).expect("length n"))
    }

    pub fn message_of(&self, codeword: &QPoly) -> Vec<ExtElement> {
        codeword.coeffs()[self.s..self.s + self.k].to_vec()
    }

    pub fn random_codeword<R: Rng + ?Sized>(&self, ext: &ExtField, rng: &mut R) -> QPoly {
        let msg: Vec<ExtElement> = (0..self.k).map(|_| ext.random(rng)).collect();
        self.encode(&msg).expect("message has length k")
    }

    /// The classical vector form `(C(g_1), ..., C(g_n))`.
    pub fn vector_codeword(&self, ext: &ExtField, codeword: &QPoly, basis: &Basis) -> Vec<ExtElement> {
        codeword.vector_form(ext, basis)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecodeStatus {
    Ok,
    Ambiguous,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `F_{q^n}`-dimension of the solution space of the key equation.
    pub solution_dim: usize,
    /// Rank of the recovered error, or the smallest error rank seen among
    /// exact divisions when nothing was accepted.
    pub error_rank: Option<usize>,
    pub candidates_examined: u64,
    /// Enumeration stopped at the cap before covering the solution space.
    pub truncated: bool,
    pub note: Option<String>,
}

/// A decoding `Y = codeword + error`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoding {
    pub codeword: QPoly,
    pub error: QPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub status: DecodeStatus,
    /// All accepted decodings; exactly one when `status` is `Ok`.
    pub candidates: Vec<Decoding>,
    pub diagnostics: Diagnostics,
}

impl DecodeReport {
    pub fn fail(diagnostics: Diagnostics) -> Self {
        Self { status: DecodeStatus::Fail, candidates: Vec::new(), diagnostics }
    }

    pub fn from_candidates(candidates: Vec<Decoding>, diagnostics: Diagnostics) -> Self {
        let status = match candidates.len() {
            0 => DecodeStatus::Fail,
            1 => DecodeStatus::Ok,
            _ => DecodeStatus::Ambiguous,
        };
        Self { status, candidates, diagnostics }
    }

    /// The decoding when `status` is `Ok`.
    pub fn unique(&self) -> Option<&Decoding> {
        match self.status {
            DecodeStatus::Ok => self.candidates.first(),
            _ => None,
        }
    }

    pub fn codeword(&self) -> Option<&QPoly> {
        self.unique().map(|d| &d.codeword)
    }

    pub fn error(&self) -> Option<&QPoly> {
        self.unique().map(|d| &d.error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WbOptions {
    pub candidate_cap: u64,
}

impl Default for WbOptions {
    fn default() -> Self {
        Self { candidate_cap: DEFAULT_CANDIDATE_CAP }
    }
}

/// Decodes `y` in `code` up to rank `t`.
pub fn wb_decode(ext: &ExtField, code: &GabCode, y: &QPoly, t: usize) -> Result<DecodeReport, GabError> {
    wb_decode_with(ext, code, y, t, WbOptions::default(), |_| true)
}

/// As [`wb_decode`], keeping only decodings accepted by `accept`.
///
/// Within the unique radius the first nonzero solution of the key equation
/// yields the answer. Beyond it, every projective point of the solution
/// space is tried (up to `opts.candidate_cap`) and all distinct valid
/// decodings are collected.
pub fn wb_decode_with(
    ext: &ExtField,
    code: &GabCode,
    y: &QPoly,
    t: usize,
    opts: WbOptions,
    accept: impl Fn(&Decoding) -> bool,
) -> Result<DecodeReport, GabError> {
    let (n, k, s) = (code.n, code.k, code.s);
    if y.n() != n {
        return Err(GabError::LengthMismatch { expected: n, got: y.n() });
    }
    if k + t > n {
        return Err(GabError::RadiusTooLarge { n, k, t });
    }
    let y0 = y.compose_frobenius(n - s);
    let kernel = key_equation(ext, &y0, k, t).kernel(ext);
    let mut diag = Diagnostics { solution_dim: kernel.len(), ..Default::default() };
    if kernel.is_empty() {
        diag.note = Some("key equation has only the zero solution".into());
        return Ok(DecodeReport::fail(diag));
    }

    let mut found: Vec<Decoding> = Vec::new();
    let mut best_rank: Option<usize> = None;
    let mut try_solution = |sol: &[ExtElement]| {
        let Some(c0) = candidate(ext, sol, k, t) else { return };
        let codeword = c0.compose_frobenius(s);
        let error = y.sub(ext, &codeword);
        let rank = error.rank(ext);
        best_rank = Some(best_rank.map_or(rank, |b| b.min(rank)));
        if rank > t {
            return;
        }
        let d = Decoding { codeword, error };
        if accept(&d) && !found.contains(&d) {
            found.push(d);
        }
    };

    if 2 * t <= n - k {
        try_solution(&kernel[0]);
        diag.candidates_examined = 1;
    } else {
        for sol in ProjectivePoints::new(ext, &kernel) {
            if diag.candidates_examined >= opts.candidate_cap {
                diag.truncated = true;
                break;
            }
            diag.candidates_examined += 1;
            try_solution(&sol);
        }
    }
    diag.error_rank = best_rank;
    let mut report = DecodeReport::from_candidates(found, diag);
    if let Some(d) = report.unique() {
        report.diagnostics.error_rank = Some(d.error.rank(ext));
    }
    Ok(report)
}

/// Rows: coefficients of `X^{q^j}` in `L ∘ Y - N`. Columns: `l_0..l_t`,
/// then `v_0..v_{k+t-1}`.
fn key_equation(ext: &ExtField, y: &QPoly, k: usize, t: usize) -> MatrixExt {
    let n = y.n();
    Matrix::from_fn(n, k + 2 * t + 1, |j, c| {
        if c <= t {
            ext.frobenius(y.coeff((j + n - c) % n), c)
        } else if c - t - 1 == j {
            ext.neg(ext.one())
        } else {
            ext.zero()
        }
    })
}

/// `N` divided on the left by `L`, if exact with quotient in `Gab_k`.
fn candidate(ext: &ExtField, sol: &[ExtElement], k: usize, t: usize) -> Option<QPoly> {
    let n = ext.degree();
    let l = QPoly::from_coeffs(n, sol[..=t].to_vec()).expect("t < n");
    let num = QPoly::from_coeffs(n, sol[t + 1..].to_vec()).expect("k + t <= n");
    let (quot, rem) = num.left_divide(ext, &l).ok()?;
    (rem.is_zero() && quot.q_degree().is_none_or(|d| d < k)).then_some(quot)
}

/// Normalized representatives (first nonzero coordinate 1) of all nonzero
/// combinations of `basis`, in lexicographic index order.
struct ProjectivePoints<'a> {
    ext: &'a ExtField,
    basis: &'a [Vec<ExtElement>],
    lead: usize,
    counter: Vec<u64>,
    done: bool,
}

impl<'a> ProjectivePoints<'a> {
    fn new(ext: &'a ExtField, basis: &'a [Vec<ExtElement>]) -> Self {
        let counter = vec![0; basis.len().saturating_sub(1)];
        Self { ext, basis, lead: 0, counter, done: basis.is_empty() }
    }
}

impl Iterator for ProjectivePoints<'_> {
    type Item = Vec<ExtElement>;

    fn next(&mut self) -> Option<Vec<ExtElement>> {
        if self.done {
            return None;
        }
        let ext = self.ext;
        let mut v = self.basis[self.lead].clone();
        for (offset, &idx) in self.counter.iter().enumerate() {
            if idx != 0 {
                let c = ext.element(idx);
                for (a, &b) in v.iter_mut().zip(&self.basis[self.lead + 1 + offset]) {
                    *a = ext.add(*a, ext.mul(c, b));
                }
            }
        }
        // advance the counter, moving to the next leading position on overflow
        let mut pos = 0;
        loop {
            if pos == self.counter.len() {
                self.lead += 1;
                if self.lead == self.basis.len() {
                    self.done = true;
                } else {
                    self.counter = vec![0; self.basis.len() - 1 - self.lead];
                }
                break;
            }
            self.counter[pos] += 1;
            if self.counter[pos] < ext.order() {
                break;
            }
            self.counter[pos] = 0;
            pos += 1;
        }
        Some(v)
    }
}

/// A q-polynomial of rank exactly `t`, pulled back from a random rank-`t`
/// matrix in the power basis.
pub fn random_error<R: Rng + ?Sized>(ext: &ExtField, t: usize, rng: &mut R) -> QPoly {
    let n = ext.degree();
    assert!(t <= n, "rank {t} exceeds n = {n}");
    let base = ext.base();
    let a = MatrixFq::random_full_row_rank(base, t, n, 10_000, rng).expect("full-rank matrices are common");
    let b = MatrixFq::random_full_row_rank(base, t, n, 10_000, rng).expect("full-rank matrices are common");
    let m = a.transpose().mul(base, &b);
    QPoly::from_matrix(ext, &Basis::power(ext), &m)
}
