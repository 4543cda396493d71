//! Rank-metric codes over finite-field towers `F_p ⊂ F_q ⊂ F_{q^n}`.
//!
//! Codewords and errors are q-polynomials, i.e. `F_q`-linear maps of
//! `F_{q^n}`, which an orthonormal basis of the form `Tr(u x y)` identifies
//! with `n x n` matrices over `F_q` so that adjoints become transposes.
//! On top of that sit Gabidulin codes with a half-distance decoder and two
//! decoders for symmetric errors:
//!
//! * [`symdec::LowRateDecoder`] for codes with no nonzero symmetric element,
//!   correcting symmetric errors of any rank;
//! * [`symdec::HighRateDecoder`] for `Gab_k ∘ X^q` with `k > n/2`,
//!   correcting self-adjoint errors of rank up to `n - k`.
//!
//! ```
//! use rankmetric::bilinear::BilinearSetup;
//! use rankmetric::channel::{random_selfadjoint_qpoly, RngStream};
//! use rankmetric::gf::ExtField;
//! use rankmetric::symdec::SymDecoder;
//! use rankmetric::gabidulin::GabCode;
//!
//! let ext = ExtField::generate(2, 1, 6).unwrap();
//! let setup = BilinearSetup::new(&ext);
//! let decoder = SymDecoder::new(&ext, &setup, 2).unwrap();
//! let mut rng = RngStream::new(1, 0);
//! let c = GabCode::new(6, 2, 1).unwrap().random_codeword(&ext, &mut rng);
//! let e = random_selfadjoint_qpoly(&ext, &setup, 6, &mut rng).unwrap();
//! let report = decoder.decode(&ext, &c.add(&ext, &e)).unwrap();
//! assert_eq!(report.codeword(), Some(&c));
//! ```

pub mod bilinear;
pub mod channel;
pub mod cli;
pub mod gabidulin;
pub mod gf;
pub mod linalg;
pub mod qpoly;
pub mod symdec;
