use serde::{Deserialize, Serialize};

use super::{poly, BaseField, Field, GfError, PrimeField};

/// Description of the tower `F_p ⊂ F_q = F_p[y]/(g) ⊂ F_{q^n} = F_q[x]/(f)`.
///
/// Serialized as `{"p", "e", "g": [..], "n", "f": [[..], ..]}`: `g` holds the
/// `e + 1` little-endian coefficients over `F_p`, `f` the `n + 1`
/// little-endian coefficients over `F_q`, each one a little-endian digit
/// vector over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub e: usize,
    pub g: Vec<u32>,
    pub n: usize,
    pub f: Vec<Vec<u32>>,
}

impl FieldParams {
    /// Parameters with both moduli generated deterministically.
    pub fn generate(p: u32, e: usize, n: usize) -> Result<Self, GfError> {
        Self::with_moduli(p, e, n, None, None)
    }

    /// Uses the supplied moduli where given, otherwise picks the first monic
    /// irreducible polynomial in increasing little-endian index order. The
    /// result is validated.
    pub fn with_moduli(
        p: u32,
        e: usize,
        n: usize,
        g: Option<Vec<u32>>,
        f: Option<Vec<Vec<u32>>>,
    ) -> Result<Self, GfError> {
        if e == 0 {
            return Err(GfError::Invalid("base extension degree e must be at least 1".into()));
        }
        if n == 0 {
            return Err(GfError::Invalid("extension degree n must be at least 1".into()));
        }
        let prime = PrimeField::new(p)?;
        let q = (p as u64).checked_pow(e as u32).unwrap_or(u64::MAX);
        if q > super::MAX_BASE_ORDER {
            return Err(GfError::TooLarge(format!("q = {p}^{e}")));
        }
        if q.checked_pow(n as u32).is_none_or(|o| o > super::MAX_EXT_ORDER) {
            return Err(GfError::TooLarge(format!("q^n = {q}^{n}")));
        }
        let g = match g {
            Some(g) => g,
            None => poly::first_irreducible(&prime, e),
        };
        if g.len() != e + 1 {
            return Err(GfError::WrongDegree { expected: e, got: g.len().checked_sub(1) });
        }
        let base = BaseField::new(p, &g)?;
        let f = match f {
            Some(f) => f,
            None => poly::first_irreducible(&base, n).into_iter().map(|c| base.digits(c)).collect(),
        };
        let params = Self { p, e, g, n, f };
        params.validate()?;
        Ok(params)
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e as u32)
    }

    pub fn order(&self) -> u64 {
        self.q().pow(self.n as u32)
    }

    /// Checks primality, degrees, monicity and irreducibility of both moduli.
    pub fn validate(&self) -> Result<(), GfError> {
        let base = BaseField::new(self.p, &self.g)?;
        if base.e() != self.e {
            return Err(GfError::WrongDegree { expected: self.e, got: Some(base.e()) });
        }
        if self.f.len() != self.n + 1 {
            return Err(GfError::WrongDegree { expected: self.n, got: self.f.len().checked_sub(1) });
        }
        let f = self.f.iter().map(|c| base.from_digits(c)).collect::<Result<Vec<_>, _>>()?;
        if f[self.n] != base.one() {
            return Err(GfError::NotMonic);
        }
        if !poly::is_irreducible(&base, &f) {
            return Err(GfError::NotIrreducible);
        }
        Ok(())
    }
}
