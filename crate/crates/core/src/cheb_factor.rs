//! Splitting the rescaled Chebyshev polynomials of the first, third and fourth kinds into
//! minimal polynomials:
//!
//! * `t_n = 2 T_n(x/2) = prod_{d | n, n/d odd} psi_{4d}`
//! * `p-_n = V_n(x/2) = prod_{d | 2n+1, d > 1} psi_{2d}`
//! * `p+_n = W_n(x/2) = prod_{d | 2n+1, d > 1} psi_d`
//!
//! Irreducibility then reduces to the factor list having a single entry.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minpoly::psi;
use crate::numtheory::divisors;
use crate::poly::IntPoly;
use crate::sequences;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChebKind {
    T,
    V,
    W,
}

impl fmt::Display for ChebKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChebKind::T => "T",
            ChebKind::V => "V",
            ChebKind::W => "W",
        })
    }
}

impl FromStr for ChebKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" | "t" => Ok(ChebKind::T),
            "V" | "v" => Ok(ChebKind::V),
            "W" | "w" => Ok(ChebKind::W),
            _ => Err(Error::Parse(format!("expected T, V or W, got {s:?}"))),
        }
    }
}

/// The ψ-indices whose product is the target polynomial of `kind` at `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiFactorList {
    pub kind: ChebKind,
    pub n: u64,
    #[serde(rename = "psi_factors")]
    pub factors: Vec<u64>,
}

impl PsiFactorList {
    /// `t_n`, `p-_n` or `p+_n`.
    pub fn target(&self) -> Result<IntPoly> {
        let n = self.n as i64;
        match self.kind {
            ChebKind::T => sequences::t(n),
            ChebKind::V => sequences::p_minus(n),
            ChebKind::W => sequences::p_plus(n),
        }
    }

    pub fn product(&self) -> Result<IntPoly> {
        let polys = self
            .factors
            .iter()
            .map(|&d| psi(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::product(&polys))
    }

    /// Multiplies the factors back together and compares with the target exactly.
    pub fn check(&self) -> Result<bool> {
        Ok(self.product()? == self.target()?)
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for PsiFactorList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(|d| format!("psi_{d}")).collect();
        f.write_str(&names.join(" "))
    }
}

fn require_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("n must be positive".into()))
    } else {
        Ok(())
    }
}

pub fn factor_v(n: u64) -> Result<PsiFactorList> {
    require_positive(n)?;
    let mut factors: Vec<u64> = divisors(2 * n + 1)?
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| 2 * d)
        .collect();
    factors.sort_unstable();
    Ok(PsiFactorList {
        kind: ChebKind::V,
        n,
        factors,
    })
}

pub fn factor_w(n: u64) -> Result<PsiFactorList> {
    require_positive(n)?;
    let factors = divisors(2 * n + 1)?.into_iter().filter(|&d| d > 1).collect();
    Ok(PsiFactorList {
        kind: ChebKind::W,
        n,
        factors,
    })
}

pub fn factor_t(n: u64) -> Result<PsiFactorList> {
    require_positive(n)?;
    let factors = divisors(n)?
        .into_iter()
        .filter(|&d| (n / d) % 2 == 1)
        .map(|d| 4 * d)
        .collect();
    Ok(PsiFactorList {
        kind: ChebKind::T,
        n,
        factors,
    })
}

pub fn factor(kind: ChebKind, n: u64) -> Result<PsiFactorList> {
    match kind {
        ChebKind::T => factor_t(n),
        ChebKind::V => factor_v(n),
        ChebKind::W => factor_w(n),
    }
}

/// Whether `t_n` (equivalently `T_n`) is irreducible.
pub fn is_irreducible_t(n: u64) -> Result<bool> {
    Ok(factor_t(n)?.is_irreducible())
}

/// Whether `p±_n` (equivalently `V_n`, `W_n`) are irreducible.
pub fn is_irreducible_vw(n: u64) -> Result<bool> {
    Ok(factor_w(n)?.is_irreducible())
}
