//! Table rows and JSON records for `psi_n`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minpoly::{psi, psi_expr, PsiExpr};
use crate::poly::IntPoly;

/// One row of the `psi_n` table: `n | expr`, optionally with the expanded polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u64,
    /// `None` for `n` in `{1, 2}`, which are written out as polynomials.
    pub expr: Option<PsiExpr>,
    pub expanded: Option<IntPoly>,
}

impl TableRow {
    pub fn new(n: u64, expand: bool) -> Result<Self> {
        let expr = psi_expr(n)?;
        let expanded = if expand { Some(psi(n)?) } else { None };
        Ok(Self { n, expr, expanded })
    }

    /// The expression column: the table notation, or the polynomial itself for `n <= 2`.
    pub fn expr_text(&self) -> String {
        match &self.expr {
            Some(e) => e.to_string(),
            None => psi(self.n).map(|p| p.to_string()).unwrap_or_default(),
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.n, self.expr_text())?;
        if let Some(p) = &self.expanded {
            write!(f, " | {p}")?;
        }
        Ok(())
    }
}

/// `{ "n", "degree", "expr": {"num", "den"} | null, "coeffs": [descending, as strings] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiRecord {
    pub n: u64,
    pub degree: usize,
    pub expr: Option<PsiExpr>,
    pub coeffs: Vec<String>,
}

impl PsiRecord {
    pub fn from_poly(n: u64, expr: Option<PsiExpr>, poly: &IntPoly) -> Self {
        Self {
            n,
            degree: poly.degree().unwrap_or(0),
            expr,
            coeffs: poly.coeffs().iter().rev().map(ToString::to_string).collect(),
        }
    }

    pub fn compute(n: u64) -> Result<Self> {
        Ok(Self::from_poly(n, psi_expr(n)?, &psi(n)?))
    }

    /// Rebuilds the polynomial from the coefficient strings.
    pub fn poly(&self) -> Result<IntPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .rev()
            .map(|c| {
                c.parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntPoly::new(coeffs))
    }
}
