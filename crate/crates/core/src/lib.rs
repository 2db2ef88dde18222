//! Exact computation of the minimal polynomials `psi_n` of `2cos(2pi/n)`.
//!
//! - [`poly`]: dense integer polynomials with exact division
//! - [`numtheory`]: factorization, divisors, totient, Möbius, odd-prime product sets
//! - [`sequences`]: the rescaled Chebyshev families `c`, `p±`, `q±`, `t`
//! - [`minpoly`]: `psi_n` by the quotient formula, with three independent cross-checks
//! - [`cheb_factor`]: `T`, `V`, `W` split into `psi` factors
//! - [`identities`]: executable identity sweeps
//! - [`table`]: table rows and JSON records

pub mod cheb_factor;
pub mod error;
mod fixed;
pub mod identities;
pub mod minpoly;
pub mod numtheory;
pub mod poly;
pub mod sequences;
pub mod table;

pub use crate::cheb_factor::{ChebKind, PsiFactorList};
pub use crate::error::{Error, Result};
pub use crate::identities::CheckReport;
pub use crate::minpoly::{
    cyclotomic, psi, psi_barnes, psi_numeric, psi_wz, FractionTarget, PsiExpr,
};
pub use crate::numtheory::{Factorization, PiSets};
pub use crate::poly::IntPoly;
pub use crate::sequences::{Family, SeqTerm};
pub use crate::table::{PsiRecord, TableRow};
