//! Minimal polynomials `psi_n` of `2cos(2pi/n)`.
//!
//! The primary route, [`psi`], is non-recursive: `psi_n` is a single quotient of terms from one
//! of the families `p+`, `p-` or `q-`, with the extra terms indexed by products of distinct odd
//! prime divisors (see [`psi_expr_fraction`]). Three independent routes exist to check it:
//!
//! * [`psi_wz`]: divide a difference of two `t` terms by `psi_d` for every proper divisor `d`
//!   (recursive, memoized);
//! * [`psi_barnes`]: Möbius-exponent products of `p+`, `p-` or `c` terms;
//! * [`psi_numeric`]: expand `prod (x - 2cos(2 pi k / n))` in fixed point and round.
//!
//! [`cyclotomic`] supports the check `x^d psi_n(x + 1/x) = Phi_n(x)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed::Fixed;
use crate::numtheory::{divisors, euler_phi, moebius, pi_sets};
use crate::poly::IntPoly;
use crate::sequences::{self, Family, SeqTerm};

/// A quotient of sequence-term products, e.g. `q-_15 q-_1/(q-_5 q-_3)`.
///
/// Both sides are kept sorted by descending index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PsiExpr {
    #[serde(rename = "num")]
    pub numerator: Vec<SeqTerm>,
    #[serde(rename = "den")]
    pub denominator: Vec<SeqTerm>,
}

impl PsiExpr {
    pub fn new(mut numerator: Vec<SeqTerm>, mut denominator: Vec<SeqTerm>) -> Self {
        let desc = |a: &SeqTerm, b: &SeqTerm| b.index.cmp(&a.index).then(a.family.cmp(&b.family));
        numerator.sort_by(desc);
        denominator.sort_by(desc);
        Self {
            numerator,
            denominator,
        }
    }

    pub fn term_count(&self) -> usize {
        self.numerator.len() + self.denominator.len()
    }

    /// The common family of all terms, if there is exactly one.
    pub fn family(&self) -> Option<Family> {
        let mut fams = self.numerator.iter().chain(&self.denominator).map(|t| t.family);
        let first = fams.next()?;
        fams.all(|f| f == first).then_some(first)
    }

    /// Multiplies out both sides and divides once.
    pub fn evaluate(&self) -> Result<IntPoly> {
        let eval_all = |terms: &[SeqTerm]| -> Result<IntPoly> {
            let polys = terms.iter().map(|t| t.eval()).collect::<Result<Vec<_>>>()?;
            Ok(IntPoly::product(&polys))
        };
        let num = eval_all(&self.numerator)?;
        let den = eval_all(&self.denominator)?;
        num.div_exact(&den)
    }
}

/// Renders in table notation: numerator terms separated by spaces, `/` only when there is a
/// denominator, parentheses only around a multi-term denominator.
impl fmt::Display for PsiExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ts: &[SeqTerm]| {
            ts.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        if self.numerator.is_empty() {
            f.write_str("1")?;
        } else {
            f.write_str(&join(&self.numerator))?;
        }
        match self.denominator.len() {
            0 => Ok(()),
            1 => write!(f, "/{}", self.denominator[0]),
            _ => write!(f, "/({})", join(&self.denominator)),
        }
    }
}

impl FromStr for PsiExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = |part: &str| -> Result<Vec<SeqTerm>> {
            if part.trim() == "1" {
                return Ok(Vec::new());
            }
            part.split_whitespace().map(str::parse).collect()
        };
        let (num, den) = match s.split_once('/') {
            Some((num, den)) => {
                let den = den.trim();
                let den = den
                    .strip_prefix('(')
                    .and_then(|d| d.strip_suffix(')'))
                    .unwrap_or(den);
                (num, den)
            }
            None => (s, ""),
        };
        let numerator = terms(num)?;
        if numerator.is_empty() && num.trim() != "1" {
            return Err(Error::Parse(format!("empty numerator in {s:?}")));
        }
        Ok(Self::new(numerator, terms(den)?))
    }
}

/// An irreducible fraction `m/n` in `(0, 1)`, naming the angle `m pi / n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FractionTarget {
    m: u64,
    n: u64,
}

impl FractionTarget {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::OutOfRange { m, n });
        }
        if m.gcd(&n) != 1 {
            return Err(Error::NotIrreducible { m, n });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The `N` with `psi_{m/n} = psi_N`.
    pub fn psi_index(&self) -> u64 {
        if self.n % 2 == 1 && self.m.is_multiple_of(2) {
            self.n
        } else {
            2 * self.n
        }
    }
}

/// Quotient expression for the minimal polynomial of `2cos(m pi / n)`.
///
/// With `n` odd the family is `p-` (`m` odd) or `p+` (`m` even), head index `floor(n/2)` and
/// extra indices `floor(n/2d)`; with `n` even it is `q-` with indices `n/2` and `n/2d`. Here `d`
/// runs over the products of `i` distinct odd primes dividing `n` (and below `n`), which go to
/// the denominator for odd `i` and to the numerator for even `i`.
///
/// `n = 2` is accepted and gives `q-_1`.
pub fn psi_expr_fraction(target: FractionTarget) -> Result<PsiExpr> {
    let FractionTarget { m, n } = target;
    let (family, head) = match (n % 2, m % 2) {
        (1, 1) => (Family::PMinus, n / 2),
        (1, _) => (Family::PPlus, n / 2),
        _ => (Family::QMinus, n / 2),
    };
    let index_for = |d: u64| -> i64 {
        // n/2d: exact for even n since d is odd, floored for odd n
        (n / (2 * d)) as i64
    };
    let mut numerator = vec![SeqTerm::new(family, head as i64)?];
    let mut denominator = Vec::new();
    for (i, level) in pi_sets(n)?.iter() {
        let side = if i % 2 == 1 {
            &mut denominator
        } else {
            &mut numerator
        };
        for &d in level {
            side.push(SeqTerm::new(family, index_for(d))?);
        }
    }
    Ok(PsiExpr::new(numerator, denominator))
}

/// Reduces `2/N` to lowest terms; `None` for `N <= 2`, which have no sequence expression.
pub fn fraction_for(n: u64) -> Option<FractionTarget> {
    if n <= 2 {
        return None;
    }
    let g = n.gcd(&2);
    FractionTarget::new(2 / g, n / g).ok()
}

/// The primary expression for `psi_n`, or `None` for `n` in `{1, 2}`.
pub fn psi_expr(n: u64) -> Result<Option<PsiExpr>> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    fraction_for(n).map(psi_expr_fraction).transpose()
}

/// Minimal polynomial of `2cos(2pi/n)` from the non-recursive quotient formula.
pub fn psi(n: u64) -> Result<IntPoly> {
    match n {
        0 => Err(Error::InvalidInput("n must be positive".into())),
        1 => Ok(IntPoly::from_desc(&[1, -2])),
        2 => Ok(IntPoly::from_desc(&[1, 2])),
        _ => psi_expr(n)?.expect("n > 2").evaluate(),
    }
}

/// Minimal polynomial of `2cos(m pi / n)`.
pub fn psi_fraction(target: FractionTarget) -> Result<IntPoly> {
    psi_expr_fraction(target)?.evaluate()
}

/// `prod_{d | n} psi_d`, i.e. `t_{s+1} - t_s` for `n = 2s + 1` and `t_{s+1} - t_{s-1}` for `n = 2s`.
pub fn divisor_product_target(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let s = (n / 2) as i64;
    let lower = if n % 2 == 1 { s } else { s - 1 };
    Ok(&sequences::t(s + 1)? - &sequences::t(lower)?)
}

type Memo = Mutex<HashMap<u64, IntPoly>>;

fn wz_memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn cyclotomic_memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn memo_get(memo: &Memo, n: u64) -> Option<IntPoly> {
    memo.lock().unwrap_or_else(|e| e.into_inner()).get(&n).cloned()
}

fn memo_put(memo: &Memo, n: u64, p: &IntPoly) {
    memo.lock()
        .unwrap_or_else(|e| e.into_inner())
        .entry(n)
        .or_insert_with(|| p.clone());
}

/// Clears the memo tables of [`psi_wz`] and [`cyclotomic`] as well as the sequence cache.
pub fn clear_caches() {
    wz_memo().lock().unwrap_or_else(|e| e.into_inner()).clear();
    cyclotomic_memo().lock().unwrap_or_else(|e| e.into_inner()).clear();
    sequences::clear_cache();
}

/// Recursive route: `psi_n = (t-difference for n) / prod_{d | n, d < n} psi_d`.
pub fn psi_wz(n: u64) -> Result<IntPoly> {
    if let Some(p) = memo_get(wz_memo(), n) {
        return Ok(p);
    }
    let target = divisor_product_target(n)?;
    let mut proper = divisors(n)?;
    proper.pop();
    let factors = proper.into_iter().map(psi_wz).collect::<Result<Vec<_>>>()?;
    let p = target.div_exact(&IntPoly::product(&factors))?;
    memo_put(wz_memo(), n, &p);
    Ok(p)
}

/// Möbius-exponent expression for `psi_n`, `n >= 3`:
///
/// * `n` odd: `prod_{d > 1, d | n} p+_{floor(d/2)}^mu(n/d)`;
/// * `n = 2k`, `k` odd: `prod_{d > 1, d | k} p-_{floor(d/2)}^mu(k/d)`;
/// * `n = 2k`, `k` even: `prod_{d > 1, d | k} c_{d-1}^mu(k/d)`.
pub fn barnes_expr(n: u64) -> Result<PsiExpr> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "the Möbius product needs n >= 3, got {n}"
        )));
    }
    let (base, family) = match (n % 2, (n / 2) % 2) {
        (1, _) => (n, Family::PPlus),
        (_, 1) => (n / 2, Family::PMinus),
        _ => (n / 2, Family::C),
    };
    let mut numerator = Vec::new();
    let mut denominator = Vec::new();
    for d in divisors(base)?.into_iter().filter(|&d| d > 1) {
        let index = match family {
            Family::C => d as i64 - 1,
            _ => (d / 2) as i64,
        };
        let term = SeqTerm::new(family, index)?;
        match moebius(base / d)? {
            1 => numerator.push(term),
            -1 => denominator.push(term),
            _ => {}
        }
    }
    Ok(PsiExpr::new(numerator, denominator))
}

pub fn psi_barnes(n: u64) -> Result<IntPoly> {
    barnes_expr(n)?.evaluate()
}

/// Largest `n` accepted by [`psi_numeric`].
pub const NUMERIC_CEILING: u64 = 200;

/// Per-coefficient rounding tolerance of the numeric route.
pub const NUMERIC_TOLERANCE: f64 = 1e-6;

/// Result of the fixed-point root product before it is accepted.
#[derive(Debug, Clone)]
pub struct NumericExpansion {
    pub poly: IntPoly,
    /// Largest `|c - round(c)|` over the coefficients.
    pub max_deviation: f64,
    /// `max_deviation` divided by the largest coefficient magnitude (at least 1).
    pub max_relative_deviation: f64,
}

/// A precision budget that comfortably covers the coefficient growth of `psi_n`.
pub fn default_precision_bits(n: u64) -> u32 {
    let degree = euler_phi(n.max(1)).unwrap_or(1) as u32;
    128 + 2 * degree
}

/// Expands `prod (x - 2cos(2 pi k / n))` over `0 <= k <= n/2` with `gcd(k, n) = 1` using
/// `precision_bits`-bit fixed point, and rounds each coefficient.
pub fn numeric_expansion(n: u64, precision_bits: u32) -> Result<NumericExpansion> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n > NUMERIC_CEILING {
        return Err(Error::PrecisionExceeded(format!(
            "numeric route is limited to n <= {NUMERIC_CEILING}, got {n}"
        )));
    }
    let fx = Fixed::new(precision_bits);
    let two_pi = fx.pi() * 2;
    let mut coeffs = vec![fx.one().clone()];
    for k in (0..=n / 2).filter(|k| k.gcd(&n) == 1) {
        let theta = &two_pi * k / n;
        let root = fx.cos(&theta) * 2;
        // multiply by (x - root)
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= fx.mul(&root, c);
        }
        coeffs = next;
    }
    let mut rounded = Vec::with_capacity(coeffs.len());
    let mut max_deviation: f64 = 0.0;
    for c in &coeffs {
        let (r, err) = fx.round(c);
        max_deviation = max_deviation.max(err);
        rounded.push(r);
    }
    let poly = IntPoly::new(rounded);
    let scale = poly.max_abs_coeff().to_f64().unwrap_or(f64::INFINITY).max(1.0);
    Ok(NumericExpansion {
        poly,
        max_deviation,
        max_relative_deviation: max_deviation / scale,
    })
}

/// Numeric route with an explicit precision budget in bits.
pub fn psi_numeric(n: u64, precision_bits: u32) -> Result<IntPoly> {
    let e = numeric_expansion(n, precision_bits)?;
    if e.max_deviation > NUMERIC_TOLERANCE || !e.max_deviation.is_finite() {
        return Err(Error::PrecisionExceeded(format!(
            "coefficient of psi_{n} is {} away from an integer at {precision_bits} bits",
            e.max_deviation
        )));
    }
    Ok(e.poly)
}

/// Cyclotomic polynomial `Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d`, memoized.
pub fn cyclotomic(n: u64) -> Result<IntPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if let Some(p) = memo_get(cyclotomic_memo(), n) {
        return Ok(p);
    }
    let mut proper = divisors(n)?;
    proper.pop();
    let factors = proper
        .into_iter()
        .map(cyclotomic)
        .collect::<Result<Vec<_>>>()?;
    let xn_minus_1 = &IntPoly::monomial(BigInt::one(), n as usize) - &IntPoly::one();
    let p = xn_minus_1.div_exact(&IntPoly::product(&factors))?;
    memo_put(cyclotomic_memo(), n, &p);
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(s: &str) -> PsiExpr {
        s.parse().unwrap()
    }

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    #[test]
    fn fraction_expr_examples() {
        let e = psi_expr_fraction(FractionTarget::new(1, 30).unwrap()).unwrap();
        assert_eq!(e, expr("q-_15 q-_1/(q-_5 q-_3)"));
        assert_eq!(e.numerator[0].to_string(), "q-_15");

        let e = psi_expr_fraction(FractionTarget::new(2, 105).unwrap()).unwrap();
        assert_eq!(e.to_string(), "p+_52 p+_3 p+_2 p+_1/(p+_17 p+_10 p+_7)");

        let e = psi_expr_fraction(FractionTarget::new(1, 9).unwrap()).unwrap();
        assert_eq!(e.to_string(), "p-_4/p-_1");
    }

    #[test]
    fn fraction_target_errors() {
        assert_eq!(
            FractionTarget::new(3, 9),
            Err(Error::NotIrreducible { m: 3, n: 9 })
        );
        assert_eq!(FractionTarget::new(0, 9), Err(Error::OutOfRange { m: 0, n: 9 }));
        assert_eq!(FractionTarget::new(9, 9), Err(Error::OutOfRange { m: 9, n: 9 }));
        assert_eq!(FractionTarget::new(11, 9), Err(Error::OutOfRange { m: 11, n: 9 }));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1).unwrap(), p(&[1, -2]));
        assert_eq!(psi(2).unwrap(), p(&[1, 2]));
        assert_eq!(
            psi(60).unwrap(),
            "x^8 - 7*x^6 + 14*x^4 - 8*x^2 + 1".parse().unwrap()
        );
        assert_eq!(psi(12).unwrap(), p(&[1, 0, -3]));
        assert_eq!(psi(4).unwrap(), IntPoly::x());
        assert!(matches!(psi(0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn psi_fraction_independent_of_m() {
        for n in 3..=60u64 {
            let mut seen: HashMap<u64, PsiExpr> = HashMap::new();
            for m in 1..n {
                let Ok(t) = FractionTarget::new(m, n) else { continue };
                let e = psi_expr_fraction(t).unwrap();
                let class = if n % 2 == 1 { m % 2 } else { 1 };
                if let Some(prev) = seen.get(&class) {
                    assert_eq!(prev, &e, "m={m} n={n}");
                }
                seen.insert(class, e);
            }
        }
        // 2cos(3pi/7) has the same minimal polynomial as 2cos(pi/7) = 2cos(2pi/14)
        let t = FractionTarget::new(3, 7).unwrap();
        assert_eq!(t.psi_index(), 14);
        assert_eq!(psi_fraction(t).unwrap(), psi(14).unwrap());
        let t = FractionTarget::new(4, 7).unwrap();
        assert_eq!(psi_fraction(t).unwrap(), psi(7).unwrap());
    }

    #[test]
    fn wz_examples() {
        assert_eq!(psi_wz(1).unwrap(), p(&[1, -2]));
        assert_eq!(psi_wz(2).unwrap(), p(&[1, 2]));
        assert_eq!(psi_wz(4).unwrap(), IntPoly::x());
        assert_eq!(psi_wz(60).unwrap(), psi(60).unwrap());
        assert!(psi_wz(0).is_err());
    }

    #[test]
    fn barnes_examples() {
        assert_eq!(barnes_expr(9).unwrap().to_string(), "p+_4/p+_1");
        assert_eq!(barnes_expr(14).unwrap().to_string(), "p-_3");
        assert_eq!(
            barnes_expr(60).unwrap().to_string(),
            "c_29 c_4 c_2 c_1/(c_14 c_9 c_5)"
        );
        assert_eq!(psi_barnes(60).unwrap(), psi(60).unwrap());
        assert!(psi_barnes(2).is_err());
    }

    #[test]
    fn numeric_examples() {
        let bits = 128;
        assert_eq!(psi_numeric(5, bits).unwrap(), p(&[1, 1, -1]));
        assert_eq!(psi_numeric(12, bits).unwrap(), p(&[1, 0, -3]));
        assert_eq!(psi_numeric(1, bits).unwrap(), p(&[1, -2]));
        assert_eq!(psi_numeric(2, bits).unwrap(), p(&[1, 2]));
    }

    #[test]
    fn numeric_precision_errors() {
        assert!(matches!(
            psi_numeric(NUMERIC_CEILING + 1, 512),
            Err(Error::PrecisionExceeded(_))
        ));
        assert!(matches!(
            psi_numeric(199, 24),
            Err(Error::PrecisionExceeded(_))
        ));
        assert_eq!(
            psi_numeric(199, default_precision_bits(199)).unwrap(),
            psi(199).unwrap()
        );
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).unwrap(), p(&[1, -1]));
        assert_eq!(cyclotomic(6).unwrap(), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(3).unwrap(), p(&[1, 1, 1]));
        assert_eq!(cyclotomic(105).unwrap().degree(), Some(48));
        assert!(cyclotomic(0).is_err());
    }

    #[test]
    fn expr_text_round_trip() {
        for n in 3..=200 {
            let e = psi_expr(n).unwrap().unwrap();
            assert_eq!(e.to_string().parse::<PsiExpr>().unwrap(), e);
        }
        assert!("".parse::<PsiExpr>().is_err());
        assert!("p+_3/".parse::<PsiExpr>().is_ok());
        assert!("z_3".parse::<PsiExpr>().is_err());
    }

    #[test]
    fn prime_power_has_two_terms() {
        for (p, l) in [(3u64, 2u32), (3, 3), (3, 4), (5, 2), (7, 2), (5, 3), (11, 2)] {
            let n = p.pow(l);
            let e = psi_expr(n).unwrap().unwrap();
            assert_eq!(e.numerator.len(), 1);
            assert_eq!(e.denominator.len(), 1);
            assert_eq!(e.numerator[0].index as u64, n / 2);
            assert_eq!(e.denominator[0].index as u64, n / (2 * p));
        }
    }

    #[test]
    fn concurrent_psi_matches_sequential() {
        use rayon::prelude::*;
        let seq: Vec<_> = (1..=150).map(|n| psi_wz(n).unwrap()).collect();
        clear_caches();
        let par: Vec<_> = (1..=150u64).into_par_iter().map(|n| psi_wz(n).unwrap()).collect();
        assert_eq!(seq, par);
        let par_main: Vec<_> = (1..=150u64).into_par_iter().map(|n| psi(n).unwrap()).collect();
        assert_eq!(seq, par_main);
    }
}
