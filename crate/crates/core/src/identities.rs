//! Executable checks of the polynomial identities among the sequences and the minimal
//! polynomials, plus sweeps that collect them into reports.
//!
//! Everything is exact except [`check_roots_float`], which evaluates in `f64`.

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::cheb_factor::{factor, is_irreducible_t, is_irreducible_vw, ChebKind};
use crate::error::{Error, Result};
use crate::minpoly::{
    cyclotomic, default_precision_bits, divisor_product_target, numeric_expansion, psi,
    psi_barnes, psi_expr, psi_wz, NUMERIC_CEILING, NUMERIC_TOLERANCE,
};
use crate::numtheory::{divisors, euler_phi, factorize, is_prime};
use crate::poly::IntPoly;
use crate::sequences::{c, p_minus, p_plus, q_minus, q_plus, t, Family};

/// Largest index accepted by [`check_roots_float`].
pub const FLOAT_ROOT_CEILING: i64 = 64;

/// Base tolerance of [`check_roots_float`], scaled by `sum |c_k| |r|^k`.
pub const FLOAT_ROOT_TOLERANCE: f64 = 1e-9;

/// A mismatch: what the identity predicts and what was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub params: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of sweeping one identity over a parameter range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub range: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `PASS <name> range=<range>` or `FAIL <name> at <params>`.
impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.failures.first() {
            None => write!(f, "PASS {} range={}", self.name, self.range),
            Some(first) => {
                write!(f, "FAIL {} at {}", self.name, first.params)?;
                if self.failures.len() > 1 {
                    write!(f, " (+{} more)", self.failures.len() - 1)?;
                }
                Ok(())
            }
        }
    }
}

/// `Ok(())` when both sides agree, otherwise `(expected, actual)` rendered as text.
type Outcome = std::result::Result<(), (String, String)>;

fn same(expected: &IntPoly, actual: &IntPoly) -> Outcome {
    if expected == actual {
        Ok(())
    } else {
        Err((expected.to_string(), actual.to_string()))
    }
}

fn error_outcome(e: Error) -> (String, String) {
    ("a value".into(), format!("error: {e}"))
}

fn flatten(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| Err(error_outcome(e)))
}

fn x2_minus_4() -> IntPoly {
    IntPoly::from_desc(&[1, 0, -4])
}

fn prod_c(m: i64, n: i64) -> Result<Outcome> {
    let lhs = x2_minus_4().mul_ref(&c(m)?).mul_ref(&c(n)?);
    let rhs = &t(m + n + 2)? - &t((m - n).abs())?;
    Ok(same(&rhs, &lhs))
}

/// `(x^2 - 4) c_m c_n = t_{m+n+2} - t_{|m-n|}`.
pub fn check_prod_c(m: i64, n: i64) -> bool {
    flatten(prod_c(m, n)).is_ok()
}

fn factor_t_odd(s: i64) -> Result<Outcome> {
    let tn = t(2 * s + 1)?;
    let two = IntPoly::constant(2);
    let plus = IntPoly::from_desc(&[1, 2]).mul_ref(&p_minus(s)?.pow(2));
    let minus = IntPoly::from_desc(&[1, -2]).mul_ref(&p_plus(s)?.pow(2));
    Ok(same(&plus, &(&tn + &two)).and(same(&minus, &(&tn - &two))))
}

/// For `n = 2s + 1`: `t_n + 2 = (x + 2) p-_s^2` and `t_n - 2 = (x - 2) p+_s^2`.
pub fn check_factor_t_odd(s: i64) -> bool {
    flatten(factor_t_odd(s)).is_ok()
}

fn factor_t_even(s: i64) -> Result<Outcome> {
    let tn = t(2 * s)?;
    let two = IntPoly::constant(2);
    let ts = t(s)?;
    let plus = q_minus(s)?.pow(2);
    let minus = x2_minus_4().mul_ref(&c(s - 1)?.pow(2));
    // q+_s^2 / x^2 must agree with c_{s-1}^2
    let via_q_plus = q_plus(s)?
        .pow(2)
        .div_exact(&IntPoly::monomial(1, 2))
        .map(|q| x2_minus_4().mul_ref(&q))?;
    Ok(same(&plus, &(&tn + &two))
        .and(same(&ts.pow(2), &plus))
        .and(same(&minus, &(&tn - &two)))
        .and(same(&minus, &via_q_plus)))
}

/// For `n = 2s`: `t_n + 2 = q-_s^2 = t_s^2` and `t_n - 2 = (x^2 - 4) c_{s-1}^2`.
pub fn check_factor_t_even(s: i64) -> bool {
    s >= 1 && flatten(factor_t_even(s)).is_ok()
}

fn pq_reflection(s: i64) -> Result<Outcome> {
    let reflected = p_minus(s)?.substitute_neg();
    let signed = if s % 2 == 0 { reflected } else { -reflected };
    Ok(same(&p_plus(s)?, &signed))
}

/// `p+_s(x) = (-1)^s p-_s(-x)`.
pub fn check_pq_reflection(s: i64) -> bool {
    flatten(pq_reflection(s)).is_ok()
}

fn c_splitting(s: i64) -> Result<Outcome> {
    let lhs = c(s - 1)?;
    let half = s / 2;
    let rhs = if s % 2 == 1 {
        p_minus(half)?.mul_ref(&p_plus(half)?)
    } else {
        q_minus(half)?.mul_ref(&c(half - 1)?)
    };
    let via_q_plus = q_plus(s)?.div_exact(&IntPoly::x())?;
    Ok(same(&rhs, &lhs).and(same(&lhs, &via_q_plus)))
}

/// `q+_s / x = c_{s-1}`, which splits as `p-_{s'} p+_{s'}` for `s = 2s' + 1` and as
/// `q-_{s'} c_{s'-1}` for `s = 2s'`.
pub fn check_c_splitting(s: i64) -> bool {
    s >= 1 && flatten(c_splitting(s)).is_ok()
}

fn divides(big: &IntPoly, small: &IntPoly) -> bool {
    big.div_exact(small).is_ok()
}

fn divisibility(s: i64, s2: i64) -> Result<Outcome> {
    if s < 1 || s2 < 1 {
        return Err(Error::InvalidInput("indices must be positive".into()));
    }
    let p_predicted = (2 * s2 + 1) % (2 * s + 1) == 0;
    let q_predicted = s2 % s == 0 && (s2 / s) % 2 == 1;
    let observed = (
        divides(&p_minus(s2)?, &p_minus(s)?),
        divides(&p_plus(s2)?, &p_plus(s)?),
        divides(&t(s2)?, &t(s)?),
    );
    let predicted = (p_predicted, p_predicted, q_predicted);
    Ok(if observed == predicted {
        Ok(())
    } else {
        Err((format!("{predicted:?}"), format!("{observed:?}")))
    })
}

/// `p±_s | p±_{s2}` exactly when `(2s + 1) | (2s2 + 1)`, and `t_s | t_{s2}` exactly when
/// `s | s2` with odd quotient. Both the divisible and non-divisible cases are checked.
pub fn check_divisibility(s: i64, s2: i64) -> bool {
    flatten(divisibility(s, s2)).is_ok()
}

/// The roots `2cos(theta)` of a family member, listed from its cosine product form.
pub fn float_roots(family: Family, s: i64) -> Vec<f64> {
    use std::f64::consts::PI;
    let sf = s as f64;
    let two_cos = |theta: f64| 2.0 * theta.cos();
    match family {
        Family::PMinus => (1..=s)
            .map(|k| two_cos((2 * k - 1) as f64 * PI / (2.0 * sf + 1.0)))
            .collect(),
        Family::PPlus => (1..=s)
            .map(|k| two_cos((2 * k) as f64 * PI / (2.0 * sf + 1.0)))
            .collect(),
        Family::QMinus => (1..=s)
            .map(|k| two_cos((2 * k - 1) as f64 * PI / (2.0 * sf)))
            .collect(),
        Family::C => (1..=s).map(|k| two_cos(k as f64 * PI / (sf + 1.0))).collect(),
        Family::QPlus => std::iter::once(0.0)
            .chain((1..s).map(|k| two_cos(k as f64 * PI / sf)))
            .collect(),
    }
}

fn roots_float(family: Family, s: i64) -> Result<Outcome> {
    if s < 1 {
        return Err(Error::InvalidInput("index must be positive".into()));
    }
    if s > FLOAT_ROOT_CEILING {
        return Err(Error::PrecisionExceeded(format!(
            "float root checks are limited to index <= {FLOAT_ROOT_CEILING}, got {s}"
        )));
    }
    let p = crate::sequences::term(crate::sequences::SeqTerm::new(family, s)?)?;
    let roots = float_roots(family, s);
    if p.degree() != Some(roots.len()) {
        return Ok(Err((
            format!("degree {}", roots.len()),
            format!("degree {:?}", p.degree()),
        )));
    }
    for r in roots {
        let value = p.eval_float(r);
        let tol = FLOAT_ROOT_TOLERANCE * p.eval_abs_float(r).max(1.0);
        if value.is_nan() || value.abs() > tol {
            return Ok(Err((
                format!("|{family}_{s}({r})| <= {tol:e}"),
                format!("{value:e}"),
            )));
        }
    }
    Ok(Ok(()))
}

/// Evaluates the family member at each of its listed roots in `f64`. The absolute tolerance is
/// `1e-9` times `sum |c_k| |r|^k` (the scale of the rounding error of Horner's rule).
pub fn check_roots_float(family: Family, s: i64) -> Result<bool> {
    Ok(roots_float(family, s)?.is_ok())
}

fn triple_agreement(n: u64) -> Result<Outcome> {
    let main = psi(n)?;
    Ok(same(&main, &psi_wz(n)?).and(same(&main, &psi_barnes(n)?)))
}

/// `psi(n) = psi_wz(n) = psi_barnes(n)`.
pub fn check_triple_agreement(n: u64) -> bool {
    flatten(triple_agreement(n)).is_ok()
}

fn numeric_agreement(n: u64) -> Result<Outcome> {
    let e = numeric_expansion(n, default_precision_bits(n))?;
    if e.max_deviation > NUMERIC_TOLERANCE {
        return Ok(Err((
            format!("deviation <= {NUMERIC_TOLERANCE:e}"),
            format!("{:e}", e.max_deviation),
        )));
    }
    Ok(same(&psi(n)?, &e.poly))
}

/// `psi(n)` equals the rounded fixed-point root product, whose coefficients sit within
/// `1e-6` of integers before rounding.
pub fn check_numeric_agreement(n: u64) -> bool {
    flatten(numeric_agreement(n)).is_ok()
}

/// `deg psi_n = phi(n)/2` for `n > 2`, `1` for `n` in `{1, 2}`.
pub fn expected_degree(n: u64) -> Result<usize> {
    Ok(if n <= 2 {
        1
    } else {
        euler_phi(n)? as usize / 2
    })
}

fn degree_law(n: u64) -> Result<Outcome> {
    let p = psi(n)?;
    let want = expected_degree(n)?;
    Ok(if p.degree() == Some(want) && p.is_monic() {
        Ok(())
    } else {
        Err((format!("monic of degree {want}"), p.to_string()))
    })
}

pub fn check_degree_law(n: u64) -> bool {
    flatten(degree_law(n)).is_ok()
}

fn wz_product(n: u64) -> Result<Outcome> {
    let factors = divisors(n)?
        .into_iter()
        .map(psi)
        .collect::<Result<Vec<_>>>()?;
    Ok(same(&divisor_product_target(n)?, &IntPoly::product(&factors)))
}

/// `prod_{d | n} psi_d` equals the `t`-difference for `n`.
pub fn check_wz_product(n: u64) -> bool {
    flatten(wz_product(n)).is_ok()
}

fn lehmer(n: u64) -> Result<Outcome> {
    Ok(same(&cyclotomic(n)?, &psi(n)?.laurent_lift()))
}

/// `x^{phi(n)/2} psi_n(x + 1/x) = Phi_n(x)` for `n > 2`.
pub fn check_lehmer(n: u64) -> bool {
    flatten(lehmer(n)).is_ok()
}

fn sign_relation(n: u64) -> Result<Outcome> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("expected odd n, got {n}")));
    }
    let reflected = psi(n)?.substitute_neg();
    let sign = if expected_degree(n)? % 2 == 0 { 1 } else { -1 };
    let expected = reflected.scale(&BigInt::from(sign));
    let actual = psi(2 * n)?;
    Ok(same(&expected, &actual).and(same(&expected.clone().normalize_sign(), &expected)))
}

/// For odd `n`: `psi_{2n}(x) = (-1)^{deg psi_n} psi_n(-x)`, i.e. `psi_n(-x)` made monic.
pub fn check_sign_relation(n: u64) -> bool {
    flatten(sign_relation(n)).is_ok()
}

/// Number of terms in the quotient expression for `psi_n`, `n > 2`: with `i` odd primes and
/// `nu = 1` when all their exponents are 1, it is `2^i - nu` unless `4 | n`, where it is `2^i`.
pub fn expected_term_count(n: u64) -> Result<usize> {
    let f = factorize(n)?;
    let odd: Vec<_> = f.entries.iter().filter(|&&(p, _)| p != 2).collect();
    let full = 1usize << odd.len();
    if f.two_adic() >= 2 {
        return Ok(full);
    }
    let nu = usize::from(odd.iter().all(|&&(_, e)| e == 1));
    Ok(full - nu)
}

fn term_count(n: u64) -> Result<Outcome> {
    let e = psi_expr(n)?.ok_or_else(|| Error::InvalidInput(format!("no expression for {n}")))?;
    let want = expected_term_count(n)?;
    Ok(if e.term_count() == want {
        Ok(())
    } else {
        Err((want.to_string(), e.to_string()))
    })
}

pub fn check_term_count(n: u64) -> bool {
    flatten(term_count(n)).is_ok()
}

fn cheb_factorization(kind: ChebKind, n: u64) -> Result<Outcome> {
    let list = factor(kind, n)?;
    let target = list.target()?;
    let degree_sum: usize = list
        .factors
        .iter()
        .map(|&d| expected_degree(d))
        .sum::<Result<usize>>()?;
    if degree_sum != n as usize {
        return Ok(Err((format!("degree sum {n}"), degree_sum.to_string())));
    }
    Ok(same(&target, &list.product()?))
}

/// The ψ-factor list of `kind` at `n` multiplies back to `t_n`, `p-_n` or `p+_n`.
pub fn check_cheb_factorization(kind: ChebKind, n: u64) -> bool {
    flatten(cheb_factorization(kind, n)).is_ok()
}

fn irreducibility(n: u64) -> Result<Outcome> {
    let t_pred = n.is_power_of_two();
    let vw_pred = is_prime(2 * n + 1);
    let observed = (is_irreducible_t(n)?, is_irreducible_vw(n)?, factor(ChebKind::V, n)?.is_irreducible());
    let predicted = (t_pred, vw_pred, vw_pred);
    Ok(if observed == predicted {
        Ok(())
    } else {
        Err((format!("{predicted:?}"), format!("{observed:?}")))
    })
}

/// `T_n` irreducible iff `n` is a power of 2; `V_n`, `W_n` irreducible iff `2n + 1` is prime.
pub fn check_irreducibility(n: u64) -> bool {
    flatten(irreducibility(n)).is_ok()
}

/// Runs `check` over `params` in parallel and gathers failures in parameter order.
pub fn sweep<P, F>(name: &str, range: String, params: Vec<P>, check: F) -> CheckReport
where
    P: fmt::Debug + Sync,
    F: Fn(&P) -> Result<Outcome> + Sync,
{
    let failures = params
        .par_iter()
        .filter_map(|p| {
            flatten(check(p)).err().map(|(expected, actual)| Failure {
                params: format!("{p:?}"),
                expected,
                actual,
            })
        })
        .collect();
    CheckReport {
        name: name.to_string(),
        range,
        cases: params.len(),
        failures,
    }
}

fn span<T: fmt::Display>(lo: T, hi: T) -> String {
    format!("{lo}..={hi}")
}

pub fn sweep_prod_c(max: i64) -> CheckReport {
    let params: Vec<(i64, i64)> = (0..=max).flat_map(|m| (0..=max).map(move |n| (m, n))).collect();
    sweep(
        "prod_c",
        format!("m,n in {}", span(0, max)),
        params,
        |&(m, n)| prod_c(m, n),
    )
}

pub fn sweep_factor_t_odd(max: i64) -> CheckReport {
    sweep("factor_t_odd", format!("s in {}", span(0, max)), (0..=max).collect(), |&s| {
        factor_t_odd(s)
    })
}

pub fn sweep_factor_t_even(max: i64) -> CheckReport {
    sweep("factor_t_even", format!("s in {}", span(1, max)), (1..=max).collect(), |&s| {
        factor_t_even(s)
    })
}

pub fn sweep_pq_reflection(max: i64) -> CheckReport {
    sweep("pq_reflection", format!("s in {}", span(0, max)), (0..=max).collect(), |&s| {
        pq_reflection(s)
    })
}

pub fn sweep_c_splitting(max: i64) -> CheckReport {
    sweep("c_splitting", format!("s in {}", span(1, max)), (1..=max).collect(), |&s| {
        c_splitting(s)
    })
}

pub fn sweep_divisibility(max_s: i64, max_s2: i64) -> CheckReport {
    let params: Vec<(i64, i64)> = (1..=max_s)
        .flat_map(|s| (1..=max_s2).map(move |s2| (s, s2)))
        .collect();
    sweep(
        "divisibility",
        format!("s in {}, s2 in {}", span(1, max_s), span(1, max_s2)),
        params,
        |&(s, s2)| divisibility(s, s2),
    )
}

pub fn sweep_roots_float(max: i64) -> CheckReport {
    let max = max.min(FLOAT_ROOT_CEILING);
    let params: Vec<(Family, i64)> = Family::ALL
        .into_iter()
        .flat_map(|f| (1..=max).map(move |s| (f, s)))
        .collect();
    sweep(
        "roots_float",
        format!("all families, s in {}", span(1, max)),
        params,
        |&(f, s)| roots_float(f, s),
    )
}

pub fn sweep_triple_agreement(max: u64) -> CheckReport {
    sweep("psi_triple_agreement", format!("n in {}", span(3, max)), (3..=max).collect(), |&n| {
        triple_agreement(n)
    })
}

pub fn sweep_numeric_agreement(max: u64) -> CheckReport {
    let max = max.min(NUMERIC_CEILING);
    sweep("psi_numeric_agreement", format!("n in {}", span(1, max)), (1..=max).collect(), |&n| {
        numeric_agreement(n)
    })
}

pub fn sweep_degree_law(max: u64) -> CheckReport {
    sweep("psi_degree_law", format!("n in {}", span(1, max)), (1..=max).collect(), |&n| {
        degree_law(n)
    })
}

pub fn sweep_wz_product(max: u64) -> CheckReport {
    sweep("wz_divisor_product", format!("n in {}", span(1, max)), (1..=max).collect(), |&n| {
        wz_product(n)
    })
}

pub fn sweep_lehmer(max: u64) -> CheckReport {
    sweep("lehmer_cyclotomic", format!("n in {}", span(3, max)), (3..=max).collect(), |&n| {
        lehmer(n)
    })
}

pub fn sweep_sign_relation(max: u64) -> CheckReport {
    sweep(
        "psi_sign_relation",
        format!("odd n in {}", span(3, max)),
        (3..=max).step_by(2).collect(),
        |&n| sign_relation(n),
    )
}

pub fn sweep_term_count(max: u64) -> CheckReport {
    sweep("psi_term_count", format!("n in {}", span(3, max)), (3..=max).collect(), |&n| {
        term_count(n)
    })
}

pub fn sweep_cheb_factorization(max: u64) -> CheckReport {
    let params: Vec<(ChebKind, u64)> = [ChebKind::T, ChebKind::V, ChebKind::W]
        .into_iter()
        .flat_map(|k| (1..=max).map(move |n| (k, n)))
        .collect();
    sweep(
        "cheb_factorization",
        format!("T,V,W with n in {}", span(1, max)),
        params,
        |&(k, n)| cheb_factorization(k, n),
    )
}

pub fn sweep_irreducibility(max: u64) -> CheckReport {
    sweep("irreducibility", format!("n in {}", span(1, max)), (1..=max).collect(), |&n| {
        irreducibility(n)
    })
}

/// Every sweep, with ranges scaled to `max_n`; expensive families are capped (products of
/// `c` terms at 100, divisibility at 40 x 200, float roots at 64, numeric at 200).
/// Reports come back in a fixed order. `max_n = 0` runs nothing.
pub fn run_suite(max_n: u64) -> Vec<CheckReport> {
    if max_n == 0 {
        return Vec::new();
    }
    let m = max_n as i64;
    let jobs: Vec<Box<dyn Fn() -> CheckReport + Sync + Send>> = vec![
        Box::new(move || sweep_prod_c(m.min(100))),
        Box::new(move || sweep_factor_t_odd(m)),
        Box::new(move || sweep_factor_t_even(m)),
        Box::new(move || sweep_pq_reflection(m)),
        Box::new(move || sweep_c_splitting(m)),
        Box::new(move || sweep_divisibility(m.min(40), m.min(200))),
        Box::new(move || sweep_roots_float(m)),
        Box::new(move || sweep_triple_agreement(max_n)),
        Box::new(move || sweep_numeric_agreement(max_n)),
        Box::new(move || sweep_degree_law(max_n)),
        Box::new(move || sweep_wz_product(max_n)),
        Box::new(move || sweep_lehmer(max_n)),
        Box::new(move || sweep_sign_relation(max_n)),
        Box::new(move || sweep_term_count(max_n)),
        Box::new(move || sweep_cheb_factorization(max_n)),
        Box::new(move || sweep_irreducibility(max_n)),
    ];
    jobs.par_iter().map(|job| job()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prod_c_examples() {
        assert!(check_prod_c(0, 0));
        assert!(check_prod_c(1, 1));
        assert!(check_prod_c(5, 13));
        assert!(check_prod_c(13, 5));
    }

    #[test]
    fn factor_t_examples() {
        assert!(check_factor_t_odd(0));
        assert!(check_factor_t_odd(1));
        assert!(check_factor_t_odd(100));
        assert!(check_factor_t_even(1));
        assert!(check_factor_t_even(2));
        assert!(check_factor_t_even(150));
        assert!(!check_factor_t_even(0));
    }

    #[test]
    fn reflection_and_splitting_examples() {
        assert!(check_pq_reflection(0));
        assert!(check_pq_reflection(2));
        assert!(check_pq_reflection(101));
        assert!(check_c_splitting(2));
        assert!(check_c_splitting(3));
        assert!(check_c_splitting(200));
    }

    #[test]
    fn divisibility_examples() {
        assert!(check_divisibility(1, 4));
        assert!(p_plus(4).unwrap().div_exact(&p_plus(1).unwrap()).is_ok());
        assert!(check_divisibility(2, 6));
        assert!(t(6).unwrap().div_exact(&t(2).unwrap()).is_ok());
        assert!(check_divisibility(2, 4));
        assert!(t(4).unwrap().div_exact(&t(2).unwrap()).is_err());
        assert!(!check_divisibility(0, 4));
    }

    #[test]
    fn roots_float_examples() {
        assert!(check_roots_float(Family::PMinus, 1).unwrap());
        assert!(check_roots_float(Family::QMinus, 2).unwrap());
        assert!(check_roots_float(Family::PPlus, 2).unwrap());
        assert!(check_roots_float(Family::C, 30).unwrap());
        assert!(check_roots_float(Family::QPlus, 64).unwrap());
        assert!(matches!(
            check_roots_float(Family::PPlus, 65),
            Err(Error::PrecisionExceeded(_))
        ));
    }

    #[test]
    fn roots_float_rejects_wrong_roots() {
        // p+ roots do not annihilate p-
        let p = p_minus(3).unwrap();
        let r = float_roots(Family::PPlus, 3)[0];
        assert!(p.eval_float(r).abs() > FLOAT_ROOT_TOLERANCE * p.eval_abs_float(r));
    }

    #[test]
    fn expected_term_counts() {
        assert_eq!(expected_term_count(105).unwrap(), 7);
        assert_eq!(expected_term_count(45).unwrap(), 4);
        assert_eq!(expected_term_count(60).unwrap(), 4);
        assert_eq!(expected_term_count(3).unwrap(), 1);
        assert_eq!(expected_term_count(8).unwrap(), 1);
        assert_eq!(expected_term_count(30).unwrap(), 3);
    }

    #[test]
    fn minpoly_checks_small() {
        for n in 3..=40 {
            assert!(check_triple_agreement(n), "{n}");
            assert!(check_lehmer(n), "{n}");
            assert!(check_term_count(n), "{n}");
        }
        for n in 1..=40 {
            assert!(check_numeric_agreement(n), "{n}");
            assert!(check_degree_law(n), "{n}");
            assert!(check_wz_product(n), "{n}");
            assert!(check_irreducibility(n), "{n}");
            for k in [ChebKind::T, ChebKind::V, ChebKind::W] {
                assert!(check_cheb_factorization(k, n), "{k} {n}");
            }
        }
        assert!(check_sign_relation(15));
        assert!(!check_sign_relation(16));
    }

    #[test]
    fn suite_small() {
        let reports = run_suite(10);
        assert_eq!(reports.len(), 16);
        for r in &reports {
            assert!(r.passed(), "{r}: {:?}", r.failures);
            assert!(r.to_string().starts_with("PASS "));
        }
        assert_eq!(reports, run_suite(10));
        assert!(run_suite(0).is_empty());
    }

    #[test]
    fn failing_report_renders_params() {
        let r = sweep("broken", "s in 1..=3".into(), vec![1i64, 2, 3], |&s| {
            Ok(if s == 2 {
                Err(("x".into(), "y".into()))
            } else {
                Ok(())
            })
        });
        assert!(!r.passed());
        assert_eq!(r.to_string(), "FAIL broken at 2");
        assert_eq!(r.failures[0].expected, "x");
    }
}
