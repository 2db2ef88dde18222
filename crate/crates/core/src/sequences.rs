//! The polynomial sequences `c_n`, `p±_n`, `q±_n` and `t_n`.
//!
//! All of them satisfy `f_n = x f_{n-1} - f_{n-2}` and differ only in their seeds:
//!
//! | family | `f_0` | `f_1` | Chebyshev kind |
//! |--------|-------|-------|----------------|
//! | `c`    | 1     | x     | second, `U_n(x/2)` |
//! | `p-`   | 1     | x - 1 | third, `V_n(x/2)` |
//! | `p+`   | 1     | x + 1 | fourth, `W_n(x/2)` |
//! | `q-`   | 2     | x     | first, `2 T_n(x/2) = t_n` |
//! | `q+`   | 0     | x     | `x c_{n-1}` |
//!
//! `c` is generated by its recurrence (with the extra seeds `c_{-2} = -1`, `c_{-1} = 0`), the
//! `p`/`q` families as sums of neighbouring `c` terms, and `t` by its own recurrence, so the
//! identity `q-_n = t_n` is a genuine cross-check. Closed-form binomial expansions of `c_n` and
//! `t_n` give a second, recursion-free path.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    C,
    PPlus,
    PMinus,
    QPlus,
    QMinus,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::C,
        Family::PPlus,
        Family::PMinus,
        Family::QPlus,
        Family::QMinus,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::C => "c",
            Family::PPlus => "p+",
            Family::PMinus => "p-",
            Family::QPlus => "q+",
            Family::QMinus => "q-",
        }
    }

    fn min_index(self) -> i64 {
        match self {
            Family::C => -2,
            _ => 0,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.symbol() == s)
            .ok_or_else(|| Error::Parse(format!("unknown sequence family {s:?}")))
    }
}

/// A reference to one term of one sequence, written `c_5`, `p+_12`, `q-_15`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqTerm {
    pub family: Family,
    pub index: i64,
}

impl SeqTerm {
    pub fn new(family: Family, index: i64) -> Result<Self> {
        if index < family.min_index() {
            return Err(Error::IndexOutOfRange { family, index });
        }
        Ok(Self { family, index })
    }

    pub fn eval(&self) -> Result<IntPoly> {
        term(*self)
    }
}

impl fmt::Display for SeqTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.index)
    }
}

impl FromStr for SeqTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (fam, idx) = s
            .trim()
            .split_once('_')
            .ok_or_else(|| Error::Parse(format!("expected <family>_<index>, got {s:?}")))?;
        let index = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in term {s:?}")))?;
        SeqTerm::new(fam.parse()?, index)
    }
}

impl Serialize for SeqTerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeqTerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

const CACHE_CAPACITY: usize = 1024;

/// FIFO-bounded memo of evaluated terms.
struct TermCache {
    map: HashMap<SeqTerm, IntPoly>,
    order: VecDeque<SeqTerm>,
}

fn cache() -> &'static Mutex<TermCache> {
    static CACHE: OnceLock<Mutex<TermCache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        Mutex::new(TermCache {
            map: HashMap::new(),
            order: VecDeque::new(),
        })
    })
}

/// Drops every memoized term and recurrence window.
pub fn clear_cache() {
    let mut c = cache().lock().unwrap_or_else(|e| e.into_inner());
    c.map.clear();
    c.order.clear();
    let mut w = windows().lock().unwrap_or_else(|e| e.into_inner());
    w.windows.clear();
    w.order.clear();
}

/// Evaluates a term, consulting the shared memo first.
pub fn term(t: SeqTerm) -> Result<IntPoly> {
    SeqTerm::new(t.family, t.index)?;
    if let Some(p) = cache()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .map
        .get(&t)
    {
        return Ok(p.clone());
    }
    let value = compute(t);
    let mut c = cache().lock().unwrap_or_else(|e| e.into_inner());
    if !c.map.contains_key(&t) {
        if c.order.len() >= CACHE_CAPACITY {
            if let Some(old) = c.order.pop_front() {
                c.map.remove(&old);
            }
        }
        c.order.push_back(t);
        c.map.insert(t, value.clone());
    }
    Ok(value)
}

const WINDOW_CAPACITY: usize = 64;

/// Recent `(c_{k-1}, c_k)` pairs, so a request can resume the recurrence from the nearest
/// lower index instead of from the seeds.
#[derive(Default)]
struct WindowCache {
    windows: BTreeMap<i64, (IntPoly, IntPoly)>,
    order: VecDeque<i64>,
}

fn windows() -> &'static Mutex<WindowCache> {
    static WINDOWS: OnceLock<Mutex<WindowCache>> = OnceLock::new();
    WINDOWS.get_or_init(Default::default)
}

/// `x * cur - prev`.
fn step(cur: &IntPoly, prev: &IntPoly) -> IntPoly {
    let mut coeffs = Vec::with_capacity(cur.coeffs().len() + 1);
    coeffs.push(BigInt::zero());
    coeffs.extend(cur.coeffs().iter().cloned());
    for (a, b) in coeffs.iter_mut().zip(prev.coeffs()) {
        *a -= b;
    }
    IntPoly::new(coeffs)
}

/// `(c_{n-2}, c_{n-1}, c_n)` for `n >= 0`.
fn c_window(n: i64) -> (IntPoly, IntPoly, IntPoly) {
    let start = windows()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .windows
        .range(..=n)
        .next_back()
        .map(|(&k, pair)| (k, pair.clone()));
    let (mut k, (mut prev1, mut cur)) =
        start.unwrap_or_else(|| (0, (IntPoly::zero(), IntPoly::one())));
    // c_{k-2} from the recurrence run backwards
    let mut prev2 = if k == 0 {
        IntPoly::constant(-1)
    } else {
        &IntPoly::x().mul_ref(&prev1) - &cur
    };
    while k < n {
        let next = step(&cur, &prev1);
        prev2 = std::mem::replace(&mut prev1, std::mem::replace(&mut cur, next));
        k += 1;
    }
    if n > 0 {
        let mut w = windows().lock().unwrap_or_else(|e| e.into_inner());
        if !w.windows.contains_key(&n) {
            if w.order.len() >= WINDOW_CAPACITY {
                if let Some(old) = w.order.pop_front() {
                    w.windows.remove(&old);
                }
            }
            w.order.push_back(n);
            w.windows.insert(n, (prev1.clone(), cur.clone()));
        }
    }
    (prev2, prev1, cur)
}

fn compute(t: SeqTerm) -> IntPoly {
    let n = t.index;
    match t.family {
        Family::C => match n {
            -2 => IntPoly::constant(-1),
            -1 => IntPoly::zero(),
            _ => c_window(n).2,
        },
        Family::PPlus => {
            let (_, a, b) = c_window(n);
            &b + &a
        }
        Family::PMinus => {
            let (_, a, b) = c_window(n);
            &b - &a
        }
        Family::QPlus => {
            let (a, _, b) = c_window(n);
            &b + &a
        }
        Family::QMinus => {
            let (a, _, b) = c_window(n);
            &b - &a
        }
    }
}

pub fn c(n: i64) -> Result<IntPoly> {
    term(SeqTerm::new(Family::C, n)?)
}

pub fn p_plus(n: i64) -> Result<IntPoly> {
    term(SeqTerm::new(Family::PPlus, n)?)
}

pub fn p_minus(n: i64) -> Result<IntPoly> {
    term(SeqTerm::new(Family::PMinus, n)?)
}

pub fn q_plus(n: i64) -> Result<IntPoly> {
    term(SeqTerm::new(Family::QPlus, n)?)
}

pub fn q_minus(n: i64) -> Result<IntPoly> {
    term(SeqTerm::new(Family::QMinus, n)?)
}

/// `t_n = 2 T_n(x/2)` from its own recurrence `t_0 = 2`, `t_1 = x`.
pub fn t(n: i64) -> Result<IntPoly> {
    if n < 0 {
        return Err(Error::IndexOutOfRange {
            family: Family::QMinus,
            index: n,
        });
    }
    let mut prev = IntPoly::constant(2);
    let mut cur = IntPoly::x();
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = step(&cur, &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `c_n = sum_k (-1)^k C(n-k, k) x^(n-2k)`, without recursion.
pub fn c_expanded(n: i64) -> Result<IntPoly> {
    if n < 0 {
        return Err(Error::IndexOutOfRange {
            family: Family::C,
            index: n,
        });
    }
    let n = n as usize;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    // C(n-k, k) -> C(n-k-1, k+1) multiplies by (n-2k)(n-2k-1) / ((k+1)(n-k))
    let mut binom = BigInt::from(1);
    for k in 0..=n / 2 {
        coeffs[n - 2 * k] = if k % 2 == 0 { binom.clone() } else { -&binom };
        if 2 * k + 1 < n {
            binom = binom * ((n - 2 * k) * (n - 2 * k - 1)) / ((k + 1) * (n - k));
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// `t_n = sum_k (-1)^k n (n-k-1)! / (k! (n-2k)!) x^(n-2k)` for `n >= 1`, without recursion.
pub fn t_expanded(n: i64) -> Result<IntPoly> {
    if n < 1 {
        return Err(Error::IndexOutOfRange {
            family: Family::QMinus,
            index: n,
        });
    }
    let n = n as usize;
    let factorial = |m: usize| -> BigInt { (1..=m).map(BigInt::from).product() };
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for k in 0..=n / 2 {
        let num = BigInt::from(n) * factorial(n - k - 1);
        let den = factorial(k) * factorial(n - 2 * k);
        let v = num / den;
        coeffs[n - 2 * k] = if k % 2 == 0 { v } else { -v };
    }
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    #[test]
    fn c_seeds_and_listing() {
        assert!(c(-1).unwrap().is_zero());
        assert_eq!(c(-2).unwrap(), IntPoly::constant(-1));
        assert_eq!(c(0).unwrap(), IntPoly::one());
        assert_eq!(c(1).unwrap(), IntPoly::x());
        assert_eq!(c(5).unwrap(), p(&[1, 0, -4, 0, 3, 0]));
        assert_eq!(
            c(13).unwrap(),
            "x^13 - 12*x^11 + 55*x^9 - 120*x^7 + 126*x^5 - 56*x^3 + 7*x"
                .parse()
                .unwrap()
        );
        assert_eq!(
            c(15).unwrap(),
            "x^15 - 14*x^13 + 78*x^11 - 220*x^9 + 330*x^7 - 252*x^5 + 84*x^3 - 8*x"
                .parse()
                .unwrap()
        );
        assert_eq!(
            c(-3),
            Err(Error::IndexOutOfRange {
                family: Family::C,
                index: -3
            })
        );
    }

    #[test]
    fn c_expanded_examples() {
        assert_eq!(c_expanded(0).unwrap(), IntPoly::one());
        assert_eq!(c_expanded(4).unwrap(), p(&[1, 0, -3, 0, 1]));
        assert_eq!(c_expanded(13).unwrap(), c(13).unwrap());
        assert!(c_expanded(-1).is_err());
    }

    #[test]
    fn t_examples() {
        assert_eq!(t(0).unwrap(), IntPoly::constant(2));
        assert_eq!(t(1).unwrap(), IntPoly::x());
        assert_eq!(t(2).unwrap(), p(&[1, 0, -2]));
        assert_eq!(t(3).unwrap(), p(&[1, 0, -3, 0]));
        assert!(t(-1).is_err());
    }

    #[test]
    fn t_expanded_examples() {
        assert_eq!(t_expanded(1).unwrap(), IntPoly::x());
        assert_eq!(t_expanded(3).unwrap(), p(&[1, 0, -3, 0]));
        assert_eq!(t_expanded(15).unwrap(), t(15).unwrap());
        assert!(t_expanded(0).is_err());
    }

    #[test]
    fn p_q_examples() {
        assert_eq!(p_plus(1).unwrap(), p(&[1, 1]));
        assert_eq!(p_minus(1).unwrap(), p(&[1, -1]));
        assert!(q_plus(0).unwrap().is_zero());
        assert_eq!(q_minus(0).unwrap(), IntPoly::constant(2));
        assert_eq!(q_minus(3).unwrap(), t(3).unwrap());
        assert_eq!(p_plus(2).unwrap(), p(&[1, 1, -1]));
        assert_eq!(p_minus(2).unwrap(), p(&[1, -1, -1]));
        assert!(p_plus(-1).is_err());
    }

    #[test]
    fn term_dispatch() {
        let t5: SeqTerm = "c_5".parse().unwrap();
        assert_eq!(term(t5).unwrap(), p(&[1, 0, -4, 0, 3, 0]));
        assert_eq!(term("q-_1".parse().unwrap()).unwrap(), IntPoly::x());
        assert_eq!(term("p+_0".parse().unwrap()).unwrap(), IntPoly::one());
        assert!(term(SeqTerm {
            family: Family::PMinus,
            index: -1
        })
        .is_err());
    }

    #[test]
    fn term_names_round_trip() {
        for s in ["c_5", "p+_12", "p-_7", "q+_3", "q-_15", "c_-2"] {
            assert_eq!(s.parse::<SeqTerm>().unwrap().to_string(), s);
        }
        for bad in ["c5", "r_3", "p+_x", "p-_-1", "c_-3"] {
            assert!(bad.parse::<SeqTerm>().is_err(), "{bad}");
        }
    }

    #[test]
    fn recurrence_and_expansion_agree() {
        let x = IntPoly::x();
        for n in 0..=500i64 {
            let cn = c(n).unwrap();
            assert_eq!(cn, c_expanded(n).unwrap(), "c_{n}");
            assert_eq!(cn.degree(), Some(n as usize));
            assert!(cn.is_monic());
            if n >= 1 {
                assert_eq!(t(n).unwrap(), t_expanded(n).unwrap(), "t_{n}");
                assert_eq!(q_minus(n).unwrap(), t(n).unwrap());
                assert_eq!(q_plus(n).unwrap(), x.mul_ref(&c(n - 1).unwrap()));
            }
            assert_eq!(
                p_plus(n).unwrap(),
                p_minus(n).unwrap().substitute_neg().scale(&BigInt::from(if n % 2 == 0 { 1 } else { -1 }))
            );
        }
    }

    #[test]
    fn window_cache_resumes_in_any_order() {
        for n in [300, 150, 299, 301, 2, 0, 151] {
            assert_eq!(c(n).unwrap(), c_expanded(n).unwrap(), "c_{n}");
            assert_eq!(q_minus(n).unwrap(), t(n).unwrap(), "q-_{n}");
        }
    }

    #[test]
    fn families_share_recurrence() {
        let x = IntPoly::x();
        for fam in Family::ALL {
            let start = fam.min_index().max(0);
            let mut prev2 = term(SeqTerm::new(fam, start).unwrap()).unwrap();
            let mut prev1 = term(SeqTerm::new(fam, start + 1).unwrap()).unwrap();
            for n in start + 2..=500 {
                let cur = term(SeqTerm::new(fam, n).unwrap()).unwrap();
                assert_eq!(cur, &x.mul_ref(&prev1) - &prev2, "{fam}_{n}");
                prev2 = std::mem::replace(&mut prev1, cur);
            }
        }
    }

    #[test]
    fn concurrent_terms_match_sequential() {
        use rayon::prelude::*;
        let seq: Vec<_> = (0..120).map(|n| p_minus(n).unwrap()).collect();
        clear_cache();
        let par: Vec<_> = (0..120).into_par_iter().map(|n| p_minus(n).unwrap()).collect();
        assert_eq!(seq, par);
    }
}
