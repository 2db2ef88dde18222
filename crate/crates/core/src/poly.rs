//! Dense univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial over the integers.
///
/// `coeffs[k]` is the coefficient of `x^k`. The vector is always normalized:
/// the last entry is nonzero, and the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    /// Builds from machine integers in ascending order.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from machine integers in descending order, the way polynomials are usually written.
    pub fn from_desc(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` standing for the degree of the zero polynomial (negative infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Largest absolute value among the coefficients.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Schoolbook product.
    pub fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul_ref(self))
    }

    /// Product of an iterator of polynomials; the empty product is 1.
    pub fn product<'a>(items: impl IntoIterator<Item = &'a IntPoly>) -> Self {
        items
            .into_iter()
            .fold(Self::one(), |acc, p| acc.mul_ref(p))
    }

    /// Long division over the integers: returns `(q, r)` with `self = divisor * q + r`
    /// and `deg r < deg divisor`.
    ///
    /// Fails with `NotDivisible` as soon as a quotient coefficient is not an integer.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivideByZero)?;
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let monic = lead.is_one();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - db];
        for k in (0..quot.len()).rev() {
            let top = std::mem::take(&mut rem[k + db]);
            if top.is_zero() {
                continue;
            }
            let q = if monic {
                top
            } else {
                let (q, r) = top.div_rem(lead);
                if !r.is_zero() {
                    return Err(Error::NotDivisible);
                }
                q
            };
            for (j, b) in divisor.coeffs[..db].iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        rem.truncate(db);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient `self / divisor`; any nonzero remainder is an error.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    /// Horner evaluation in `f64`.
    pub fn eval_float(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Sum of `|c_k| |x|^k`, the natural scale for rounding error in [`IntPoly::eval_float`].
    pub fn eval_abs_float(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * ax + c.abs().to_f64().unwrap_or(f64::INFINITY))
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(-x)`.
    pub fn substitute_neg(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// `x^d * p(x + 1/x)` with `d = deg p`, a polynomial of degree `2d`.
    pub fn laurent_lift(&self) -> Self {
        let Some(d) = self.degree() else {
            return Self::zero();
        };
        // sum_k c_k (x^2 + 1)^k x^(d - k)
        let x2_plus_1 = Self::from_i64s(&[1, 0, 1]);
        let mut power = Self::one();
        let mut out = Self::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &power.scale(c).shift(d - k);
            }
            if k < d {
                power = power.mul_ref(&x2_plus_1);
            }
        }
        out
    }

    /// Multiplies by `-1` if needed so that the leading coefficient is positive.
    pub fn normalize_sign(self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self,
        }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        IntPoly::new(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        self.mul_ref(rhs)
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

/// Renders as `x^8 - 7*x^6 + 14*x^4 - 8*x^2 + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) grammar with arbitrary whitespace. Repeated
    /// powers are summed.
    fn from_str(s: &str) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        if text.is_empty() {
            return Err(bad("empty input"));
        }
        let bytes = text.as_bytes();
        let mut pos = 0;
        let mut coeffs: Vec<BigInt> = Vec::new();
        let digits = |pos: &mut usize| -> Option<&str> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (*pos > start).then(|| &text[start..*pos])
        };
        while pos < bytes.len() {
            let negative = match bytes[pos] {
                b'+' => {
                    pos += 1;
                    false
                }
                b'-' => {
                    pos += 1;
                    true
                }
                _ if pos == 0 => false,
                _ => return Err(bad("expected '+' or '-'")),
            };
            let coeff = digits(&mut pos).map(|d| d.parse::<BigInt>().expect("ascii digits"));
            let mut power = 0usize;
            let has_x = if coeff.is_some() && bytes.get(pos) == Some(&b'*') {
                pos += 1;
                if bytes.get(pos) != Some(&b'x') {
                    return Err(bad("expected 'x' after '*'"));
                }
                true
            } else {
                bytes.get(pos) == Some(&b'x')
            };
            if has_x {
                pos += 1;
                power = 1;
                if bytes.get(pos) == Some(&b'^') {
                    pos += 1;
                    power = digits(&mut pos)
                        .ok_or_else(|| bad("expected exponent"))?
                        .parse()
                        .map_err(|_| bad("exponent too large"))?;
                }
            } else if coeff.is_none() {
                return Err(bad("expected a term"));
            }
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            coeffs[power] += c;
        }
        Ok(Self::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2, 0]));
        assert_eq!(&IntPoly::zero() + &p(&[3, 4]), p(&[3, 4]));
        assert_eq!(&p(&[1, 0, -1]) + &p(&[1, 0]), p(&[1, 1, -1]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), IntPoly::zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1]), p(&[1, 0, -1]));
        let sq = p(&[1, -1]).pow(2);
        assert_eq!(&p(&[1, 2]) * &sq, p(&[1, 0, -3, 2]));
        assert!((&p(&[5, 1, 2]) * &IntPoly::zero()).is_zero());
    }

    #[test]
    fn div_exact_examples() {
        assert_eq!(p(&[1, 0, -1]).div_exact(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        assert_eq!(
            p(&[1, 0, -3, 2]).div_exact(&p(&[1, 2])).unwrap(),
            p(&[1, -2, 1])
        );
        assert_eq!(
            p(&[1, 0, 1]).div_exact(&p(&[1, -1])),
            Err(Error::NotDivisible)
        );
        assert_eq!(
            p(&[1, 0, 1]).div_exact(&IntPoly::zero()),
            Err(Error::DivideByZero)
        );
    }

    #[test]
    fn div_rejects_fractional_quotient() {
        // (x^2 - 1) / (2x - 2) = (x + 1) / 2
        assert_eq!(
            p(&[1, 0, -1]).div_exact(&p(&[2, -2])),
            Err(Error::NotDivisible)
        );
        assert_eq!(p(&[4, 0, -4]).div_exact(&p(&[2, -2])).unwrap(), p(&[2, 2]));
    }

    #[test]
    fn div_smaller_degree() {
        let (q, r) = p(&[1, 1]).div_rem(&p(&[1, 0, 0])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, p(&[1, 1]));
        assert_eq!(
            IntPoly::zero().div_exact(&p(&[1, 1])).unwrap(),
            IntPoly::zero()
        );
    }

    #[test]
    fn eval_float_examples() {
        assert_eq!(p(&[1, 0, -3]).eval_float(0.0), -3.0);
        assert!(p(&[1, 0, -3]).eval_float(2.0 * (std::f64::consts::PI / 6.0).cos()).abs() < 1e-9);
        assert_eq!(IntPoly::x().eval_float(7.5), 7.5);
    }

    #[test]
    fn substitute_neg_examples() {
        assert_eq!(p(&[1, 1]).substitute_neg(), p(&[-1, 1]));
        assert_eq!(p(&[1, -1, -1]).substitute_neg(), p(&[1, 1, -1]));
        assert_eq!(p(&[1, 0, 0]).substitute_neg(), p(&[1, 0, 0]));
    }

    #[test]
    fn laurent_lift_examples() {
        assert_eq!(p(&[1, -2]).laurent_lift(), p(&[1, -2, 1]));
        assert_eq!(IntPoly::one().laurent_lift(), IntPoly::one());
        assert_eq!(p(&[1, 1]).laurent_lift(), p(&[1, 1, 1]));
        assert!(IntPoly::zero().laurent_lift().is_zero());
    }

    #[test]
    fn degree_and_zero() {
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(IntPoly::constant(5).degree(), Some(0));
        assert_eq!(IntPoly::from_i64s(&[1, 2, 0, 0]).degree(), Some(1));
    }

    #[test]
    fn display_format() {
        assert_eq!(
            p(&[1, 0, -7, 0, 14, 0, -8, 0, 1]).to_string(),
            "x^8 - 7*x^6 + 14*x^4 - 8*x^2 + 1"
        );
        assert_eq!(p(&[1, 2]).to_string(), "x + 2");
        assert_eq!(p(&[-1, 0, 3]).to_string(), "-x^2 + 3");
        assert_eq!(p(&[-4]).to_string(), "-4");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[2, -1, 0]).to_string(), "2*x^2 - x");
    }

    #[test]
    fn parse_accepts_display_grammar() {
        let q: IntPoly = "x^8 - 7*x^6 + 14*x^4 - 8*x^2 + 1".parse().unwrap();
        assert_eq!(q, p(&[1, 0, -7, 0, 14, 0, -8, 0, 1]));
        assert_eq!("  -x^2+3 ".parse::<IntPoly>().unwrap(), p(&[-1, 0, 3]));
        assert_eq!("x + x".parse::<IntPoly>().unwrap(), p(&[2, 0]));
        assert_eq!("0".parse::<IntPoly>().unwrap(), IntPoly::zero());
        assert!("".parse::<IntPoly>().is_err());
        assert!("x^".parse::<IntPoly>().is_err());
        assert!("2*".parse::<IntPoly>().is_err());
        assert!("x y".parse::<IntPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-50i64..50, 0..8).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn div_inverts_mul(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn substitute_neg_involution(a in arb_poly()) {
            prop_assert_eq!(a.substitute_neg().substitute_neg(), a);
        }

        #[test]
        fn laurent_lift_multiplicative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!((&a * &b).laurent_lift(), &a.laurent_lift() * &b.laurent_lift());
        }

        #[test]
        fn results_normalized(a in arb_poly(), b in arb_poly()) {
            for r in [&a + &b, &a - &b, &a * &b, a.substitute_neg(), a.laurent_lift()] {
                prop_assert!(r.leading().is_none_or(|l| !l.is_zero()));
            }
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<IntPoly>().unwrap(), a);
        }
    }
}
