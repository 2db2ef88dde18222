//! Binary fixed-point reals on top of `BigInt`, just enough for cosines of rational
//! multiples of pi at a chosen precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fixed-point context: a value `v` represents `v / 2^bits`.
#[derive(Debug, Clone)]
pub struct Fixed {
    bits: u32,
    one: BigInt,
}

impl Fixed {
    pub fn new(bits: u32) -> Self {
        Self {
            bits,
            one: BigInt::one() << bits,
        }
    }

    pub fn one(&self) -> &BigInt {
        &self.one
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) >> self.bits
    }

    /// `atan(1/k)` by its alternating series.
    fn atan_inv(&self, k: u32) -> BigInt {
        let k2 = BigInt::from(k) * k;
        let mut term = &self.one / k;
        let mut sum = BigInt::zero();
        let mut j = 0u32;
        while !term.is_zero() {
            let t = &term / (2 * j + 1);
            if j.is_multiple_of(2) {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &k2;
            j += 1;
        }
        sum
    }

    /// Machin's formula.
    pub fn pi(&self) -> BigInt {
        self.atan_inv(5) * 16 - self.atan_inv(239) * 4
    }

    /// Taylor series; intended for `|theta| <= pi`.
    pub fn cos(&self, theta: &BigInt) -> BigInt {
        let theta2 = self.mul(theta, theta);
        let mut term = self.one.clone();
        let mut sum = self.one.clone();
        let mut j = 1u64;
        loop {
            term = -self.mul(&term, &theta2) / ((2 * j - 1) * (2 * j));
            if term.is_zero() {
                return sum;
            }
            sum += &term;
            j += 1;
        }
    }

    /// Nearest integer and the absolute distance to it, as `f64`.
    pub fn round(&self, v: &BigInt) -> (BigInt, f64) {
        let half = &self.one >> 1u32;
        let (q, _) = (v + &half).div_mod_floor(&self.one);
        let err = (v - (&q << self.bits)).abs();
        (q, self.to_f64(&err))
    }

    pub fn to_f64(&self, v: &BigInt) -> f64 {
        // Keep 64 significant bits before converting to avoid overflowing f64.
        let excess = v.bits().saturating_sub(64);
        let mantissa = (v >> excess).to_f64().unwrap_or(f64::NAN);
        mantissa * 2f64.powi(excess as i32 - self.bits as i32)
    }
}
