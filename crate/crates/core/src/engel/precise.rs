//! Fixed-point decimal evaluation of `cos(πr)`, `sin(πr)` and `π^m` at
//! rational `r`, to a requested number of digits.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD_DIGITS: u32 = 12;

/// `scaled / 10^digits`, accurate to within a few units in the last place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighPrecision {
    scaled: BigInt,
    digits: u32,
}

impl HighPrecision {
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn scaled(&self) -> &BigInt {
        &self.scaled
    }

    pub fn to_f64(&self) -> f64 {
        let r = BigRational::new(self.scaled.clone(), BigInt::from(10).pow(self.digits));
        r.to_f64().unwrap_or(f64::NAN)
    }

    /// `|self - other| <= 10^-digits_agreed`.
    pub fn agrees_with(&self, other: f64, digits_agreed: u32) -> bool {
        (self.to_f64() - other).abs() <= 10f64.powi(-(digits_agreed as i32))
    }

    /// `|self - q| <= 10^-digits_agreed`, compared exactly.
    pub fn agrees_with_rational(&self, q: &BigRational, digits_agreed: u32) -> bool {
        let me = BigRational::new(self.scaled.clone(), BigInt::from(10).pow(self.digits));
        let bound = BigRational::new(BigInt::one(), BigInt::from(10).pow(digits_agreed));
        (me - q).abs() <= bound
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = BigInt::from(10).pow(self.digits);
        let sign = if self.scaled.is_negative() { "-" } else { "" };
        let (int, frac) = self.scaled.abs().div_rem(&unit);
        write!(
            f,
            "{sign}{int}.{:0>width$}",
            frac,
            width = self.digits as usize
        )
    }
}

/// Working scale `10^(digits + guard)`.
pub(crate) struct Fixed {
    scale: BigInt,
    digits: u32,
    pi: BigInt,
}

impl Fixed {
    pub(crate) fn new(digits: u32) -> Self {
        let scale = BigInt::from(10).pow(digits + GUARD_DIGITS);
        let pi = machin_pi(&scale);
        Self { scale, digits, pi }
    }

    pub(crate) fn one(&self) -> BigInt {
        self.scale.clone()
    }

    pub(crate) fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b).div_floor(&self.scale)
    }

    pub(crate) fn rational(&self, q: &BigRational) -> BigInt {
        (q.numer() * &self.scale).div_floor(q.denom())
    }

    pub(crate) fn pi_power(&self, m: u32) -> BigInt {
        (0..m).fold(self.one(), |acc, _| self.mul(&acc, &self.pi))
    }

    /// `(cos(πr), sin(πr))`.
    pub(crate) fn cos_sin_pi(&self, r: &BigRational) -> (BigInt, BigInt) {
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::one();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut r = r - &two * (r / &two).floor();
        let mut cos_sign = 1;
        let mut sin_sign = 1;
        if r >= one {
            r -= &one;
            cos_sign = -cos_sign;
            sin_sign = -sin_sign;
        }
        if r > half {
            r = &one - r;
            cos_sign = -cos_sign;
        }
        let x = (&self.pi * r.numer()).div_floor(r.denom());
        let (c, s) = self.taylor(&x);
        (c * cos_sign, s * sin_sign)
    }

    fn taylor(&self, x: &BigInt) -> (BigInt, BigInt) {
        let mut cos = BigInt::zero();
        let mut sin = BigInt::zero();
        let mut term = self.one(); // x^k / k!
        let mut k: u64 = 0;
        while !term.is_zero() {
            match k % 4 {
                0 => cos += &term,
                1 => sin += &term,
                2 => cos -= &term,
                _ => sin -= &term,
            }
            k += 1;
            term = self.mul(&term, x) / BigInt::from(k);
        }
        (cos, sin)
    }

    pub(crate) fn finish(&self, v: BigInt) -> HighPrecision {
        let guard = BigInt::from(10).pow(GUARD_DIGITS);
        HighPrecision {
            scaled: v.div_floor(&guard),
            digits: self.digits,
        }
    }
}

/// π = 16·atan(1/5) − 4·atan(1/239) at the given fixed-point scale.
fn machin_pi(scale: &BigInt) -> BigInt {
    let extra = BigInt::from(10).pow(6);
    let s = scale * &extra;
    let pi = BigInt::from(16) * atan_inv(5, &s) - BigInt::from(4) * atan_inv(239, &s);
    pi / extra
}

fn atan_inv(x: i64, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x; // scale / x^(2k+1)
    let mut sum = BigInt::zero();
    let mut k: i64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn pi_to_fifty_digits() {
        let f = Fixed::new(50);
        let pi = f.finish(f.pi_power(1));
        assert_eq!(pi.to_string(), PI_50);
    }

    #[test]
    fn special_angles() {
        let f = Fixed::new(40);
        let (c, s) = f.cos_sin_pi(&q(1, 2));
        assert!(f.finish(c).agrees_with_rational(&q(0, 1), 38));
        assert!(f.finish(s).agrees_with_rational(&q(1, 1), 38));
        let (c, _) = f.cos_sin_pi(&q(1, 3));
        assert!(f.finish(c).agrees_with_rational(&q(1, 2), 38));
        let (c, s) = f.cos_sin_pi(&q(-7, 6));
        assert!(f.finish(c).agrees_with(-(3f64.sqrt()) / 2.0, 15));
        assert!(f.finish(s).agrees_with_rational(&q(1, 2), 38));
    }

    #[test]
    fn matches_f64_at_generic_points() {
        let f = Fixed::new(30);
        for (n, d) in [(1, 7), (13, 5), (-22, 9), (101, 37)] {
            let r = n as f64 / d as f64;
            let (c, s) = f.cos_sin_pi(&q(n, d));
            assert!(f
                .finish(c)
                .agrees_with((std::f64::consts::PI * r).cos(), 14));
            assert!(f
                .finish(s)
                .agrees_with((std::f64::consts::PI * r).sin(), 14));
        }
    }
}
