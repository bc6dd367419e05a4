//! Exact trigonometric polynomials on the 4-torus `R⁴/Z⁴`.
//!
//! A term is `q · π^m · cos(π⟨K, u⟩)` or `q · π^m · sin(π⟨K, u⟩)` with `q`
//! rational and `K ∈ Z⁴` the doubled frequency, so half-integer frequencies
//! such as `cos(πθ)` are representable. Products expand by product-to-sum
//! and stay in the lattice; π is carried symbolically so that identities
//! involving derivatives cancel exactly.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::precise::{Fixed, HighPrecision};

/// Coordinate names in index order.
pub const COORDS: [&str; 4] = ["x", "y", "z", "θ"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Wave {
    Cos,
    Sin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermKey {
    pub wave: Wave,
    pub freq2: [i64; 4],
    pub pi_power: u32,
}

#[derive(Clone, Default, PartialEq, Eq)]
pub struct TrigScalar {
    terms: BTreeMap<TermKey, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl TrigScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.accumulate(Wave::Cos, [0; 4], 0, q);
        s
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// `cos(π⟨freq2, u⟩)`.
    pub fn cos(freq2: [i64; 4]) -> Self {
        Self::term(Wave::Cos, freq2, BigRational::one(), 0)
    }

    /// `sin(π⟨freq2, u⟩)`.
    pub fn sin(freq2: [i64; 4]) -> Self {
        Self::term(Wave::Sin, freq2, BigRational::one(), 0)
    }

    pub fn term(wave: Wave, freq2: [i64; 4], coeff: BigRational, pi_power: u32) -> Self {
        let mut s = Self::zero();
        s.accumulate(wave, freq2, pi_power, coeff);
        s
    }

    /// Adds a term, normalizing its frequency so the first nonzero entry is
    /// positive.
    fn accumulate(
        &mut self,
        wave: Wave,
        mut freq2: [i64; 4],
        pi_power: u32,
        mut coeff: BigRational,
    ) {
        if coeff.is_zero() {
            return;
        }
        match freq2.iter().find(|k| **k != 0) {
            None if wave == Wave::Sin => return,
            Some(k) if *k < 0 => {
                freq2 = freq2.map(|k| -k);
                if wave == Wave::Sin {
                    coeff = -coeff;
                }
            }
            _ => {}
        }
        let key = TermKey {
            wave,
            freq2,
            pi_power,
        };
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by the rational `q`.
    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.accumulate(k.wave, k.freq2, k.pi_power, c * q);
        }
        out
    }

    /// Multiplies by `π^m`.
    pub fn times_pi(&self, m: u32) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.accumulate(k.wave, k.freq2, k.pi_power + m, c.clone());
        }
        out
    }

    /// `∂/∂u_i`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            let ki = k.freq2[i];
            if ki == 0 {
                continue;
            }
            let (wave, factor) = match k.wave {
                Wave::Cos => (Wave::Sin, -ki),
                Wave::Sin => (Wave::Cos, ki),
            };
            out.accumulate(wave, k.freq2, k.pi_power + 1, c * rat(factor));
        }
        out
    }

    /// Whether no term depends on coordinate `i`.
    pub fn independent_of(&self, i: usize) -> bool {
        self.terms.keys().all(|k| k.freq2[i] == 0)
    }

    /// The value if this is a constant, as a map `π-power → coefficient`.
    pub fn as_constant(&self) -> Option<BTreeMap<u32, BigRational>> {
        self.terms.iter().all(|(k, _)| k.freq2 == [0; 4]).then(|| {
            self.terms
                .iter()
                .map(|(k, c)| (k.pi_power, c.clone()))
                .collect()
        })
    }

    /// Whether this equals exactly `q · π^m`.
    pub fn is_constant_multiple_of_pi_power(&self, q: &BigRational, m: u32) -> bool {
        let mut expected = BTreeMap::new();
        if !q.is_zero() {
            expected.insert(m, q.clone());
        }
        self.as_constant() == Some(expected)
    }

    pub fn eval(&self, u: [f64; 4]) -> f64 {
        self.compile().eval(u)
    }

    pub fn compile(&self) -> CompiledScalar {
        CompiledScalar {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| CompiledTerm {
                    coeff: c.to_f64().unwrap_or(f64::NAN) * PI.powi(k.pi_power as i32),
                    omega: k.freq2.map(|f| PI * f as f64),
                    sin: k.wave == Wave::Sin,
                })
                .collect(),
        }
    }

    /// Value at a rational point to `digits` decimal digits.
    pub fn eval_precise(&self, u: &[BigRational; 4], digits: u32) -> HighPrecision {
        let fx = Fixed::new(digits);
        let mut total = BigInt::zero();
        for (k, c) in &self.terms {
            let r: BigRational = k
                .freq2
                .iter()
                .zip(u)
                .map(|(f, x)| x * rat(*f))
                .fold(BigRational::zero(), |a, b| a + b);
            let (cos, sin) = fx.cos_sin_pi(&r);
            let wave = if k.wave == Wave::Cos { cos } else { sin };
            let coeff = fx.mul(&fx.rational(c), &fx.pi_power(k.pi_power));
            total += fx.mul(&coeff, &wave);
        }
        fx.finish(total)
    }
}

/// Floating-point evaluator for grid sampling.
#[derive(Clone, Debug)]
pub struct CompiledScalar {
    terms: Vec<CompiledTerm>,
}

#[derive(Clone, Debug)]
struct CompiledTerm {
    coeff: f64,
    omega: [f64; 4],
    sin: bool,
}

impl CompiledScalar {
    pub fn eval(&self, u: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                let phase: f64 = t.omega.iter().zip(u).map(|(w, x)| w * x).sum();
                t.coeff * if t.sin { phase.sin() } else { phase.cos() }
            })
            .sum()
    }
}

impl Add for &TrigScalar {
    type Output = TrigScalar;

    fn add(self, rhs: &TrigScalar) -> TrigScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.accumulate(k.wave, k.freq2, k.pi_power, c.clone());
        }
        out
    }
}

impl Neg for &TrigScalar {
    type Output = TrigScalar;

    fn neg(self) -> TrigScalar {
        self.scale(&rat(-1))
    }
}

impl Sub for &TrigScalar {
    type Output = TrigScalar;

    fn sub(self, rhs: &TrigScalar) -> TrigScalar {
        self + &(-rhs)
    }
}

impl Mul for &TrigScalar {
    type Output = TrigScalar;

    fn mul(self, rhs: &TrigScalar) -> TrigScalar {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out = TrigScalar::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let c = ca * cb * &half;
                let m = a.pi_power + b.pi_power;
                let sum: [i64; 4] = std::array::from_fn(|i| a.freq2[i] + b.freq2[i]);
                let diff: [i64; 4] = std::array::from_fn(|i| a.freq2[i] - b.freq2[i]);
                match (a.wave, b.wave) {
                    (Wave::Cos, Wave::Cos) => {
                        out.accumulate(Wave::Cos, diff, m, c.clone());
                        out.accumulate(Wave::Cos, sum, m, c);
                    }
                    (Wave::Sin, Wave::Sin) => {
                        out.accumulate(Wave::Cos, diff, m, c.clone());
                        out.accumulate(Wave::Cos, sum, m, -c);
                    }
                    (Wave::Sin, Wave::Cos) => {
                        out.accumulate(Wave::Sin, sum, m, c.clone());
                        out.accumulate(Wave::Sin, diff, m, c);
                    }
                    (Wave::Cos, Wave::Sin) => {
                        out.accumulate(Wave::Sin, sum, m, c.clone());
                        out.accumulate(Wave::Sin, diff, m, -c);
                    }
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TrigScalar {
            type Output = TrigScalar;
            fn $m(self, rhs: TrigScalar) -> TrigScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TrigScalar {
    type Output = TrigScalar;
    fn neg(self) -> TrigScalar {
        -&self
    }
}

fn fmt_phase(freq2: &[i64; 4]) -> String {
    let mut s = String::new();
    for (k, name) in freq2.iter().zip(COORDS) {
        if *k == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push_str(if *k > 0 { " + " } else { " - " });
        } else if *k < 0 {
            s.push('-');
        }
        match k.abs() {
            1 => s.push_str(name),
            a => s.push_str(&format!("{a}{name}")),
        }
    }
    s
}

impl fmt::Display for TrigScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let pi = match k.pi_power {
                0 => String::new(),
                1 => "π".into(),
                m => format!("π^{m}"),
            };
            if k.freq2 == [0; 4] {
                write!(f, "{mag}{pi}")?;
            } else {
                let coeff = if mag.is_one() {
                    String::new()
                } else {
                    mag.to_string()
                };
                let wave = if k.wave == Wave::Cos { "cos" } else { "sin" };
                write!(f, "{coeff}{pi}{wave}(π({}))", fmt_phase(&k.freq2))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TrigScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: [i64; 4] = [0, 0, 2, 0];

    #[test]
    fn double_angle() {
        let c = TrigScalar::cos(Z2);
        let lhs = &c * &c;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rhs = &TrigScalar::constant(half.clone()) + &TrigScalar::cos([0, 0, 4, 0]).scale(&half);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pythagoras_collapses() {
        let c = TrigScalar::cos([1, 0, 3, -1]);
        let s = TrigScalar::sin([1, 0, 3, -1]);
        assert_eq!(&(&c * &c) + &(&s * &s), TrigScalar::one());
    }

    #[test]
    fn derivative_of_sine() {
        let d = TrigScalar::sin(Z2).partial(2);
        assert_eq!(d, TrigScalar::term(Wave::Cos, Z2, rat(2), 1));
        assert!(TrigScalar::sin(Z2).partial(0).is_zero());
    }

    #[test]
    fn derivative_in_theta_of_mixed_phase() {
        let f = TrigScalar::cos([1, 0, 0, 2]);
        assert_eq!(
            f.partial(3),
            TrigScalar::term(Wave::Sin, [1, 0, 0, 2], rat(-2), 1)
        );
    }

    #[test]
    fn negative_frequencies_normalize() {
        assert_eq!(
            TrigScalar::cos([0, -1, 0, 0]),
            TrigScalar::cos([0, 1, 0, 0])
        );
        assert_eq!(
            TrigScalar::sin([0, -1, 0, 0]),
            -TrigScalar::sin([0, 1, 0, 0])
        );
        assert!(TrigScalar::sin([0; 4]).is_zero());
        assert_eq!(TrigScalar::cos([0; 4]), TrigScalar::one());
    }

    #[test]
    fn precise_evaluation_at_quarter() {
        let s = TrigScalar::sin(Z2).times_pi(1);
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let u = [q(0, 1), q(0, 1), q(1, 4), q(0, 1)];
        let v = s.eval_precise(&u, 40);
        assert!(v
            .to_string()
            .starts_with("3.14159265358979323846264338327950288419"));
    }

    #[test]
    fn display_is_readable() {
        let f = TrigScalar::term(Wave::Sin, [1, 0, 0, 2], rat(-2), 1);
        assert_eq!(f.to_string(), "-2πsin(π(x + 2θ))");
    }
}
