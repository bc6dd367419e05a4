use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::field::TrigVectorField;
use super::trig::{TrigScalar, COORDS};
use crate::error::{Error, Result};

/// Bitmask of `dx∧dy∧dz`.
pub const VOLUME_XYZ: u8 = 0b0111;

/// A differential form on `T⁴`, stored as `Σ f_I dx_I` with `I` an
/// increasing multi-index encoded as a bitmask (bit `i` is coordinate `i`).
#[derive(Clone, PartialEq, Eq)]
pub struct TrigForm {
    degree: u32,
    comps: BTreeMap<u8, TrigScalar>,
}

/// One-forms are the degree-1 case of [`TrigForm`].
pub type TrigOneForm = TrigForm;

impl TrigForm {
    pub fn zero(degree: u32) -> Self {
        Self {
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn one_form(comps: [TrigScalar; 4]) -> Self {
        let mut f = Self::zero(1);
        for (i, c) in comps.into_iter().enumerate() {
            f.insert(1 << i, c);
        }
        f
    }

    /// `dx_i`.
    pub fn differential(i: usize) -> Self {
        let mut f = Self::zero(1);
        f.insert(1 << i, TrigScalar::one());
        f
    }

    fn insert(&mut self, mask: u8, c: TrigScalar) {
        let slot = self.comps.entry(mask).or_default();
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.comps.remove(&mask);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn component(&self, mask: u8) -> TrigScalar {
        self.comps.get(&mask).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn independent_of(&self, i: usize) -> bool {
        self.comps.values().all(|c| c.independent_of(i))
    }

    /// Exterior derivative.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.degree + 1);
        if self.degree >= 4 {
            return out;
        }
        for (&mask, f) in &self.comps {
            for i in 0..4 {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let df = f.partial(i);
                if df.is_zero() {
                    continue;
                }
                let before = (mask & ((1 << i) - 1)).count_ones();
                let df = if before % 2 == 1 { -df } else { df };
                out.insert(mask | (1 << i), df);
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (&a, f) in &self.comps {
            for (&b, g) in &other.comps {
                if a & b != 0 {
                    continue;
                }
                // transpositions needed to sort dx_a ∧ dx_b
                let swaps: u32 = (0..4)
                    .filter(|i| a & (1 << i) != 0)
                    .map(|i| (b & ((1u8 << i) - 1)).count_ones())
                    .sum();
                let fg = f * g;
                out.insert(a | b, if swaps % 2 == 1 { -fg } else { fg });
            }
        }
        out
    }

    /// `α(X)` for a one-form `α`.
    pub fn pair(&self, x: &TrigVectorField) -> Result<TrigScalar> {
        if self.degree != 1 {
            return Err(Error::Precondition(format!(
                "pairing with a vector field needs a 1-form, got degree {}",
                self.degree
            )));
        }
        Ok((0..4).fold(TrigScalar::zero(), |acc, i| {
            &acc + &(&self.component(1 << i) * x.component(i))
        }))
    }

    pub fn eval_component(&self, mask: u8, u: [f64; 4]) -> f64 {
        self.comps.get(&mask).map_or(0.0, |c| c.eval(u))
    }
}

impl fmt::Display for TrigForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (k, (mask, c)) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let basis: Vec<String> = (0..4)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| format!("d{}", COORDS[i]))
                .collect();
            write!(f, "({c}){}", basis.join("∧"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TrigForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Outcome of the contact test `α∧dα ≠ 0` for a 1-form on `T³`.
#[derive(Clone, Debug, Serialize)]
pub struct ContactReport {
    pub contact: bool,
    /// `α∧dα = volume · dx∧dy∧dz`.
    pub volume: String,
    pub constant: bool,
    /// Present only for a constant volume; keyed by power of π.
    pub constant_value: Option<BTreeMap<u32, String>>,
    /// Smallest `|volume|` seen on the sampling grid.
    pub min_abs: f64,
    /// False when sampling could neither exhibit a sign change nor bound
    /// the volume away from zero.
    pub certified: bool,
    #[serde(skip)]
    pub volume_exact: TrigScalar,
}

const CERTIFY_GRIDS: [usize; 3] = [16, 32, 64];

/// Computes `α∧dα` symbolically. A constant volume is decided exactly; a
/// varying one by a grid search for a sign change and, failing that, a
/// Lipschitz bound that keeps `|volume|` away from zero between samples.
pub fn contact_check(alpha: &TrigForm) -> Result<ContactReport> {
    if alpha.degree() != 1 {
        return Err(Error::Precondition(format!(
            "contact test needs a 1-form, got degree {}",
            alpha.degree()
        )));
    }
    if !alpha.independent_of(3) || !alpha.component(1 << 3).is_zero() {
        return Err(Error::Precondition(
            "contact test needs a form on T³ (no θ dependence, no dθ term)".into(),
        ));
    }
    let volume = alpha.wedge(&alpha.d()).component(VOLUME_XYZ);
    if let Some(value) = volume.as_constant() {
        let v = volume.eval([0.0; 4]);
        return Ok(ContactReport {
            contact: !value.is_empty(),
            volume: volume.to_string(),
            constant: true,
            constant_value: Some(value.into_iter().map(|(m, q)| (m, q.to_string())).collect()),
            min_abs: v.abs(),
            certified: true,
            volume_exact: volume,
        });
    }

    let compiled = volume.compile();
    // |∂_i volume| ≤ L_i everywhere
    let lipschitz: [f64; 3] = std::array::from_fn(|i| {
        volume
            .terms()
            .map(|(k, c)| {
                c.abs().to_f64().unwrap_or(f64::INFINITY)
                    * std::f64::consts::PI.powi(k.pi_power as i32 + 1)
                    * k.freq2[i].abs() as f64
            })
            .sum()
    });
    let mut min_abs = f64::INFINITY;
    let mut contact = false;
    let mut certified = false;
    for &g in &CERTIFY_GRIDS {
        let h = 1.0 / g as f64;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for a in 0..g {
            for b in 0..g {
                for c in 0..g {
                    let v = compiled.eval([a as f64 * h, b as f64 * h, c as f64 * h, 0.0]);
                    lo = lo.min(v);
                    hi = hi.max(v);
                }
            }
        }
        min_abs = if lo > 0.0 {
            lo
        } else if hi < 0.0 {
            -hi
        } else {
            0.0
        };
        if min_abs == 0.0 {
            certified = true;
            break;
        }
        let slack: f64 = lipschitz.iter().map(|l| l * h / 2.0).sum();
        if min_abs > slack {
            contact = true;
            certified = true;
            break;
        }
    }
    Ok(ContactReport {
        contact,
        volume: volume.to_string(),
        constant: false,
        constant_value: None,
        min_abs,
        certified,
        volume_exact: volume,
    })
}

impl ContactReport {
    /// Whether the volume is exactly `q · π^m`.
    pub fn volume_is(&self, q: &BigRational, m: u32) -> bool {
        self.volume_exact.is_constant_multiple_of_pi_power(q, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn rotating(k: i64) -> TrigForm {
        let z = [0, 0, 2 * k, 0];
        TrigForm::one_form([
            TrigScalar::sin(z),
            TrigScalar::cos(z),
            TrigScalar::zero(),
            TrigScalar::zero(),
        ])
    }

    #[test]
    fn d_squared_vanishes() {
        let f = TrigForm::one_form([
            TrigScalar::cos([1, 2, 0, 1]),
            TrigScalar::sin([0, 0, 2, 3]),
            &TrigScalar::cos([2, 0, 2, 0]) * &TrigScalar::sin([0, 1, 0, 0]),
            TrigScalar::int(5),
        ]);
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn wedge_is_graded() {
        let a = TrigForm::differential(0);
        let b = TrigForm::differential(2);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ab.component(0b0101), TrigScalar::one());
        assert_eq!(ba.component(0b0101), -TrigScalar::one());
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn standard_form_volume_is_two_pi() {
        let r = contact_check(&rotating(1)).unwrap();
        assert!(r.contact && r.constant);
        assert!(r.volume_is(&rat(2), 1));
    }

    #[test]
    fn faster_rotation_scales_volume() {
        for k in 2..=4 {
            assert!(contact_check(&rotating(k))
                .unwrap()
                .volume_is(&rat(2 * k), 1));
        }
    }

    #[test]
    fn closed_form_is_not_contact() {
        let r = contact_check(&TrigForm::differential(2)).unwrap();
        assert!(!r.contact && r.constant && r.certified);
    }

    #[test]
    fn varying_volume_with_sign_change() {
        // α∧dα = 2π cos(2πx) dx∧dy∧dz
        let alpha = TrigForm::one_form([
            TrigScalar::zero(),
            TrigScalar::sin([2, 0, 0, 0]),
            TrigScalar::one(),
            TrigScalar::zero(),
        ]);
        let r = contact_check(&alpha).unwrap();
        assert!(!r.constant && !r.contact && r.certified);
    }

    #[test]
    fn varying_volume_certified_positive() {
        // small perturbation of the standard form
        let z = [0, 0, 2, 0];
        let eps = TrigScalar::sin([2, 0, 0, 0]).scale(&BigRational::new(1.into(), 10.into()));
        let alpha = TrigForm::one_form([
            TrigScalar::sin(z),
            TrigScalar::cos(z),
            eps,
            TrigScalar::zero(),
        ]);
        let r = contact_check(&alpha).unwrap();
        assert!(!r.constant);
        assert!(r.contact && r.certified, "{r:?}");
    }

    #[test]
    fn rejects_theta_dependence() {
        let alpha = TrigForm::one_form([
            TrigScalar::cos([0, 0, 0, 1]),
            TrigScalar::zero(),
            TrigScalar::zero(),
            TrigScalar::zero(),
        ]);
        assert!(contact_check(&alpha).is_err());
    }
}
