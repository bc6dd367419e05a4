use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::trig::{CompiledScalar, TrigScalar, COORDS};

/// A vector field on `T⁴` in the coordinate frame `(∂x, ∂y, ∂z, ∂θ)`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TrigVectorField {
    comps: [TrigScalar; 4],
}

impl TrigVectorField {
    pub fn new(comps: [TrigScalar; 4]) -> Self {
        Self { comps }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The coordinate field `∂_i`.
    pub fn coordinate(i: usize) -> Self {
        let mut f = Self::zero();
        f.comps[i] = TrigScalar::one();
        f
    }

    pub fn component(&self, i: usize) -> &TrigScalar {
        &self.comps[i]
    }

    pub fn components(&self) -> &[TrigScalar; 4] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(TrigScalar::is_zero)
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &TrigScalar) -> TrigScalar {
        (0..4)
            .filter(|&i| !self.comps[i].is_zero())
            .map(|i| &self.comps[i] * &f.partial(i))
            .fold(TrigScalar::zero(), |acc, t| &acc + &t)
    }

    /// Pointwise product `f · X`.
    pub fn scaled_by(&self, f: &TrigScalar) -> Self {
        Self::new(std::array::from_fn(|i| f * &self.comps[i]))
    }

    pub fn eval(&self, u: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| self.comps[i].eval(u))
    }

    pub fn compile(&self) -> CompiledField {
        CompiledField(std::array::from_fn(|i| self.comps[i].compile()))
    }
}

/// `[X, Y]ʲ = X(Yʲ) − Y(Xʲ)`.
pub fn lie_bracket(x: &TrigVectorField, y: &TrigVectorField) -> TrigVectorField {
    TrigVectorField::new(std::array::from_fn(|j| {
        &x.apply(&y.comps[j]) - &y.apply(&x.comps[j])
    }))
}

#[derive(Clone, Debug)]
pub struct CompiledField([CompiledScalar; 4]);

impl CompiledField {
    pub fn eval(&self, u: [f64; 4]) -> [f64; 4] {
        std::array::from_fn(|i| self.0[i].eval(u))
    }
}

impl Add for &TrigVectorField {
    type Output = TrigVectorField;
    fn add(self, rhs: &TrigVectorField) -> TrigVectorField {
        TrigVectorField::new(std::array::from_fn(|i| &self.comps[i] + &rhs.comps[i]))
    }
}

impl Sub for &TrigVectorField {
    type Output = TrigVectorField;
    fn sub(self, rhs: &TrigVectorField) -> TrigVectorField {
        TrigVectorField::new(std::array::from_fn(|i| &self.comps[i] - &rhs.comps[i]))
    }
}

impl Neg for &TrigVectorField {
    type Output = TrigVectorField;
    fn neg(self) -> TrigVectorField {
        TrigVectorField::new(std::array::from_fn(|i| -&self.comps[i]))
    }
}

impl fmt::Display for TrigVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.comps.iter().zip(COORDS) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})∂{name}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TrigVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
