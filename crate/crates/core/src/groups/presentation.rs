use num_bigint::BigInt;

use super::FGAbelianGroup;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A finite group presentation. Relator letters are signed 1-based generator
/// indices: `[1, 2, -1, -2]` is the commutator `x y x⁻¹ y⁻¹`.
///
/// A generator flagged as central implicitly commutes with every other
/// generator; those commutators are not stored in `relators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Vec<i64>>,
    central: Option<usize>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_central(generators, relators, None)
    }

    pub fn with_central(
        generators: Vec<String>,
        relators: Vec<Vec<i64>>,
        central: Option<usize>,
    ) -> Result<Self> {
        let g = generators.len() as i64;
        for (r, word) in relators.iter().enumerate() {
            if let Some(bad) = word.iter().find(|&&l| l == 0 || l.abs() > g) {
                return Err(Error::Presentation(format!(
                    "relator {r} uses letter {bad} but only {g} generators are declared"
                )));
            }
        }
        if let Some(c) = central {
            if c >= generators.len() {
                return Err(Error::Presentation(format!(
                    "central generator index {c} out of range"
                )));
            }
        }
        Ok(Self {
            generators,
            relators,
            central,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    pub fn central(&self) -> Option<usize> {
        self.central
    }

    /// Stored relators followed by the implicit commutators of the central
    /// generator.
    pub fn all_relators(&self) -> Vec<Vec<i64>> {
        let mut out = self.relators.clone();
        if let Some(c) = self.central {
            let t = c as i64 + 1;
            for g in 1..=self.generators.len() as i64 {
                if g != t {
                    out.push(vec![t, g, -t, -g]);
                }
            }
        }
        out
    }

    /// Exponent-sum matrix: one row per relator, one column per generator.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let relators = self.all_relators();
        let mut m = IntMatrix::zeros(relators.len(), self.generators.len());
        for (r, word) in relators.iter().enumerate() {
            for &letter in word {
                let col = letter.unsigned_abs() as usize - 1;
                m[(r, col)] += BigInt::from(letter.signum());
            }
        }
        m
    }
}

/// Cokernel of the relator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> FGAbelianGroup {
    FGAbelianGroup::cokernel(&p.exponent_matrix().transpose())
}
