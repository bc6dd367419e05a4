use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{abelianization, FGAbelianGroup, GroupPresentation};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A closed oriented 3-manifold described at the level of π₁ and H².
///
/// `h2` is supplied rather than computed; it must be isomorphic to `h1`.
/// `relator_pairing[(k, r)]` is the value of the k-th canonical generator of
/// `h2` on relator `r`, which fixes how an Euler class twists the relators of
/// the circle-bundle extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifold3Data {
    name: String,
    pi1: GroupPresentation,
    h1: FGAbelianGroup,
    h2: FGAbelianGroup,
    relator_pairing: IntMatrix,
}

/// On-disk form of [`Manifold3Data`].
///
/// ```json
/// { "name": "T3",
///   "generators": ["x", "y", "z"],
///   "relators": [[2, 3, -2, -3], [3, 1, -3, -1], [1, 2, -1, -2]],
///   "h2": { "rank": 3, "torsion": [] },
///   "relator_pairing": [[1, 0, 0], [0, 1, 0], [0, 0, 1]] }
/// ```
///
/// Generators are listed in the order of the standard basis of `H₁`; relator
/// letters are signed 1-based generator indices. For the 3-torus the dual
/// class of the k-th generator pairs to `+1` with the commutator of the other
/// two generators taken in cyclic order (`[y,z]`, `[z,x]`, `[x,y]`), which is
/// the positive orientation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldJson {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i64>>,
    pub h2: InvariantsJson,
    pub relator_pairing: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsJson {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

impl InvariantsJson {
    pub fn of(g: &FGAbelianGroup) -> Self {
        Self {
            rank: g.rank(),
            torsion: g
                .torsion()
                .iter()
                .map(|d| d.to_i64().unwrap_or(i64::MAX))
                .collect(),
        }
    }
}

impl Manifold3Data {
    pub fn new(
        name: impl Into<String>,
        pi1: GroupPresentation,
        h2: FGAbelianGroup,
        relator_pairing: IntMatrix,
    ) -> Result<Self> {
        let name = name.into();
        let h1 = abelianization(&pi1);
        if !h1.is_isomorphic(&h2) {
            return Err(Error::Manifold(format!(
                "{name}: H2 (rank {}, torsion {:?}) is not isomorphic to H1 (rank {}, torsion {:?})",
                h2.rank(),
                h2.torsion(),
                h1.rank(),
                h1.torsion()
            )));
        }
        if relator_pairing.rows() != h2.coordinate_count()
            || relator_pairing.cols() != pi1.relators().len()
        {
            return Err(Error::Manifold(format!(
                "{name}: relator pairing is {}x{}, expected {}x{}",
                relator_pairing.rows(),
                relator_pairing.cols(),
                h2.coordinate_count(),
                pi1.relators().len()
            )));
        }
        Ok(Self {
            name,
            pi1,
            h1,
            h2,
            relator_pairing,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pi1(&self) -> &GroupPresentation {
        &self.pi1
    }

    pub fn h1(&self) -> &FGAbelianGroup {
        &self.h1
    }

    pub fn h2(&self) -> &FGAbelianGroup {
        &self.h2
    }

    pub fn relator_pairing(&self) -> &IntMatrix {
        &self.relator_pairing
    }

    /// The 3-torus with generators `x, y, z`.
    pub fn torus3() -> Self {
        Self::from_json(&ManifoldJson {
            name: "T3".into(),
            generators: vec!["x".into(), "y".into(), "z".into()],
            relators: vec![vec![2, 3, -2, -3], vec![3, 1, -3, -1], vec![1, 2, -1, -2]],
            h2: InvariantsJson {
                rank: 3,
                torsion: vec![],
            },
            relator_pairing: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
        })
        .expect("built-in T3 is consistent")
    }

    /// The lens space `L(4,1)`: π₁ = Z₄, H² = Z₄.
    pub fn lens4() -> Self {
        Self::from_json(&ManifoldJson {
            name: "L4".into(),
            generators: vec!["g".into()],
            relators: vec![vec![1, 1, 1, 1]],
            h2: InvariantsJson {
                rank: 0,
                torsion: vec![4],
            },
            relator_pairing: vec![vec![1]],
        })
        .expect("built-in L4 is consistent")
    }

    /// The 3-sphere: trivial π₁ and H².
    pub fn sphere3() -> Self {
        Self::from_json(&ManifoldJson {
            name: "S3".into(),
            generators: vec![],
            relators: vec![],
            h2: InvariantsJson {
                rank: 0,
                torsion: vec![],
            },
            relator_pairing: vec![],
        })
        .expect("built-in S3 is consistent")
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "T3" => Ok(Self::torus3()),
            "L4" => Ok(Self::lens4()),
            "S3" => Ok(Self::sphere3()),
            other => Err(Error::UnknownManifold(other.to_string())),
        }
    }

    pub fn from_json(j: &ManifoldJson) -> Result<Self> {
        let pi1 = GroupPresentation::new(j.generators.clone(), j.relators.clone())?;
        let h2 = FGAbelianGroup::from_invariants(
            j.h2.rank,
            j.h2.torsion.iter().map(|&d| BigInt::from(d)).collect(),
        )?;
        let rows = h2.coordinate_count();
        let cols = j.relators.len();
        if j.relator_pairing.len() != rows || j.relator_pairing.iter().any(|r| r.len() != cols) {
            return Err(Error::Manifold(format!(
                "{}: relator pairing must be {rows}x{cols}",
                j.name
            )));
        }
        let pairing = if rows == 0 {
            IntMatrix::zeros(0, cols)
        } else {
            IntMatrix::from_rows(&j.relator_pairing)
        };
        Self::new(j.name.clone(), pi1, h2, pairing)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> ManifoldJson {
        ManifoldJson {
            name: self.name.clone(),
            generators: self.pi1.generators().to_vec(),
            relators: self.pi1.relators().to_vec(),
            h2: InvariantsJson::of(&self.h2),
            relator_pairing: (0..self.relator_pairing.rows())
                .map(|i| {
                    self.relator_pairing
                        .row(i)
                        .iter()
                        .map(|x| x.to_i64().unwrap_or(i64::MAX))
                        .collect()
                })
                .collect(),
        }
    }
}
