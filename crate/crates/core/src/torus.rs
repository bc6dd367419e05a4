//! Fiberwise n-fold self-coverings of the trivial bundle `T³ × S¹ → T³`.
//!
//! Coordinates are `(x, y, z, θ)` with every circle identified with `R/Z`.
//! The explicit coverings are `φ_α(p, θ) = (p, nθ + ⟨α, p⟩)`; a covering is
//! classified by the degree, mod n, of its fiber coordinate along lifts of
//! the three generator loops of `T³`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::winding::{self, certified_winding, shortest_arc};

fn wrap(t: f64) -> f64 {
    let r = t.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub theta: f64,
}

impl TorusPoint {
    pub fn new(x: f64, y: f64, z: f64, theta: f64) -> Self {
        Self {
            x: wrap(x),
            y: wrap(y),
            z: wrap(z),
            theta: wrap(theta),
        }
    }

    pub fn from_array(u: [f64; 4]) -> Self {
        Self::new(u[0], u[1], u[2], u[3])
    }

    pub fn base(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.x, self.y, self.z, self.theta]
    }
}

pub type Sampler = Arc<dyn Fn(TorusPoint) -> TorusPoint + Send + Sync>;

/// A fiberwise degree-n map `T³ × S¹ → T³ × S¹`.
#[derive(Clone)]
pub enum TorusCoveringMap {
    Explicit {
        n: u32,
        alpha: [i64; 3],
    },
    /// Trusted to be continuous and fiberwise of degree `n`; classification
    /// rejects it if angle tracking cannot be certified.
    BlackBox {
        n: u32,
        sampler: Sampler,
    },
}

impl fmt::Debug for TorusCoveringMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Explicit { n, alpha } => f
                .debug_struct("Explicit")
                .field("n", n)
                .field("alpha", alpha)
                .finish(),
            Self::BlackBox { n, .. } => f
                .debug_struct("BlackBox")
                .field("n", n)
                .finish_non_exhaustive(),
        }
    }
}

fn check_degree(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidDegree {
            n: n as i64,
            min: 2,
        });
    }
    Ok(())
}

/// `φ_α`, with `alpha` reduced into `[0, n)³`.
pub fn build_phi_alpha(n: u32, alpha: [i64; 3]) -> Result<TorusCoveringMap> {
    check_degree(n)?;
    Ok(TorusCoveringMap::Explicit {
        n,
        alpha: alpha.map(|a| a.rem_euclid(n as i64)),
    })
}

impl TorusCoveringMap {
    pub fn black_box<F>(n: u32, f: F) -> Result<Self>
    where
        F: Fn(TorusPoint) -> TorusPoint + Send + Sync + 'static,
    {
        check_degree(n)?;
        Ok(Self::BlackBox {
            n,
            sampler: Arc::new(f),
        })
    }

    pub fn degree(&self) -> u32 {
        match self {
            Self::Explicit { n, .. } | Self::BlackBox { n, .. } => *n,
        }
    }

    pub fn eval(&self, p: TorusPoint) -> TorusPoint {
        match self {
            Self::Explicit { n, alpha } => {
                let shift: f64 = alpha.iter().zip(p.base()).map(|(&a, c)| a as f64 * c).sum();
                TorusPoint::new(p.x, p.y, p.z, *n as f64 * p.theta + shift)
            }
            Self::BlackBox { sampler, .. } => sampler(p),
        }
    }
}

/// Where the generator loops start and at which constant θ they are lifted.
#[derive(Clone, Copy, Debug)]
pub struct ClassifyOptions {
    pub samples_per_loop: usize,
    pub basepoint: [f64; 3],
    pub lift_theta: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            samples_per_loop: winding::DEFAULT_SAMPLES,
            basepoint: [0.0; 3],
            lift_theta: 0.0,
        }
    }
}

/// The class `α ∈ H¹(T³; Zₙ)` of a covering, in `[0, n)³`.
pub fn classify_covering_map(phi: &TorusCoveringMap, samples_per_loop: usize) -> Result<[i64; 3]> {
    classify_with(
        phi,
        &ClassifyOptions {
            samples_per_loop,
            ..Default::default()
        },
    )
}

pub fn classify_with(phi: &TorusCoveringMap, opts: &ClassifyOptions) -> Result<[i64; 3]> {
    let n = phi.degree() as i64;
    let mut alpha = [0i64; 3];
    for (k, slot) in alpha.iter_mut().enumerate() {
        let w = certified_winding(opts.samples_per_loop, |j, count| {
            let mut u = opts.basepoint;
            u[k] += j as f64 / count as f64;
            let p = TorusPoint::new(u[0], u[1], u[2], opts.lift_theta);
            Some(phi.eval(p).theta)
        })?;
        *slot = w.rem_euclid(n);
    }
    Ok(alpha)
}

/// One sampled point of a black-box map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapSample {
    pub input: [f64; 4],
    pub output: [f64; 4],
}

/// Tabulated black-box map: for each generator loop (x, y, z in that order),
/// the map sampled at consecutive points around the loop. The last sample is
/// joined back to the first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleTable {
    pub n: u32,
    pub loops: Vec<Vec<MapSample>>,
}

const FIBERWISE_TOL: f64 = 1e-9;

impl SampleTable {
    /// Samples `phi` on the standard loops, `samples` points each.
    pub fn tabulate(phi: &TorusCoveringMap, samples: usize) -> Self {
        let loops = (0..3)
            .map(|k| {
                (0..samples)
                    .map(|j| {
                        let mut u = [0.0; 4];
                        u[k] = j as f64 / samples as f64;
                        let out = phi.eval(TorusPoint::from_array(u));
                        MapSample {
                            input: u,
                            output: out.to_array(),
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            n: phi.degree(),
            loops,
        }
    }
}

/// Classifies a tabulated map. There is no resampling here, so a table that
/// is too coarse fails with a refinement-limit error.
pub fn classify_tabulated(table: &SampleTable) -> Result<[i64; 3]> {
    check_degree(table.n)?;
    if table.loops.len() != 3 {
        return Err(Error::SampleTable(format!(
            "expected 3 loops, got {}",
            table.loops.len()
        )));
    }
    let mut alpha = [0i64; 3];
    for (k, samples) in table.loops.iter().enumerate() {
        if samples.len() < 4 {
            return Err(Error::SampleTable(format!(
                "loop {k} has fewer than 4 samples"
            )));
        }
        for (j, s) in samples.iter().enumerate() {
            let moved = (0..3).any(|i| shortest_arc(s.input[i], s.output[i]).abs() > FIBERWISE_TOL);
            if moved {
                return Err(Error::SampleTable(format!(
                    "loop {k} sample {j} leaves its fiber"
                )));
            }
        }
        for i in 0..3 {
            let coord: Vec<f64> = samples.iter().map(|s| s.input[i]).collect();
            let expected = if i == k { 1.0 } else { 0.0 };
            match winding::cyclic_winding(&coord) {
                Ok(w) if (w - expected).abs() < 1e-6 => {}
                _ => {
                    return Err(Error::SampleTable(format!(
                        "loop {k} does not traverse the standard generator once"
                    )))
                }
            }
        }
        let thetas: Vec<f64> = samples.iter().map(|s| s.output[3]).collect();
        let w = winding::cyclic_winding(&thetas).map_err(|_| Error::RefinementLimit {
            samples: samples.len(),
        })?;
        alpha[k] = (w.round() as i64).rem_euclid(table.n as i64);
    }
    Ok(alpha)
}

/// Outcome of [`equivalence_test`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `(a, b, c)` with `alpha_b = alpha_a + n·(a, b, c)`.
    pub witness: Option<[i64; 3]>,
}

/// Whether `φ_{alpha_a}` and `φ_{alpha_b}` are equivalent coverings.
pub fn equivalence_test(alpha_a: [i64; 3], alpha_b: [i64; 3], n: u32) -> Result<Equivalence> {
    check_degree(n)?;
    let n = n as i64;
    let equivalent = alpha_a
        .iter()
        .zip(&alpha_b)
        .all(|(a, b)| (b - a).rem_euclid(n) == 0);
    let witness = equivalent.then(|| [0, 1, 2].map(|i| (alpha_b[i] - alpha_a[i]) / n));
    Ok(Equivalence {
        equivalent,
        witness,
    })
}

/// Matrix of `(φ_α)_*` on `π₁(T³ × S¹) = Z⁴` (basis x, y, z, fiber), acting on
/// column vectors.
pub fn induced_matrix(n: u32, alpha: [i64; 3]) -> IntMatrix {
    IntMatrix::from_rows(&[
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [alpha[0], alpha[1], alpha[2], n as i64],
    ])
}

/// `ψ_*` for a covering isomorphism with shear `(a, b, c)`.
pub fn automorphism_matrix(witness: [i64; 3]) -> IntMatrix {
    induced_matrix(1, witness)
}

/// Checks `(φ_{alpha_a})_* ψ_* = (φ_{alpha_b})_*` for the witness of an
/// equivalence.
pub fn witness_realizes(alpha_a: [i64; 3], alpha_b: [i64; 3], n: u32, witness: [i64; 3]) -> bool {
    let lhs = &induced_matrix(n, alpha_a) * &automorphism_matrix(witness);
    lhs == induced_matrix(n, alpha_b)
        && automorphism_matrix(witness).determinant().ok() == Some(BigInt::from(1))
}
