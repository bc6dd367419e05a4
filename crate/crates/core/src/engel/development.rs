//! Winding data of the development map of `span(∂θ, W)`.
//!
//! The projection of the Engel plane at `(p, θ)` to `T_pT³` is a line in the
//! contact plane `ξ_p = span(∂z, V_p)`. Lines are tracked by their doubled
//! angle, so a half-turn of the line counts as one turn.

use super::field::CompiledField;
use super::frames::Distribution;
use crate::error::{Error, Result};
use crate::winding::{certified_winding, DEFAULT_SAMPLES};

const DEGENERATE: f64 = 1e-12;

/// Coordinates of a vector's base part in the frame `(∂z, V_p)`.
fn contact_coordinates(v: [f64; 4], z: f64) -> (f64, f64) {
    let t = 2.0 * std::f64::consts::PI * z;
    (v[2], v[0] * t.cos() - v[1] * t.sin())
}

struct LineField {
    spanners: Vec<CompiledField>,
}

impl LineField {
    fn new(d: &Distribution) -> Self {
        Self {
            spanners: d.spanners().iter().map(|f| f.compile()).collect(),
        }
    }

    /// Doubled angle of the projected line, in turns. `None` when every
    /// spanner projects to (nearly) zero.
    fn doubled_angle(&self, u: [f64; 4]) -> Result<Option<f64>> {
        let projected: Vec<(f64, f64)> = self
            .spanners
            .iter()
            .map(|f| contact_coordinates(f.eval(u), u[2]))
            .collect();
        let (a, b) = projected
            .iter()
            .copied()
            .max_by(|p, q| p.0.hypot(p.1).total_cmp(&q.0.hypot(q.1)))
            .unwrap_or((0.0, 0.0));
        let norm = a.hypot(b);
        if norm < DEGENERATE {
            return Ok(None);
        }
        for &(c, d) in &projected {
            if (a * d - b * c).abs() > 1e-9 * norm * c.hypot(d).max(1.0) {
                return Err(Error::Precondition(format!(
                    "distribution projects to a plane at {u:?}; the fiber direction is not in it"
                )));
            }
        }
        Ok(Some(b.atan2(a) / std::f64::consts::PI))
    }

    fn winding(&self, start: [f64; 4], axis: usize) -> Result<i64> {
        let mut precondition = None;
        let w = certified_winding(DEFAULT_SAMPLES, |j, count| {
            let mut u = start;
            u[axis] += j as f64 / count as f64;
            match self.doubled_angle(u) {
                Ok(a) => a,
                Err(e) => {
                    precondition.get_or_insert(e);
                    None
                }
            }
        });
        match precondition {
            Some(e) => Err(e),
            None => w,
        }
    }
}

/// Degree of the development map on the fiber over `p₀ = 0`.
pub fn twisting_number(d: &Distribution) -> Result<i64> {
    twisting_number_at(d, [0.0; 3])
}

pub fn twisting_number_at(d: &Distribution, p0: [f64; 3]) -> Result<i64> {
    let n = LineField::new(d).winding([p0[0], p0[1], p0[2], 0.0], 3)?;
    if n < 1 {
        return Err(Error::Precondition(format!(
            "development map has degree {n} on the fiber"
        )));
    }
    Ok(n)
}

/// The class `α ∈ H¹(T³; Zₙ)` of the development map: windings of the
/// projected line along the three base circles through the origin at
/// `θ = 0`, reduced mod `n`. The fiber degree must equal `n`.
pub fn development_alpha(d: &Distribution, n: i64) -> Result<[i64; 3]> {
    let found = twisting_number(d)?;
    if found != n {
        return Err(Error::Precondition(format!(
            "twisting number is {found}, expected {n}"
        )));
    }
    let line = LineField::new(d);
    let mut alpha = [0; 3];
    for (axis, a) in alpha.iter_mut().enumerate() {
        *a = line.winding([0.0; 4], axis)?.rem_euclid(n);
    }
    Ok(alpha)
}
