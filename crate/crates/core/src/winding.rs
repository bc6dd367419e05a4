//! Certified winding numbers of sampled circle-valued loops.
//!
//! Angles are measured in turns. Consecutive samples are joined by the
//! shortest arc, which is only trustworthy while every step stays below a
//! quarter turn; otherwise the loop is resampled at double resolution.

use crate::error::{Error, Result};

pub const MAX_STEP_TURNS: f64 = 0.25;
pub const DEFAULT_SAMPLES: usize = 64;
pub const MAX_SAMPLES: usize = 4096;

/// Signed shortest-arc difference `b - a` in turns, in `[-1/2, 1/2]`.
pub fn shortest_arc(a: f64, b: f64) -> f64 {
    let d = b - a;
    d - d.round()
}

/// Total turning of the closed polygon through `angles` (the last sample is
/// joined back to the first). Fails with the index of the first step that is
/// not below a quarter turn.
pub fn cyclic_winding(angles: &[f64]) -> std::result::Result<f64, usize> {
    let mut total = 0.0;
    for j in 0..angles.len() {
        let step = shortest_arc(angles[j], angles[(j + 1) % angles.len()]);
        if step.abs() >= MAX_STEP_TURNS {
            return Err(j);
        }
        total += step;
    }
    Ok(total)
}

/// Winding number of a loop sampled by `sample(j, count)` at parameters
/// `j / count`, `j = 0..count`. A sampler returning `None` marks a degenerate
/// sample. Resolution starts at `initial` and doubles up to [`MAX_SAMPLES`].
pub fn certified_winding<F>(initial: usize, mut sample: F) -> Result<i64>
where
    F: FnMut(usize, usize) -> Option<f64>,
{
    let mut count = initial.clamp(4, MAX_SAMPLES);
    loop {
        let mut angles = Vec::with_capacity(count);
        let mut degenerate = None;
        for j in 0..count {
            match sample(j, count) {
                Some(a) => angles.push(a),
                None => {
                    degenerate = Some(j);
                    break;
                }
            }
        }
        let outcome = match degenerate {
            Some(j) => Err(Error::DegenerateProjection {
                index: j,
                samples: count,
            }),
            None => cyclic_winding(&angles)
                .map(|total| total.round() as i64)
                .map_err(|_| Error::RefinementLimit { samples: count }),
        };
        match outcome {
            Ok(w) => return Ok(w),
            Err(e) if count * 2 > MAX_SAMPLES => return Err(e),
            Err(_) => count *= 2,
        }
    }
}
