//! Grid certificates for the Engel flag `𝒟 ⊂ [𝒟,𝒟] ⊂ T(T⁴)`.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use super::field::{lie_bracket, CompiledField, TrigVectorField};
use super::frames::Distribution;
use super::trig::TrigScalar;
use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 16;
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
pub const ENGEL_RANKS: [usize; 3] = [2, 3, 4];

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: usize,
    pub expected_rank: usize,
    pub passed: bool,
    /// Smallest value over the grid of the `expected_rank`-th singular value.
    pub min_singular_value: f64,
    pub worst_point: [f64; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EngelFailure {
    /// The spanners themselves drop rank somewhere.
    DeclaredRank,
    Stage {
        stage: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct EngelReport {
    pub passed: bool,
    pub ranks: [usize; 3],
    pub stages: Vec<StageReport>,
    pub failure: Option<EngelFailure>,
    /// `|X₁|²|X₂|² − (X₁·X₂)²`, exact.
    pub stage1_gram: String,
    pub stage1_gram_positive_constant: bool,
    pub grid_per_axis: usize,
    pub tolerance: f64,
}

/// The `r`-th largest singular value (1-based) of the 4×k matrix with the
/// given columns; zero when there are fewer than `r` columns.
pub fn singular_value(columns: &[[f64; 4]], r: usize) -> f64 {
    if columns.len() < r {
        return 0.0;
    }
    let m = DMatrix::from_fn(4, columns.len(), |i, j| columns[j][i]);
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s.get(r - 1).copied().unwrap_or(0.0)
}

pub fn grid_point(index: usize, per_axis: usize) -> [f64; 4] {
    let mut k = index;
    std::array::from_fn(|_| {
        let c = k % per_axis;
        k /= per_axis;
        c as f64 / per_axis as f64
    })
}

/// Minimum over the grid of each margin returned by `margins`, with the
/// point where it is attained.
fn grid_minima<const K: usize>(
    per_axis: usize,
    margins: impl Fn([f64; 4]) -> [f64; K] + Sync,
) -> [(f64, [f64; 4]); K] {
    let total = per_axis.pow(4);
    (0..total)
        .into_par_iter()
        .map(|idx| {
            let u = grid_point(idx, per_axis);
            margins(u).map(|m| (m, u))
        })
        .reduce(
            || [(f64::INFINITY, [0.0; 4]); K],
            |a, b| std::array::from_fn(|i| if b[i].0 < a[i].0 { b[i] } else { a[i] }),
        )
}

fn two_spanners(d: &Distribution) -> Result<(&TrigVectorField, &TrigVectorField)> {
    match d.spanners() {
        [a, b] if d.rank() == 2 => Ok((a, b)),
        s => Err(Error::Distribution(format!(
            "Engel check needs exactly 2 spanners of declared rank 2, got {} of rank {}",
            s.len(),
            d.rank()
        ))),
    }
}

fn dot(a: &TrigVectorField, b: &TrigVectorField) -> TrigScalar {
    (0..4).fold(TrigScalar::zero(), |acc, i| {
        &acc + &(a.component(i) * b.component(i))
    })
}

fn check_grid(per_axis: usize, tolerance: f64) -> Result<()> {
    if per_axis == 0 || tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::Precondition(format!(
            "grid {per_axis} and tolerance {tolerance} must be positive"
        )));
    }
    Ok(())
}

/// Checks ranks `(2, 3, 4)` for `𝒟`, `𝒟 + [𝒟,𝒟]` and `ℰ + [ℰ,ℰ]` at every
/// point of a `per_axis⁴` grid, each with singular-value margin at least
/// `tolerance`.
pub fn engel_check(d: &Distribution, per_axis: usize, tolerance: f64) -> Result<EngelReport> {
    check_grid(per_axis, tolerance)?;
    let (x1, x2) = two_spanners(d)?;
    let x3 = lie_bracket(x1, x2);
    let x4 = lie_bracket(x1, &x3);
    let x5 = lie_bracket(x2, &x3);

    let gram = &(&dot(x1, x1) * &dot(x2, x2))
        - &{
            let c = dot(x1, x2);
            &c * &c
        };
    let gram_positive = gram
        .as_constant()
        .is_some_and(|v| !v.is_empty() && gram.eval([0.0; 4]) > 0.0);

    let fields: Vec<CompiledField> = [x1, x2, &x3, &x4, &x5]
        .iter()
        .map(|f| f.compile())
        .collect();
    let minima = grid_minima(per_axis, |u| {
        let cols: Vec<[f64; 4]> = fields.iter().map(|f| f.eval(u)).collect();
        [
            singular_value(&cols[..2], 2),
            singular_value(&cols[..3], 3),
            singular_value(&cols, 4),
        ]
    });

    let stages: Vec<StageReport> = minima
        .iter()
        .zip(ENGEL_RANKS)
        .enumerate()
        .map(|(i, (&(m, p), r))| StageReport {
            stage: i + 1,
            expected_rank: r,
            passed: m >= tolerance,
            min_singular_value: m,
            worst_point: p,
        })
        .collect();
    let failure = stages.iter().find(|s| !s.passed).map(|s| match s.stage {
        1 => EngelFailure::DeclaredRank,
        stage => EngelFailure::Stage { stage },
    });
    Ok(EngelReport {
        passed: failure.is_none(),
        ranks: ENGEL_RANKS,
        stages,
        failure,
        stage1_gram: gram.to_string(),
        stage1_gram_positive_constant: gram_positive,
        grid_per_axis: per_axis,
        tolerance,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacteristicReport {
    pub characteristic: bool,
    /// Largest fourth singular value of `ℰ + [L, ℰ]` over the grid.
    pub max_excess: f64,
    pub worst_point: [f64; 4],
}

/// Whether `[L, ℰ] ⊂ ℰ` at every grid point. `L` must lie in `𝒟` and `𝒟`
/// must pass [`engel_check`]; violations are errors.
pub fn characteristic_line_check(
    d: &Distribution,
    line: &TrigVectorField,
    per_axis: usize,
    tolerance: f64,
) -> Result<CharacteristicReport> {
    let engel = engel_check(d, per_axis, tolerance)?;
    if !engel.passed {
        return Err(Error::Precondition(format!(
            "distribution is not Engel on the grid ({:?})",
            engel.failure
        )));
    }
    let (x1, x2) = two_spanners(d)?;
    let x3 = lie_bracket(x1, x2);
    let brackets = [
        lie_bracket(line, x1),
        lie_bracket(line, x2),
        lie_bracket(line, &x3),
    ];
    let base: Vec<CompiledField> = [x1, x2, &x3].iter().map(|f| f.compile()).collect();
    let l = line.compile();
    let extra: Vec<CompiledField> = brackets.iter().map(|f| f.compile()).collect();

    let [(neg_inside, _), (neg_excess, worst)] = grid_minima(per_axis, |u| {
        let mut cols: Vec<[f64; 4]> = base.iter().map(|f| f.eval(u)).collect();
        let inside = singular_value(&[cols[0], cols[1], l.eval(u)], 3);
        cols.extend(extra.iter().map(|f| f.eval(u)));
        [-inside, -singular_value(&cols, 4)]
    });
    if -neg_inside >= tolerance {
        return Err(Error::Precondition(format!(
            "line field leaves the distribution (margin {})",
            -neg_inside
        )));
    }
    Ok(CharacteristicReport {
        characteristic: -neg_excess < tolerance,
        max_excess: -neg_excess,
        worst_point: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engel::frames::{fiber_field, prolonged_engel_frame, prolonged_spanner};

    #[test]
    fn singular_values_of_simple_frames() {
        let e = |i: usize| {
            let mut v = [0.0; 4];
            v[i] = 1.0;
            v
        };
        assert_eq!(singular_value(&[e(0), e(1)], 2), 1.0);
        assert_eq!(singular_value(&[e(0), e(0)], 2), 0.0);
        assert_eq!(singular_value(&[e(0)], 2), 0.0);
    }

    #[test]
    fn canonical_distribution_is_engel() {
        let r = engel_check(&prolonged_engel_frame(1, [0; 3]).unwrap(), 6, 1e-6).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.stage1_gram_positive_constant);
    }

    #[test]
    fn integrable_plane_fails_at_stage_two() {
        let d = Distribution::new(vec![fiber_field(), TrigVectorField::coordinate(2)], 2).unwrap();
        let r = engel_check(&d, 4, 1e-6).unwrap();
        assert_eq!(r.failure, Some(EngelFailure::Stage { stage: 2 }));
        assert!(r.stages[0].passed);
    }

    #[test]
    fn parallel_spanners_are_a_declared_rank_failure() {
        let d = Distribution::new(vec![fiber_field(), fiber_field()], 2).unwrap();
        let r = engel_check(&d, 4, 1e-6).unwrap();
        assert_eq!(r.failure, Some(EngelFailure::DeclaredRank));
    }

    #[test]
    fn fiber_is_characteristic_and_spanner_is_not() {
        let d = prolonged_engel_frame(2, [1, 0, 0]).unwrap();
        assert!(
            characteristic_line_check(&d, &fiber_field(), 6, 1e-6)
                .unwrap()
                .characteristic
        );
        let w = prolonged_spanner(2, [1, 0, 0]);
        assert!(
            !characteristic_line_check(&d, &w, 6, 1e-6)
                .unwrap()
                .characteristic
        );
    }

    #[test]
    fn line_outside_distribution_is_an_error() {
        let d = prolonged_engel_frame(1, [0; 3]).unwrap();
        let err = characteristic_line_check(&d, &TrigVectorField::coordinate(0), 4, 1e-6);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }
}
