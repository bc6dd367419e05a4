//! From a contact structure `ξ` to its prolongation `ℙ(ξ)`.
//!
//! `ξ` enters only through its Gauss class `g = f*u₀ ∈ H²(M; Z)`. Then
//! `e(ξ) = 2g` and `e(ℙ(ξ)) = 2e(ξ) = 4g`, since `ℙ(ξ)` is the quotient of the
//! unit circle bundle of `ξ` by the antipodal map. An `n`-fold prolongation
//! exists exactly when `4g` vanishes mod `n`; for `n = 2, 4` it always does.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::groups::{reduce_mod_n, GroupElement, Manifold3Data};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussClass {
    base: Manifold3Data,
    g: GroupElement,
}

impl GaussClass {
    pub fn new(base: Manifold3Data, g: GroupElement) -> Result<Self> {
        let g = base.h2().element(g.coords().to_vec())?;
        Ok(Self { base, g })
    }

    pub fn from_i64(base: Manifold3Data, g: &[i64]) -> Result<Self> {
        let g = base.h2().element_i64(g)?;
        Ok(Self { base, g })
    }

    pub fn base(&self) -> &Manifold3Data {
        &self.base
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceVerdict {
    pub n: u64,
    pub exists: bool,
    pub reduction: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProlongationReport {
    pub base: String,
    /// Absent when the report was built from `e(ξ)` directly.
    pub gauss: Option<GroupElement>,
    pub e_xi: GroupElement,
    pub e_prolongation: GroupElement,
    pub verdicts: Vec<ExistenceVerdict>,
    pub counterexample: Option<GroupElement>,
}

/// `e(ξ) = 2g` and `e(ℙ(ξ)) = 4g`.
pub fn prolongation_euler(gc: &GaussClass) -> Result<ProlongationReport> {
    let h2 = gc.base.h2();
    let e_xi = h2.scale(&BigInt::from(2), &gc.g)?;
    let mut report = prolongation_euler_from_e_xi(&gc.base, &e_xi)?;
    report.gauss = Some(gc.g.clone());
    Ok(report)
}

/// `e(ℙ(ξ)) = 2e(ξ)`, for callers that know `e(ξ)` rather than `g`.
pub fn prolongation_euler_from_e_xi(
    base: &Manifold3Data,
    e_xi: &GroupElement,
) -> Result<ProlongationReport> {
    let h2 = base.h2();
    let e_xi = h2.element(e_xi.coords().to_vec())?;
    let e_prolongation = h2.scale(&BigInt::from(2), &e_xi)?;
    Ok(ProlongationReport {
        base: base.name().to_string(),
        gauss: None,
        e_xi,
        e_prolongation,
        verdicts: Vec::new(),
        counterexample: None,
    })
}

impl ProlongationReport {
    /// Adds the existence verdict for each `n` in `ns` (each `n ≥ 2`).
    pub fn with_verdicts(mut self, base: &Manifold3Data, ns: &[u64]) -> Result<Self> {
        for &n in ns {
            let r = reduce_mod_n(base.h2(), &self.e_prolongation, &BigInt::from(n))?;
            self.verdicts.push(ExistenceVerdict {
                n,
                exists: r.zero,
                reduction: r.element,
            });
        }
        Ok(self)
    }
}

/// Whether `ξ` admits an `n`-fold prolongation: `4g ≡ 0` in `H²(M; Zₙ)`.
pub fn n_fold_prolongation_exists(gc: &GaussClass, n: u64) -> Result<bool> {
    let e = gc.base.h2().scale(&BigInt::from(4), &gc.g)?;
    Ok(reduce_mod_n(gc.base.h2(), &e, &BigInt::from(n))?.zero)
}

/// Candidate Gauss classes with every free coordinate in `[-bound, bound]`
/// and every torsion coordinate in `[0, min(d - 1, bound)]`, ordered by
/// the sum of absolute coordinates and then reverse-lexicographically, so
/// positive unit vectors come first.
fn candidates(base: &Manifold3Data, bound: u64) -> Vec<Vec<i64>> {
    let h2 = base.h2();
    let b = i64::try_from(bound).unwrap_or(i64::MAX);
    let ranges: Vec<(i64, i64)> = (0..h2.coordinate_count())
        .map(|i| {
            if i < h2.rank() {
                (-b, b)
            } else {
                let d = i64::try_from(&h2.torsion()[i - h2.rank()]).unwrap_or(i64::MAX);
                (0, (d - 1).min(b))
            }
        })
        .collect();
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for (lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let norm = |v: &[i64]| v.iter().map(|x| x.unsigned_abs()).sum::<u64>();
        norm(a).cmp(&norm(b)).then_with(|| b.cmp(a))
    });
    out
}

/// First Gauss class (in the order of the candidate grid) whose
/// prolongation admits no `n`-fold covering. `None` for `n = 2, 4`, and
/// whenever every bounded class works, e.g. when `H²(M) = 0`.
pub fn counterexample_search(
    base: &Manifold3Data,
    n: u64,
    bound: u64,
) -> Result<Option<GaussClass>> {
    if n == 2 || n == 4 {
        return Ok(None);
    }
    // validate n once so that the parallel search cannot fail
    reduce_mod_n(base.h2(), &base.h2().zero(), &BigInt::from(n))?;
    let found = candidates(base, bound).into_par_iter().find_first(|g| {
        GaussClass::from_i64(base.clone(), g)
            .and_then(|gc| n_fold_prolongation_exists(&gc, n))
            .is_ok_and(|exists| !exists)
    });
    found
        .map(|g| GaussClass::from_i64(base.clone(), &g))
        .transpose()
}
