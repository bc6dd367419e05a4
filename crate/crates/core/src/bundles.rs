//! Circle bundles over 3-manifolds and their fiberwise n-fold coverings.
//!
//! A fiberwise n-fold covering of `P → M` exists exactly when the mod-n
//! reduction of `e(P)` vanishes, and the isomorphism classes then form a
//! torsor over `H¹(M; Zₙ)`. The exact sequence
//!
//! ```text
//! 0 → H¹(M;Zₙ) —π*→ H¹(P;Zₙ) —ι*→ H¹(S¹;Zₙ) —d→ H²(M;Zₙ)
//! ```
//!
//! is checked directly on the π₁ presentation of the total space, built as a
//! central extension of π₁(M) by the fiber class.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    abelianization, hom_to_zn, reduce_mod_n, FGAbelianGroup, GroupElement, GroupPresentation,
    Manifold3Data, ManifoldJson,
};
use crate::linalg::{solve_mod, IntMatrix};

/// An oriented circle bundle, recorded by its base and Euler class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleBundle {
    base: Manifold3Data,
    euler: GroupElement,
    oriented: bool,
}

impl CircleBundle {
    pub fn new(base: Manifold3Data, euler: GroupElement) -> Result<Self> {
        if !base.h2().contains(&euler) {
            return Err(Error::NotInGroup(format!(
                "Euler class {:?} is not an element of H2({})",
                euler.coords(),
                base.name()
            )));
        }
        Ok(Self {
            base,
            euler,
            oriented: true,
        })
    }

    pub fn with_euler_i64(base: Manifold3Data, euler: &[i64]) -> Result<Self> {
        let e = base.h2().element_i64(euler)?;
        Self::new(base, e)
    }

    pub fn trivial(base: Manifold3Data) -> Self {
        let e = base.h2().zero();
        Self::new(base, e).expect("zero lies in every group")
    }

    pub fn base(&self) -> &Manifold3Data {
        &self.base
    }

    pub fn euler(&self) -> &GroupElement {
        &self.euler
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }
}

/// Base reference in a bundle file: a built-in name or an inline manifold.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Builtin(String),
    Inline(ManifoldJson),
}

impl BaseRef {
    pub fn resolve(&self) -> Result<Manifold3Data> {
        match self {
            BaseRef::Builtin(name) => Manifold3Data::builtin(name),
            BaseRef::Inline(j) => Manifold3Data::from_json(j),
        }
    }
}

/// `{ "base": "T3" | {…manifold…}, "euler": [2, 0, 0] }`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleJson {
    pub base: BaseRef,
    pub euler: Vec<i64>,
}

impl BundleJson {
    pub fn into_bundle(self) -> Result<CircleBundle> {
        CircleBundle::with_euler_i64(self.base.resolve()?, &self.euler)
    }
}

/// One fiberwise n-fold covering `(Q, φ)` of a bundle `P`, keyed by its class
/// `alpha ∈ H¹(M; Zₙ)`. `upstairs_euler` is one solution of
/// `n·e(Q) = e(P)`; when `H²` has n-torsion it is not unique and is not part
/// of the classifying data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberwiseCoveringClass {
    pub n: BigInt,
    pub alpha: GroupElement,
    pub upstairs_euler: GroupElement,
}

/// Result of [`enumerate_covering_classes`].
#[derive(Clone, Debug)]
pub enum CoveringEnumeration {
    Obstructed {
        euler_mod_n: GroupElement,
    },
    Torsor {
        h1_zn: FGAbelianGroup,
        classes: Vec<FiberwiseCoveringClass>,
    },
}

impl CoveringEnumeration {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, CoveringEnumeration::Obstructed { .. })
    }

    pub fn classes(&self) -> &[FiberwiseCoveringClass] {
        match self {
            CoveringEnumeration::Obstructed { .. } => &[],
            CoveringEnumeration::Torsor { classes, .. } => classes,
        }
    }

    /// Action of `g ∈ H¹(M; Zₙ)` on a covering class, by translation of its
    /// class coordinate.
    pub fn act(
        &self,
        g: &GroupElement,
        class: &FiberwiseCoveringClass,
    ) -> Result<FiberwiseCoveringClass> {
        match self {
            CoveringEnumeration::Obstructed { .. } => {
                Err(Error::Precondition("no covering classes exist".into()))
            }
            CoveringEnumeration::Torsor { h1_zn, .. } => Ok(FiberwiseCoveringClass {
                n: class.n.clone(),
                alpha: h1_zn.add(&class.alpha, g)?,
                upstairs_euler: class.upstairs_euler.clone(),
            }),
        }
    }
}

fn degree(n: u64) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidDegree {
            n: n as i64,
            min: 2,
        });
    }
    Ok(BigInt::from(n))
}

/// Whether a fiberwise n-fold covering of `p` exists.
pub fn obstruction_vanishes(p: &CircleBundle, n: u64) -> Result<bool> {
    Ok(reduce_mod_n(p.base.h2(), &p.euler, &degree(n)?)?.zero)
}

/// All `x ∈ H²(M; Z)` with `n·x = e(P)`.
pub fn covering_euler_classes(p: &CircleBundle, n: u64) -> Result<Vec<GroupElement>> {
    let nb = degree(n)?;
    let h2 = p.base.h2();
    let scalar = IntMatrix::diagonal(std::slice::from_ref(&nb));
    let mut per_coord: Vec<Vec<BigInt>> = Vec::with_capacity(h2.coordinate_count());
    for (i, ei) in p.euler.coords().iter().enumerate() {
        let m = h2.coordinate_modulus(i);
        let Some(sol) = solve_mod(&scalar, std::slice::from_ref(ei), &m)? else {
            return Ok(Vec::new());
        };
        let x0 = sol.particular[0].clone();
        match sol.kernel.first() {
            None => per_coord.push(vec![x0]),
            Some(k) => {
                let step = &k[0];
                let mut vals = BTreeSet::new();
                let mut x = x0;
                while vals.insert(x.mod_floor(&m)) {
                    x += step;
                }
                per_coord.push(vals.into_iter().collect());
            }
        }
    }
    let mut out = vec![Vec::new()];
    for vals in per_coord {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<BigInt>| {
                vals.iter().map(move |v| {
                    let mut w = prefix.clone();
                    w.push(v.clone());
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(|c| h2.element(c)).collect()
}

/// Enumerates the fiberwise n-fold coverings of `p`, one per element of
/// `H¹(M; Zₙ)`, or reports the obstruction.
pub fn enumerate_covering_classes(p: &CircleBundle, n: u64) -> Result<CoveringEnumeration> {
    let nb = degree(n)?;
    let red = reduce_mod_n(p.base.h2(), &p.euler, &nb)?;
    if !red.zero {
        return Ok(CoveringEnumeration::Obstructed {
            euler_mod_n: red.element,
        });
    }
    let upstairs = covering_euler_classes(p, n)?
        .into_iter()
        .next()
        .expect("vanishing reduction means n·x = e is solvable");
    let h1_zn = hom_to_zn(p.base.h1(), &nb)?;
    let classes = h1_zn
        .elements()?
        .into_iter()
        .map(|alpha| FiberwiseCoveringClass {
            n: nb.clone(),
            alpha,
            upstairs_euler: upstairs.clone(),
        })
        .collect();
    Ok(CoveringEnumeration::Torsor { h1_zn, classes })
}

/// Weight `w(e, r)` of each relator `r` of π₁(M) under the Euler class `e`.
fn relator_weights(m: &Manifold3Data, e: &GroupElement) -> Result<Vec<BigInt>> {
    let pairing = m.relator_pairing();
    if pairing.rows() != e.coords().len() || pairing.cols() != m.pi1().relators().len() {
        return Err(Error::Dimension(format!(
            "relator pairing is {}x{} but the class has {} coordinates and π₁ has {} relators",
            pairing.rows(),
            pairing.cols(),
            e.coords().len(),
            m.pi1().relators().len()
        )));
    }
    pairing.transpose().mul_vec(e.coords())
}

/// π₁ of the circle bundle with Euler class `e`: the generators of π₁(M) plus
/// a central fiber generator `t`, each relator `r` replaced by `r·t^{-w(e,r)}`.
pub fn central_extension_presentation(
    m: &Manifold3Data,
    e: &GroupElement,
) -> Result<GroupPresentation> {
    if !m.h2().contains(e) {
        return Err(Error::NotInGroup(format!("{:?}", e.coords())));
    }
    let weights = relator_weights(m, e)?;
    let g = m.pi1().generators().len();
    let t = g as i64 + 1;
    let mut generators = m.pi1().generators().to_vec();
    generators.push(fresh_fiber_name(&generators));
    let relators = m
        .pi1()
        .relators()
        .iter()
        .zip(&weights)
        .map(|(word, w)| {
            let w = w.to_i64().ok_or_else(|| {
                Error::Presentation(format!("relator weight {w} does not fit a machine word"))
            })?;
            let mut out = word.clone();
            let letter = if w > 0 { -t } else { t };
            out.extend(std::iter::repeat_n(letter, w.unsigned_abs() as usize));
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupPresentation::with_central(generators, relators, Some(g))
}

fn fresh_fiber_name(existing: &[String]) -> String {
    let mut name = "t".to_string();
    while existing.contains(&name) {
        name.push('\'');
    }
    name
}

/// Position in the exact sequence where a check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactnessSpot {
    /// π* does not land in H¹(P; Zₙ) or is not injective.
    PullbackInjective,
    /// image(π*) ≠ kernel(ι*).
    AtTotalSpace,
    /// image(ι*) ≠ kernel(d).
    AtFiber,
    /// The explicit cochain model disagrees with the abelianization count.
    CochainModel,
    /// |H¹(P)| ≠ |H¹(M)|·|kernel(d)|.
    CountingIdentity,
}

/// Outcome of [`gysin_check`]. Orders are group cardinalities.
#[derive(Clone, Debug, Serialize)]
pub struct GysinReport {
    pub base: String,
    pub euler: Vec<i64>,
    pub n: u64,
    pub h1_total_invariants: (usize, Vec<i64>),
    pub h1_base_zn_order: u64,
    pub h1_total_zn_order: u64,
    pub h1_total_zn_enumerated: u64,
    pub kernel_d: Vec<u64>,
    pub image_iota: Vec<u64>,
    pub euler_mod_n: Vec<i64>,
    pub pullback_injective: bool,
    pub exact_at_total_space: bool,
    pub exact_at_fiber: bool,
    pub d_generator_is_euler_mod_n: bool,
    pub counting_identity: bool,
    pub failures: Vec<ExactnessSpot>,
}

impl GysinReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All `v ∈ Zₙ^cols` with `R·v ≡ 0 (mod n)`, i.e. `Hom(⟨gens | R⟩^ab, Zₙ)`
/// written as values on the generators.
fn cocycles_mod_n(relations: &IntMatrix, n: &BigInt) -> Result<BTreeSet<Vec<BigInt>>> {
    let zero_rhs = vec![BigInt::zero(); relations.rows()];
    let sol = solve_mod(relations, &zero_rhs, n)?
        .expect("the homogeneous system always has the zero solution");
    let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    let mut frontier = vec![vec![BigInt::zero(); relations.cols()]];
    seen.insert(frontier[0].clone());
    while let Some(v) = frontier.pop() {
        for k in &sol.kernel {
            let w: Vec<BigInt> = v.iter().zip(k).map(|(a, b)| (a + b).mod_floor(n)).collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    Ok(seen)
}

fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Dimension(format!("group order {x} exceeds the enumeration range")))
}

/// Checks exactness of `0 → H¹(M) → H¹(P) → H¹(S¹) → H²(M)` with `Zₙ`
/// coefficients for the bundle `p`, together with the counting identity
/// `|H¹(P)| = |H¹(M)|·|kernel(d)|`.
pub fn gysin_check(p: &CircleBundle, n: u64) -> Result<GysinReport> {
    let nb = degree(n)?;
    let m = &p.base;
    let e = &p.euler;
    let total = central_extension_presentation(m, e)?;
    let h1_total = abelianization(&total);
    let h1_total_zn_order = to_u64(&hom_to_zn(&h1_total, &nb)?.order().expect("finite"))?;
    let h1_base_zn_order = to_u64(&hom_to_zn(m.h1(), &nb)?.order().expect("finite"))?;

    let g = m.pi1().generators().len();
    let base_cocycles = cocycles_mod_n(&m.pi1().exponent_matrix(), &nb)?;
    let total_cocycles = cocycles_mod_n(&total.exponent_matrix(), &nb)?;

    let pullback = |u: &Vec<BigInt>| -> Vec<BigInt> {
        let mut v = u.clone();
        v.push(BigInt::zero());
        v
    };
    let restrict = |v: &Vec<BigInt>| -> BigInt { v[g].clone() };
    let e_n = reduce_mod_n(m.h2(), e, &nb)?.element;
    let d = |k: u64| -> Result<GroupElement> {
        let ke = m.h2().scale(&BigInt::from(k), e)?;
        Ok(reduce_mod_n(m.h2(), &ke, &nb)?.element)
    };

    let image_pullback: BTreeSet<Vec<BigInt>> = base_cocycles.iter().map(pullback).collect();
    let pullback_injective =
        image_pullback.len() == base_cocycles.len() && image_pullback.is_subset(&total_cocycles);

    let kernel_restrict: BTreeSet<Vec<BigInt>> = total_cocycles
        .iter()
        .filter(|v| restrict(v).is_zero())
        .cloned()
        .collect();
    let exact_at_total_space = image_pullback == kernel_restrict;

    let image_iota: BTreeSet<u64> = total_cocycles
        .iter()
        .map(|v| restrict(v).to_u64().expect("residue below n"))
        .collect();
    let mut kernel_d = BTreeSet::new();
    for k in 0..n {
        if d(k)?.is_zero() {
            kernel_d.insert(k);
        }
    }
    let exact_at_fiber = image_iota == kernel_d;
    let d_generator_is_euler_mod_n = d(1)? == e_n;

    let enumerated = total_cocycles.len() as u64;
    let counting_identity = h1_total_zn_order == h1_base_zn_order * kernel_d.len() as u64;

    let mut failures = Vec::new();
    if !pullback_injective {
        failures.push(ExactnessSpot::PullbackInjective);
    }
    if !exact_at_total_space {
        failures.push(ExactnessSpot::AtTotalSpace);
    }
    if !exact_at_fiber || !d_generator_is_euler_mod_n {
        failures.push(ExactnessSpot::AtFiber);
    }
    if enumerated != h1_total_zn_order || base_cocycles.len() as u64 != h1_base_zn_order {
        failures.push(ExactnessSpot::CochainModel);
    }
    if !counting_identity {
        failures.push(ExactnessSpot::CountingIdentity);
    }

    Ok(GysinReport {
        base: m.name().to_string(),
        euler: e.to_i64s().unwrap_or_default(),
        n,
        h1_total_invariants: (
            h1_total.rank(),
            h1_total
                .torsion()
                .iter()
                .map(|x| x.to_i64().unwrap_or(i64::MAX))
                .collect(),
        ),
        h1_base_zn_order,
        h1_total_zn_order,
        h1_total_zn_enumerated: enumerated,
        kernel_d: kernel_d.into_iter().collect(),
        image_iota: image_iota.into_iter().collect(),
        euler_mod_n: e_n.to_i64s().unwrap_or_default(),
        pullback_injective,
        exact_at_total_space,
        exact_at_fiber,
        d_generator_is_euler_mod_n,
        counting_identity,
        failures,
    })
}
