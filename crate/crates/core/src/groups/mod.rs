//! Finitely generated abelian groups in invariant-factor form, plus the
//! presentation and manifold data that feed them.

mod manifold;
mod presentation;

pub use manifold::{InvariantsJson, Manifold3Data, ManifoldJson};
pub use presentation::{abelianization, GroupPresentation};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{reduce, smith_normal_form, IntMatrix};

/// `Z^rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `2 <= d₁ | d₂ | … | d_k`.
///
/// `basis_change` maps coordinates with respect to whatever generators the
/// group was presented with onto canonical coordinates (free first, then
/// torsion in invariant-factor order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
    basis_change: IntMatrix,
}

/// Canonical coordinates of an element; torsion coordinates are always
/// stored reduced into `[0, dᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coordinates as machine integers, for reporting.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// Serialized as a list of integers, with any coordinate beyond `i64`
/// written as a decimal string.
impl serde::Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

impl FGAbelianGroup {
    /// Validated canonical form with identity basis change.
    pub fn from_invariants(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::Manifold(format!("invariant factor {d} is below 2")));
            }
            if i > 0 && !d.is_multiple_of(&torsion[i - 1]) {
                return Err(Error::Manifold(format!(
                    "invariant factors {} and {d} break the divisibility chain",
                    torsion[i - 1]
                )));
            }
        }
        let coords = rank + torsion.len();
        Ok(Self {
            rank,
            torsion,
            basis_change: IntMatrix::identity(coords),
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::from_invariants(rank, Vec::new()).expect("free group is canonical")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z^g / (column span of relations)` where `g = relations.rows()`.
    pub fn cokernel(relations: &IntMatrix) -> Self {
        let snf = smith_normal_form(relations);
        let gens = relations.rows();
        let diag_at = |i: usize| -> BigInt {
            if i < relations.cols() {
                snf.d[(i, i)].clone()
            } else {
                BigInt::zero()
            }
        };
        let mut free_rows = Vec::new();
        let mut torsion_rows = Vec::new();
        let mut torsion = Vec::new();
        for i in 0..gens {
            let d = diag_at(i);
            if d.is_zero() {
                free_rows.push(i);
            } else if !d.is_one() {
                torsion_rows.push(i);
                torsion.push(d);
            }
        }
        let rank = free_rows.len();
        let order: Vec<usize> = free_rows.into_iter().chain(torsion_rows).collect();
        let mut basis_change = IntMatrix::zeros(order.len(), gens);
        for (r, &src) in order.iter().enumerate() {
            for c in 0..gens {
                basis_change[(r, c)] = snf.u[(src, c)].clone();
            }
        }
        Self {
            rank,
            torsion,
            basis_change,
        }
    }

    /// Direct sum of cyclic groups of the given orders (`0` meaning `Z`),
    /// brought into canonical form. Raw coordinates are one per summand.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        Self::cokernel(&IntMatrix::diagonal(orders))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn basis_change(&self) -> &IntMatrix {
        &self.basis_change
    }

    pub fn coordinate_count(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Modulus of coordinate `i`: zero for free coordinates.
    pub fn coordinate_modulus(&self, i: usize) -> BigInt {
        if i < self.rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.rank].clone()
        }
    }

    /// Same rank and invariant factors.
    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.rank == other.rank && self.torsion == other.torsion
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.coordinate_count() {
            return Err(Error::NotInGroup(format!(
                "expected {} coordinates, got {}",
                self.coordinate_count(),
                coords.len()
            )));
        }
        let coords = coords
            .iter()
            .enumerate()
            .map(|(i, x)| reduce(x, &self.coordinate_modulus(i)))
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Maps presentation coordinates through `basis_change`.
    pub fn project(&self, raw: &[BigInt]) -> Result<GroupElement> {
        self.element(self.basis_change.mul_vec(raw)?)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.coordinate_count()],
        }
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        e.coords.len() == self.coordinate_count()
            && e.coords.iter().enumerate().all(|(i, x)| {
                let m = self.coordinate_modulus(i);
                m.is_zero() || (!x.is_negative() && *x < m)
            })
    }

    fn check(&self, e: &GroupElement) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::NotInGroup(format!("{:?}", e.coords)))
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        self.element(a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.element(a.coords.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn scale(&self, k: &BigInt, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.element(a.coords.iter().map(|x| k * x).collect())
    }

    /// Every element of a finite group, in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut out = vec![Vec::new()];
        for d in &self.torsion {
            let d = d.to_u64().ok_or(Error::InfiniteGroup)?;
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<BigInt>| {
                    (0..d).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(BigInt::from(x));
                        v
                    })
                })
                .collect();
        }
        Ok(out
            .into_iter()
            .map(|coords| GroupElement { coords })
            .collect())
    }
}

fn check_degree(n: &BigInt) -> Result<()> {
    if *n < BigInt::from(2) {
        return Err(Error::InvalidDegree {
            n: n.to_i64().unwrap_or(i64::MIN),
            min: 2,
        });
    }
    Ok(())
}

/// Orders `[n; rank] ++ [gcd(dᵢ, n)]` shared by `Hom(G, Zₙ)` and `G ⊗ Zₙ`.
fn mod_n_orders(g: &FGAbelianGroup, n: &BigInt) -> Vec<BigInt> {
    std::iter::repeat_n(n.clone(), g.rank)
        .chain(g.torsion.iter().map(|d| d.gcd(n)))
        .collect()
}

/// `Hom(G, Zₙ) ≅ Zₙ^rank ⊕ ⨁ Z_gcd(dᵢ, n)`.
///
/// Raw coordinates are one per canonical generator of `g`: the value in `Zₙ`
/// on a free generator, and for a torsion generator of order `d` the
/// coefficient `c` of the admissible value `(n / gcd(d, n))·c`.
pub fn hom_to_zn(g: &FGAbelianGroup, n: &BigInt) -> Result<FGAbelianGroup> {
    check_degree(n)?;
    Ok(FGAbelianGroup::from_cyclic_orders(&mod_n_orders(g, n)))
}

/// `G ⊗ Zₙ`, which is `H²(M; Zₙ)` when `G = H²(M; Z)` and `M` is a closed
/// oriented 3-manifold.
pub fn tensor_zn(g: &FGAbelianGroup, n: &BigInt) -> Result<FGAbelianGroup> {
    check_degree(n)?;
    Ok(FGAbelianGroup::from_cyclic_orders(&mod_n_orders(g, n)))
}

/// The mod-n reduction of an integral class, with its zero test.
#[derive(Clone, Debug)]
pub struct ModNReduction {
    pub group: FGAbelianGroup,
    pub element: GroupElement,
    /// Whether the reduction vanishes, i.e. `e ∈ n·H²(M; Z)`.
    pub zero: bool,
}

/// Reduces `e ∈ h2` modulo `n`.
///
/// The kernel of reduction is `n·h2`, so the zero test asks exactly whether
/// `n·x = e` is solvable: free coordinates need `n | eᵢ`, torsion
/// coordinates need `gcd(n, dᵢ) | eᵢ`.
pub fn reduce_mod_n(h2: &FGAbelianGroup, e: &GroupElement, n: &BigInt) -> Result<ModNReduction> {
    check_degree(n)?;
    h2.check(e)?;
    let group = tensor_zn(h2, n)?;
    let element = group.project(e.coords())?;
    let zero = element.is_zero();
    Ok(ModNReduction {
        group,
        element,
        zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn cokernel_of_diag_two_three_is_z6() {
        let g = FGAbelianGroup::from_cyclic_orders(&[b(2), b(3)]);
        assert_eq!(g.rank(), 0);
        assert_eq!(g.torsion(), &[b(6)]);
        assert_eq!(g.order(), Some(b(6)));
        // (1, 0) in Z2 ⊕ Z3 has order 2
        let x = g.project(&[b(1), b(0)]).unwrap();
        let twice = g.add(&x, &x).unwrap();
        assert!(twice.is_zero());
        assert!(!x.is_zero());
    }

    #[test]
    fn invariant_chain_is_validated() {
        assert!(FGAbelianGroup::from_invariants(0, vec![b(2), b(3)]).is_err());
        assert!(FGAbelianGroup::from_invariants(0, vec![b(1)]).is_err());
        assert!(FGAbelianGroup::from_invariants(1, vec![b(2), b(4)]).is_ok());
    }

    #[test]
    fn hom_to_zn_examples() {
        let n = b(5);
        let z3 = FGAbelianGroup::free(3);
        let h = hom_to_zn(&z3, &n).unwrap();
        assert_eq!(h.torsion(), &[b(5), b(5), b(5)]);

        let z4 = FGAbelianGroup::from_invariants(0, vec![b(4)]).unwrap();
        let h = hom_to_zn(&z4, &b(2)).unwrap();
        assert_eq!(h.torsion(), &[b(2)]);

        let h = hom_to_zn(&FGAbelianGroup::trivial(), &b(3)).unwrap();
        assert_eq!(h.order(), Some(b(1)));

        assert!(hom_to_zn(&z3, &b(1)).is_err());
    }

    #[test]
    fn reduction_examples() {
        let t3 = FGAbelianGroup::free(3);
        let e = t3.element_i64(&[4, 0, 0]).unwrap();
        assert!(reduce_mod_n(&t3, &e, &b(4)).unwrap().zero);
        let e = t3.element_i64(&[1, 0, 0]).unwrap();
        assert!(!reduce_mod_n(&t3, &e, &b(3)).unwrap().zero);

        let z4 = FGAbelianGroup::from_invariants(0, vec![b(4)]).unwrap();
        let e = z4.element_i64(&[2]).unwrap();
        assert!(reduce_mod_n(&z4, &e, &b(2)).unwrap().zero);
        let e = z4.element_i64(&[1]).unwrap();
        assert!(!reduce_mod_n(&z4, &e, &b(2)).unwrap().zero);

        assert!(reduce_mod_n(&t3, &t3.zero(), &b(1)).is_err());
    }

    #[test]
    fn torsion_coordinates_are_reduced() {
        let g = FGAbelianGroup::from_invariants(1, vec![b(4)]).unwrap();
        let e = g.element_i64(&[-3, -1]).unwrap();
        assert_eq!(e.coords(), &[b(-3), b(3)]);
        assert_eq!(
            g.element_i64(&[0, 7]).unwrap(),
            g.element_i64(&[0, 3]).unwrap()
        );
        assert!(g.element_i64(&[1]).is_err());
    }

    #[test]
    fn elements_of_infinite_group_is_an_error() {
        assert!(FGAbelianGroup::free(1).elements().is_err());
        let g = FGAbelianGroup::from_invariants(0, vec![b(2), b(4)]).unwrap();
        assert_eq!(g.elements().unwrap().len(), 8);
    }
}
