//! The standard contact structure on `T³` and the Engel frames `𝒟ⁿ_α` on
//! `T³ × S¹`, coordinates `(x, y, z, θ)`.

use super::field::TrigVectorField;
use super::forms::TrigOneForm;
use super::trig::TrigScalar;
use crate::error::{Error, Result};

const Z: [i64; 4] = [0, 0, 2, 0];

/// `sin(2πz) dx + cos(2πz) dy`.
pub fn contact_form() -> TrigOneForm {
    TrigOneForm::one_form([
        TrigScalar::sin(Z),
        TrigScalar::cos(Z),
        TrigScalar::zero(),
        TrigScalar::zero(),
    ])
}

/// `V_p = cos(2πz) ∂x − sin(2πz) ∂y`, the horizontal unit vector in the
/// kernel of [`contact_form`].
pub fn contact_plane_field() -> TrigVectorField {
    TrigVectorField::new([
        TrigScalar::cos(Z),
        -TrigScalar::sin(Z),
        TrigScalar::zero(),
        TrigScalar::zero(),
    ])
}

/// The contact form with the oriented frame `(∂z, V_p)` of its kernel.
pub fn standard_contact_frame() -> (TrigOneForm, [TrigVectorField; 2]) {
    (
        contact_form(),
        [TrigVectorField::coordinate(2), contact_plane_field()],
    )
}

/// `∂θ`.
pub fn fiber_field() -> TrigVectorField {
    TrigVectorField::coordinate(3)
}

/// A plane field given by spanning vector fields and a declared rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    spanners: Vec<TrigVectorField>,
    rank: usize,
}

impl Distribution {
    pub fn new(spanners: Vec<TrigVectorField>, rank: usize) -> Result<Self> {
        if spanners.is_empty() || rank == 0 || rank > spanners.len() || rank > 4 {
            return Err(Error::Distribution(format!(
                "declared rank {rank} with {} spanners",
                spanners.len()
            )));
        }
        Ok(Self { spanners, rank })
    }

    pub fn spanners(&self) -> &[TrigVectorField] {
        &self.spanners
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// `W = cos(πs) ∂z + sin(πs) V_p` with `s = nθ + ⟨α, p⟩`.
pub fn prolonged_spanner(n: i64, alpha: [i64; 3]) -> TrigVectorField {
    let phase = [alpha[0], alpha[1], alpha[2], n];
    let tilt = contact_plane_field().scaled_by(&TrigScalar::sin(phase));
    &TrigVectorField::coordinate(2).scaled_by(&TrigScalar::cos(phase)) + &tilt
}

/// `𝒟ⁿ_α = span(∂θ, W)`. Requires `α` reduced mod `n` (so `α = 0` when
/// `n = 1`, which is the canonical distribution of the prolongation).
pub fn prolonged_engel_frame(n: i64, alpha: [i64; 3]) -> Result<Distribution> {
    if n < 1 {
        return Err(Error::InvalidDegree { n, min: 1 });
    }
    if alpha.iter().any(|&a| a < 0 || a >= n) {
        return Err(Error::Precondition(format!(
            "alpha {alpha:?} is not reduced mod {n}"
        )));
    }
    Distribution::new(vec![fiber_field(), prolonged_spanner(n, alpha)], 2)
}

/// `𝒟(ξ)` for the standard contact structure on `T³`.
pub fn prolongation_distribution() -> Distribution {
    Distribution {
        spanners: vec![fiber_field(), prolonged_spanner(1, [0; 3])],
        rank: 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: [f64; 4], b: [f64; 4]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn frame_annihilates_form() {
        let (form, frame) = standard_contact_frame();
        for v in &frame {
            assert!(form.pair(v).unwrap().is_zero());
        }
    }

    #[test]
    fn form_at_special_heights() {
        let form = contact_form();
        assert_eq!(form.eval_component(1, [0.3, 0.1, 0.0, 0.0]), 0.0);
        assert_eq!(form.eval_component(2, [0.3, 0.1, 0.0, 0.0]), 1.0);
        assert!((form.eval_component(1, [0.0, 0.0, 0.25, 0.0]) - 1.0).abs() < 1e-15);
        assert!(form.eval_component(2, [0.0, 0.0, 0.25, 0.0]).abs() < 1e-15);
    }

    #[test]
    fn spanner_at_sample_points() {
        let w = prolonged_spanner(2, [1, 0, 0]);
        assert!(close(w.eval([0.0; 4]), [0.0, 0.0, 1.0, 0.0]));
        let vp = contact_plane_field().eval([0.5, 0.0, 0.0, 0.0]);
        assert!(close(w.eval([0.5, 0.0, 0.0, 0.0]), vp));
    }

    #[test]
    fn first_prolongation_is_canonical() {
        assert_eq!(
            prolonged_engel_frame(1, [0; 3]).unwrap(),
            prolongation_distribution()
        );
    }

    #[test]
    fn unreduced_alpha_is_rejected() {
        assert!(prolonged_engel_frame(2, [2, 0, 0]).is_err());
        assert!(prolonged_engel_frame(1, [1, 0, 0]).is_err());
        assert!(prolonged_engel_frame(0, [0, 0, 0]).is_err());
    }
}
