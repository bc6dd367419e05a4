//! Exact trigonometric calculus on `T⁴ = R⁴/Z⁴` and verification of the
//! Engel structures `𝒟ⁿ_α = span(∂θ, cos(πs)∂z + sin(πs)V_p)`,
//! `s = nθ + ⟨α, p⟩`.

mod development;
mod field;
mod forms;
mod frames;
mod precise;
mod rank;
mod serial;
mod trig;

pub use development::{development_alpha, twisting_number, twisting_number_at};
pub use field::{lie_bracket, CompiledField, TrigVectorField};
pub use forms::{contact_check, ContactReport, TrigForm, TrigOneForm, VOLUME_XYZ};
pub use frames::{
    contact_form, contact_plane_field, fiber_field, prolongation_distribution,
    prolonged_engel_frame, prolonged_spanner, standard_contact_frame, Distribution,
};
pub use precise::HighPrecision;
pub use rank::{
    characteristic_line_check, engel_check, grid_point, singular_value, CharacteristicReport,
    EngelFailure, EngelReport, StageReport, DEFAULT_GRID, DEFAULT_TOLERANCE, ENGEL_RANKS,
};
pub use serial::{field_from_terms, field_to_terms, DistributionJson, TermJson};
pub use trig::{CompiledScalar, TermKey, TrigScalar, Wave, COORDS};
