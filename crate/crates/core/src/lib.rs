//! Fiberwise n-fold coverings of circle bundles over closed oriented
//! 3-manifolds, n-fold prolongations of contact 3-manifolds, and exact
//! verification of the Engel structures `𝒟ⁿ_α` on `T³ × S¹`.
//!
//! The algebra lives in [`linalg`] and [`groups`]; [`bundles`] decides
//! existence and enumerates covering classes; [`torus`] works with the
//! explicit coverings of `T³ × S¹`; [`engel`] does symbolic calculus on the
//! 4-torus; [`prolongation`] ties a contact structure to its prolongation.

pub mod bundles;
pub mod engel;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod prolongation;
pub mod torus;
pub mod winding;

pub use bundles::{
    covering_euler_classes, enumerate_covering_classes, gysin_check, obstruction_vanishes,
    CircleBundle, CoveringEnumeration, FiberwiseCoveringClass, GysinReport,
};
pub use engel::{
    characteristic_line_check, contact_check, development_alpha, engel_check, lie_bracket,
    prolonged_engel_frame, standard_contact_frame, twisting_number, Distribution, EngelReport,
    TrigOneForm, TrigScalar, TrigVectorField,
};
pub use error::{Error, Result};
pub use groups::{
    abelianization, hom_to_zn, reduce_mod_n, tensor_zn, FGAbelianGroup, GroupElement,
    GroupPresentation, Manifold3Data, ModNReduction,
};
pub use linalg::{smith_normal_form, solve_mod, IntMatrix, ModSolution, SmithDecomposition};
pub use prolongation::{
    counterexample_search, n_fold_prolongation_exists, prolongation_euler, GaussClass,
    ProlongationReport,
};
pub use torus::{
    build_phi_alpha, classify_covering_map, equivalence_test, Equivalence, TorusCoveringMap,
};
