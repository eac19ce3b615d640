//! Three-manifold invariants from framed-link presentations.

mod classes;
mod invariants;
mod linalg;

pub use classes::{
    chain_class, chain_class_exact, check_class, cohomology_classes, cohomology_classes_exact,
    kirby_expand, CohomologyClass, ColorClass, KirbyColor,
};
pub use invariants::{
    chain_surgery_nr, lens_sum, nr, nr0_knot_surgery, nr0_symmetric_knot, nr_h_stabilized,
    sphere_normalization_holds, torus_surgery_nr, ChainLink, Companion, KnotLink, LensEntry,
    LensSum, LinkEvaluator, SplitLink, SurgeryPresentation, Weighting,
};
pub use linalg::{inertia, signature, smith_normal_form, LinkingMatrix, SmithForm};
