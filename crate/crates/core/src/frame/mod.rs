//! Frame sequences and the operators, bounds, duals and classification
//! derived from them.

mod analysis;
mod bundle;
mod sequence;

pub use analysis::{
    canonical_dual, classify, frame_bounds, pseudo_frame_operator, pseudo_gram, restricted,
    FrameBounds, FrameClassification, RestrictedOperators,
};
pub use bundle::{build_bundle, OperatorBundle};
pub use sequence::{FrameSequence, Truncated};
