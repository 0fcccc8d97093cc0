//! Random frame generators and the registry of identity checks.

mod generate;
mod sampling;
mod suite;

pub use generate::{generate, FrameRng, GeneratorKind, GeneratorSpec};
pub use sampling::{gram_schmidt_basis, rayleigh_envelope, RayleighEnvelope};
pub use suite::{
    bounds_vs_sampling, norm_tolerance, polarization_check, polarization_terms, run_identity_suite,
    run_identity_suite_with, CheckRecord, CheckStatus, IdentityReport, PolarizationTerms, SuiteConfig,
    APPROACH_MAX_DIM, APPROACH_MIN_SAMPLES, APPROACH_REL, NORM_REL, REGISTRY, SAMPLING_SLACK,
};
