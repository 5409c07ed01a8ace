//! Unbounded closed convex sets: support functions, truncations, Hausdorff
//! distances and the decomposability classifier.

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod hausdorff;
pub mod lp;
mod minnorm;
pub mod numerics;
pub mod sets;

pub use decomposition::{
    classify, continuity_probe, motzkin_decompose, pk_pointwise_check, radius_for_epsilon, truncate,
    ClassificationReport, MotzkinDecomposition, RadiusSearchResult, Truncation, Verdict,
};
pub use error::{Error, Result};
pub use hausdorff::{
    brute_force_hausdorff_polytopes, hausdorff_support_estimate, hausdorff_support_estimate_with_threshold,
    inclusion_check, HausdorffEstimate, InclusionReport, DEFAULT_DIVERGENCE_THRESHOLD,
};
pub use numerics::{SampleConfig, Tolerance, Vector};
pub use sets::{ConeDescriptor, ConvexSet, DomainDescriptor, SetDescription, SupportValue};
