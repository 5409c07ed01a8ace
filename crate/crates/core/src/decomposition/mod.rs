//! Truncations, Motzkin decompositions and the decomposability classifier.

mod classify;
mod motzkin;
mod pk;
mod probe;
mod radius;
mod truncation;

pub use classify::{classify, ApproxBasis, ClassificationReport, Verdict, Witness};
pub use motzkin::{motzkin_decompose, MotzkinDecomposition};
pub use pk::{pk_pointwise_check, PkPointReport};
pub use probe::{continuity_probe, ProbeVerdict};
pub use radius::{radius_for_epsilon, DivergenceReason, RadiusSearchResult};
pub use truncation::{truncate, Truncation};
