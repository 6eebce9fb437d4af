//! Sarkisov links through nodal Fano 3-folds and bounds on their defect.

pub mod classification;
pub mod defect;
pub mod exec;
pub mod intersection;
pub mod nodal;
pub mod selfcheck;
pub mod table;
pub mod takeuchi;

pub use classification::{all_rank_one_targets, FanoDescriptor, FanoKind};
pub use exec::Execution;
