//! Independent slow references used to cross-check the closed forms.

pub mod plane_partitions;
pub mod skew;

pub use plane_partitions::{plane_partition_count, valuation_by_trailing_zeros, EnumerationGuard};
pub use skew::{skew_congruence_reduce, RationalMatrix, SkewReduction};
