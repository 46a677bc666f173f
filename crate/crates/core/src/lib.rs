//! Decompositions of matroid base polytopes by sequences of hyperplane splits.
//!
//! Matroids are explicit base families over a ground set `{1..n}` with
//! `n <= 64`. On top of that the crate provides good t-partitions, the
//! prefix-defined decomposition pieces, exact face certificates, rank-3
//! point-line configurations, and the relaxation and direct-sum transfers.
//!
//! Everything is exact: integer or big-integer arithmetic, no floating point.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod bitmap;
pub mod decompose;
pub mod fixtures;
pub mod geometry;
mod linalg;
pub mod matroid;
pub mod partition;
pub mod polytope;
pub mod subset;

pub use decompose::{
    count_partitions_pt, direct_sum_lift, enumerate_uniform_decompositions, intersection_family,
    lemma2_pieces, relaxation_transfer, uniform_good_partition, verify_sequence_decomposition,
    Decomposition, Provenance,
};
pub use geometry::{matroid_from_config, PointLineConfig};
pub use matroid::{BaseFamily, ExchangeViolation, Matroid, MatroidError};
pub use partition::{is_good_partition, search_good_partitions, GoodPartitionCandidate};
pub use polytope::{face_certificate, verify_decomposition, FaceCertificate};
pub use subset::Subset;
