//! Permutation triples of small degree, their monodromy groups, passports
//! and pointed passports.
//!
//! Products act on the right (`i^(pq) = (i^p)^q`) and triples satisfy
//! `σ∞σ1σ0 = 1`, so `σ∞ = (σ1σ0)⁻¹`.

pub mod classify;
pub mod error;
pub mod group;
pub mod passport;
pub mod perm;
pub mod pointed;
mod schreier;
pub mod triple;

pub use classify::GroupKey;
pub use error::{Error, Result};
pub use group::{
    centralizer, classes_mod, closure, closure_with, coset_pair_reps, is_transitive, normalizer_in_sym,
    subgroup_conjugator, Limits, PermGroup, Signature,
};
pub use passport::{
    assemble_passports, enumerate_degree, enumerate_group, genus, partition_leq, s3_canonicalize, EnumerationTask,
    Mode, Passport,
};
pub use perm::{compose, cycle_type, index, inverse, Partition, Permutation};
pub use pointed::{descends_by_size, moduli_degree_bound, pointed_aut, pointed_classes, PointedPassport, PointedTriple};
pub use schreier::group_order;
pub use triple::{
    canonical_triple, simultaneous_conjugator, triple_automorphisms, Branch, PermutationTriple, S3,
};
