//! Classification of integral fusion category types by global
//! (Frobenius-Perron) dimension.
//!
//! The crate breaks the classification of candidate types for a fixed
//! global dimension `N` into three stages:
//!
//! 1. **Enumeration** ([`enumerate`]): generate every type signature
//!    `(1, n0; d1, n1; ...; ds, ns)` whose dimensions sum to `N`.
//! 2. **Arithmetic filters** ([`filters`]): apply divisibility and counting
//!    rules that exclude most signatures outright.
//! 3. **Fusion-ring search** ([`solver`]): for the remaining signatures,
//!    decide by exhaustive constraint search whether any fusion ring with
//!    that type exists; a completed search with no solution excludes the
//!    type.
//!
//! Candidate tables produced by the search are checked independently by
//! [`fusion::FusionTable::verify`], and whole runs are compared against the
//! built-in reference lists via [`report`].

pub mod catalog;
pub mod enumerate;
pub mod filters;
pub mod fusion;
pub mod group;
pub mod report;
pub mod signature;
pub mod solver;
