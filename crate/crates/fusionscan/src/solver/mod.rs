//! Fusion-ring feasibility search.
//!
//! Given a type signature, decide whether **any** fusion ring realizes it.
//! The search space for one candidate is determined by three choices:
//!
//! 1. a group structure on the invertible simples (from the built-in
//!    catalog of groups of order <= 16),
//! 2. an involutive duality on each class of equal-dimension simples
//!    (invertibles always dualize to their group inverses), and
//! 3. the remaining structure constants, organized into one variable per
//!    symmetry orbit of index triples.
//!
//! For each (group, duality) pair the solver runs a depth-first search with
//! constraint propagation over the orbit variables. If every pair's search
//! space is exhausted without finding a table that passes independent
//! verification, the signature is [`SolveStatus::Excluded`] — a certificate
//! that no fusion ring of this type exists. A verified table yields
//! [`SolveStatus::Realizable`]; running out of node budget or hitting an
//! unsupported shape yields [`SolveStatus::Unknown`].

mod dualities;
mod orbits;
mod propagate;
mod search;
mod shape;

pub use dualities::{class_dualities, duality_assignments};
pub use orbits::VarTable;
pub use shape::Shape;

use crate::fusion::FusionTable;
use crate::group::{group_catalog, MAX_CATALOG_ORDER};
use crate::signature::TypeSignature;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;

/// Default search budget: total value trials across all (group, duality)
/// pairs of one solve call.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Search parameters.
#[derive(Debug, Clone)]
pub struct SolveConfig {
    /// Maximum number of branch value trials before giving up.
    pub budget: u64,
    /// Explore only one representative duality per equivalence class under
    /// relabeling of equal-dimension simples. Sound for both exclusion and
    /// realizability; disable to search every involution.
    pub symmetry_breaking: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            budget: DEFAULT_BUDGET,
            symmetry_breaking: true,
        }
    }
}

/// Why a search ended without a definite answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnknownReason {
    /// The node budget ran out before the space was exhausted.
    BudgetExhausted,
    /// The invertible group order is outside the built-in catalog.
    GroupOrderUnsupported(u64),
    /// A structure constant's upper bound exceeds the domain representation.
    DomainTooLarge,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnknownReason::BudgetExhausted => f.write_str("node budget exhausted"),
            UnknownReason::GroupOrderUnsupported(n) => {
                write!(f, "no group catalog for invertible count {n} (max {MAX_CATALOG_ORDER})")
            }
            UnknownReason::DomainTooLarge => {
                f.write_str("a structure constant bound exceeds the 127-value domain limit")
            }
        }
    }
}

/// The verdict of a feasibility search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolveStatus {
    /// Every (group, duality) search space was exhausted; no fusion ring of
    /// this type exists.
    Excluded,
    /// A fusion ring was found and passed independent verification.
    Realizable(Box<FusionTable>),
    /// The search was inconclusive.
    Unknown(UnknownReason),
}

impl SolveStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SolveStatus::Excluded => "Excluded",
            SolveStatus::Realizable(_) => "Realizable",
            SolveStatus::Unknown(_) => "Unknown",
        }
    }
}

/// Outcome and effort statistics for one solve call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub signature: TypeSignature,
    pub status: SolveStatus,
    /// Value trials performed (deterministic for a fixed config).
    pub nodes: u64,
    /// True iff every (group, duality) search space was fully explored.
    /// Always true for `Excluded` and always false for `Realizable`, since
    /// the search stops at the first model.
    pub exhaustive: bool,
    /// Number of (group, duality) pairs examined.
    pub combos: u64,
}

/// Searches for a fusion ring of the given type.
pub fn solve(sig: &TypeSignature, config: &SolveConfig) -> SolveResult {
    solve_with_trace(sig, config, None)
}

/// [`solve`], optionally logging every branch and propagation step as
/// line-oriented text.
pub fn solve_with_trace(
    sig: &TypeSignature,
    config: &SolveConfig,
    mut trace: Option<&mut dyn Write>,
) -> SolveResult {
    let n0 = sig.invertible_count();
    let result = |status, nodes, exhaustive, combos| SolveResult {
        signature: sig.clone(),
        status,
        nodes,
        exhaustive,
        combos,
    };

    let Some(groups) = usize::try_from(n0)
        .ok()
        .and_then(group_catalog)
    else {
        return result(
            SolveStatus::Unknown(UnknownReason::GroupOrderUnsupported(n0)),
            0,
            false,
            0,
        );
    };

    let mut nodes: u64 = 0;
    let mut combos: u64 = 0;
    let mut first_model: Option<FusionTable> = None;
    let mut inconclusive: Option<UnknownReason> = None;

    'outer: for group in groups {
        let shape_base = Shape::new(sig, group);
        for sigma in duality_assignments(&shape_base, config.symmetry_breaking) {
            combos += 1;
            let shape = shape_base.with_duality(sigma);
            if let Some(t) = trace.as_deref_mut() {
                let _ = writeln!(
                    t,
                    "combo {combos}: group {} duality {:?}",
                    shape.group().name(),
                    shape.sigma()
                );
            }
            let vars = match VarTable::new(&shape) {
                Ok(vars) => vars,
                Err(orbits::BuildError::DomainTooLarge) => {
                    inconclusive = Some(UnknownReason::DomainTooLarge);
                    continue;
                }
                // A pre-assignment conflict means no table exists for this
                // (group, duality) pair; the space is trivially exhausted.
                Err(orbits::BuildError::Inconsistent) => continue,
            };
            let budget_left = config.budget.saturating_sub(nodes);
            let outcome = search::run(&shape, &vars, budget_left, trace.as_deref_mut());
            nodes += outcome.nodes;
            match outcome.found {
                Some(table) => {
                    first_model = Some(table);
                    // One verified model settles realizability; remaining
                    // combos are irrelevant to the verdict.
                    break 'outer;
                }
                None if outcome.exhausted => {}
                None => {
                    inconclusive = Some(UnknownReason::BudgetExhausted);
                    break 'outer;
                }
            }
        }
    }

    if let Some(table) = first_model {
        return result(
            SolveStatus::Realizable(Box::new(table)),
            nodes,
            false,
            combos,
        );
    }
    match inconclusive {
        Some(reason) => result(SolveStatus::Unknown(reason), nodes, false, combos),
        None => result(SolveStatus::Excluded, nodes, true, combos),
    }
}

#[cfg(test)]
mod tests;
