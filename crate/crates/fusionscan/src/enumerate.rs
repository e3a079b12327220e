//! Exhaustive enumeration of candidate type signatures for a given global
//! dimension.
//!
//! A candidate for dimension `n` is any valid [`TypeSignature`] whose global
//! dimension is exactly `n`. The recursion chooses `n0` first, then entries
//! `(d, count)` with strictly increasing `d >= 2`, pruning branches whose
//! remaining budget cannot fit `d^2`. Because a completed signature exhausts
//! the budget, no emitted signature is a prefix of another, and the recursion
//! order coincides with the canonical `(n0, d1, n1, d2, n2, ...)` order.

use crate::signature::{DimEntry, TypeSignature};

/// Enumerates every candidate signature of global dimension `n`, in
/// canonical order. `max_rank`, when given, drops signatures with more than
/// that many simple objects.
pub fn enumerate_signatures(n: u64, max_rank: Option<u64>) -> Vec<TypeSignature> {
    let mut out = Vec::new();
    walk(n, max_rank, &mut |sig| out.push(sig.clone()));
    out
}

/// Counts the candidates of [`enumerate_signatures`] without materializing
/// the signatures themselves.
pub fn count_signatures(n: u64, max_rank: Option<u64>) -> u64 {
    let mut count = 0;
    walk(n, max_rank, &mut |_| count += 1);
    count
}

fn walk(n: u64, max_rank: Option<u64>, emit: &mut impl FnMut(&TypeSignature)) {
    // n0 = n is the pointed signature, which is out of scope, and any larger
    // n0 overshoots; each n0 needs room for at least one dim-2 entry.
    let mut entries = vec![DimEntry { dim: 1, count: 0 }];
    for n0 in 1..n {
        let remaining = n - n0;
        if remaining < 4 {
            break; // no room for a simple of dimension >= 2
        }
        let rank_budget = match max_rank {
            Some(limit) if n0 > limit => continue,
            Some(limit) => Some(limit - n0),
            None => None,
        };
        entries[0].count = n0;
        extend(remaining, 2, rank_budget, &mut entries, emit);
    }
}

/// Appends entries with dimensions `>= min_dim` summing (as `count * dim^2`)
/// to exactly `remaining`, emitting each completed signature.
fn extend(
    remaining: u64,
    min_dim: u64,
    rank_budget: Option<u64>,
    entries: &mut Vec<DimEntry>,
    emit: &mut impl FnMut(&TypeSignature),
) {
    debug_assert!(remaining > 0);
    let mut dim = min_dim;
    while dim * dim <= remaining {
        let sq = dim * dim;
        let mut count = 1;
        while count * sq <= remaining {
            if rank_budget.is_none_or(|limit| count <= limit) {
                entries.push(DimEntry { dim, count });
                let rest = remaining - count * sq;
                if rest == 0 {
                    let sig = TypeSignature::new(entries.clone())
                        .expect("enumeration preserves signature invariants");
                    emit(&sig);
                } else if rest >= (dim + 1) * (dim + 1) {
                    let budget = rank_budget.map(|limit| limit - count);
                    extend(rest, dim + 1, budget, entries, emit);
                }
                entries.pop();
            }
            count += 1;
        }
        dim += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render_all(n: u64) -> Vec<String> {
        enumerate_signatures(n, None)
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    #[test]
    fn small_dimensions_match_hand_enumeration() {
        assert!(render_all(1).is_empty());
        assert!(render_all(4).is_empty());
        assert_eq!(render_all(5), vec!["(1,1;2,1)"]);
        assert_eq!(render_all(6), vec!["(1,2;2,1)"]);
        assert_eq!(
            render_all(13),
            vec!["(1,1;2,3)", "(1,4;3,1)", "(1,5;2,2)", "(1,9;2,1)"]
        );
    }

    #[test]
    fn emits_signatures_in_canonical_order_without_duplicates() {
        let sigs = enumerate_signatures(36, None);
        for pair in sigs.windows(2) {
            assert!(pair[0] < pair[1], "{} !< {}", pair[0], pair[1]);
        }
    }

    #[test]
    fn every_candidate_has_the_requested_dimension() {
        for n in [10, 24, 36, 45] {
            for sig in enumerate_signatures(n, None) {
                assert_eq!(sig.global_dim_u64(), n, "{sig}");
            }
        }
    }

    #[test]
    fn count_agrees_with_materialized_enumeration() {
        for n in 1..=60 {
            assert_eq!(
                count_signatures(n, None),
                enumerate_signatures(n, None).len() as u64,
                "count mismatch at n={n}"
            );
        }
    }

    #[test]
    fn max_rank_filters_by_total_simple_count() {
        let all = enumerate_signatures(30, None);
        let bounded = enumerate_signatures(30, Some(6));
        assert!(all.len() > bounded.len());
        assert!(bounded.iter().all(|s| s.rank() <= 6));
        let expected: Vec<_> = all.into_iter().filter(|s| s.rank() <= 6).collect();
        assert_eq!(bounded, expected);
    }
}
