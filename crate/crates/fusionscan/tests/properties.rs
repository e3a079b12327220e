//! Randomized invariants: signature parse/render round-trips, group-ring
//! tables, stabilizer closure on found models, and solver monotonicity
//! under budget and symmetry-breaking changes.

use proptest::prelude::*;

use fusionscan::enumerate::enumerate_signatures;
use fusionscan::fusion::FusionTable;
use fusionscan::group::group_catalog;
use fusionscan::signature::{DimEntry, TypeSignature};
use fusionscan::solver::{solve, SolveConfig, SolveStatus};

/// A random well-formed signature: unit entry plus one to four strictly
/// increasing noninvertible dimensions with small counts.
fn signature_strategy() -> impl Strategy<Value = TypeSignature> {
    (
        1u64..=12,
        prop::collection::btree_set(2u64..=9, 1..=4),
        prop::collection::vec(1u64..=6, 4),
    )
        .prop_map(|(n0, dims, counts)| {
            let mut entries = vec![DimEntry { dim: 1, count: n0 }];
            for (i, dim) in dims.into_iter().enumerate() {
                entries.push(DimEntry {
                    dim,
                    count: counts[i % counts.len()],
                });
            }
            TypeSignature::new(entries).expect("strategy builds valid signatures")
        })
}

proptest! {
    #[test]
    fn parse_inverts_render(sig in signature_strategy()) {
        let rendered = sig.to_string();
        let reparsed: TypeSignature = rendered.parse().expect("rendered text parses");
        prop_assert_eq!(&reparsed, &sig);
    }

    #[test]
    fn global_dim_survives_reparsing(sig in signature_strategy()) {
        let reparsed: TypeSignature = sig.to_string().parse().unwrap();
        prop_assert_eq!(reparsed.global_dim_u64(), sig.global_dim_u64());
    }

    #[test]
    fn enumerated_signatures_have_the_requested_dimension(n in 2u64..=60) {
        for sig in enumerate_signatures(n, None) {
            prop_assert_eq!(sig.global_dim_u64(), n);
            let reparsed: TypeSignature = sig.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, sig);
        }
    }

    /// A conclusive verdict never changes when the budget grows.
    #[test]
    fn budget_growth_preserves_conclusive_verdicts(
        n in 5u64..=18,
        index: prop::sample::Index,
        budget in 0u64..=2_000,
    ) {
        let sigs = enumerate_signatures(n, None);
        prop_assume!(!sigs.is_empty());
        let sig = &sigs[index.index(sigs.len())];
        let small = solve(sig, &SolveConfig { budget, symmetry_breaking: true });
        let full = solve(sig, &SolveConfig::default());
        if !matches!(small.status, SolveStatus::Unknown(_)) {
            prop_assert_eq!(small.status.name(), full.status.name());
            prop_assert_eq!(small.nodes, full.nodes);
        }
    }
}

#[test]
fn group_ring_tables_always_verify() {
    let mut checked = 0;
    for order in 1..=8 {
        for group in group_catalog(order).expect("orders up to 8 are cataloged") {
            let table = FusionTable::group_ring(group);
            assert!(
                table.verify().is_empty(),
                "group ring of order {order} fails verification"
            );
            checked += 1;
        }
    }
    // 1,1,1,2,1,2,1,5 groups for orders 1..=8.
    assert_eq!(checked, 14);
}

/// On every model the search finds, the invertibles fixing a simple `x`
/// form a subgroup (closure under the group product).
#[test]
fn stabilizers_of_found_models_are_subgroups() {
    let config = SolveConfig::default();
    let mut models = 0;
    for n in 2..=20u64 {
        for sig in enumerate_signatures(n, None) {
            let SolveStatus::Realizable(table) = solve(&sig, &config).status else {
                continue;
            };
            models += 1;
            let n0 = table.invertible_count();
            for x in n0..table.rank() {
                let fixers: Vec<usize> =
                    (0..n0).filter(|&g| table.n(g, x, x) == 1).collect();
                assert!(fixers.contains(&0), "identity fixes every simple");
                for &g in &fixers {
                    for &h in &fixers {
                        let gh = table.group().mult(g, h);
                        assert!(
                            fixers.contains(&gh),
                            "{sig}: stabilizer of {x} not closed"
                        );
                    }
                }
                assert_eq!(
                    (table.dims()[x] * table.dims()[x]) % fixers.len() as u64,
                    0,
                    "{sig}: stabilizer order must divide dim^2"
                );
            }
        }
    }
    assert!(models > 0, "corpus contains realizable types");
}

/// Symmetry breaking is a search optimization: it may change effort but
/// never the verdict.
#[test]
fn symmetry_breaking_never_changes_the_verdict() {
    for n in 5..=16u64 {
        for sig in enumerate_signatures(n, None) {
            let broken = solve(&sig, &SolveConfig::default());
            let full = solve(
                &sig,
                &SolveConfig {
                    budget: fusionscan::solver::DEFAULT_BUDGET,
                    symmetry_breaking: false,
                },
            );
            assert_eq!(
                broken.status.name(),
                full.status.name(),
                "{sig}: verdict changed with symmetry breaking off"
            );
            assert!(full.combos >= broken.combos);
        }
    }
}
