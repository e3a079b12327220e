use super::*;
use crate::signature::TypeSignature;

fn sig(text: &str) -> TypeSignature {
    text.parse().expect("test signature parses")
}

fn solve_default(text: &str) -> SolveResult {
    solve(&sig(text), &SolveConfig::default())
}

#[test]
fn small_infeasible_types_are_excluded() {
    for text in [
        "(1,1;2,1)",
        "(1,3;2,1)",
        "(1,1;2,2)",
        "(1,1;3,1)",
        "(1,2;3,1)",
        "(1,1;2,3)",
        "(1,1;2,1;3,1)",
        "(1,2;2,1;3,1)",
    ] {
        let result = solve_default(text);
        assert_eq!(result.status.name(), "Excluded", "{text}");
        assert!(result.exhaustive, "{text} must be fully explored");
    }
}

#[test]
fn structural_refutations_cost_zero_nodes() {
    for text in ["(1,1;2,1)", "(1,1;3,1)", "(1,1;3,1;5,1;7,1)"] {
        let result = solve_default(text);
        assert_eq!(result.status.name(), "Excluded", "{text}");
        assert_eq!(result.nodes, 0, "{text} should die in root propagation");
    }
}

#[test]
fn the_two_invertible_one_double_type_is_forced() {
    // The character ring of the symmetric group on three letters:
    // g(x)x = x and x(x)x = 1 + g + x, all forced by propagation.
    let result = solve_default("(1,2;2,1)");
    let SolveStatus::Realizable(table) = &result.status else {
        panic!("expected a model, got {:?}", result.status.name());
    };
    assert_eq!(result.nodes, 0);
    assert_eq!(table.n(2, 2, 0), 1);
    assert_eq!(table.n(2, 2, 1), 1);
    assert_eq!(table.n(2, 2, 2), 1);
    assert_eq!(table.n(1, 2, 2), 1);
    assert!(table.is_valid());
}

#[test]
fn the_two_doubles_type_is_realizable_with_swapped_squares() {
    // The dihedral ring on two 2-dimensional simples: propagation forces
    // x1(x)x1 = 1 + g + x2 and x1(x)x2 = x1 + x2.
    let result = solve_default("(1,2;2,2)");
    let SolveStatus::Realizable(table) = &result.status else {
        panic!("expected a model, got {:?}", result.status.name());
    };
    assert_eq!(table.n(2, 2, 2), 0);
    assert_eq!(table.n(2, 2, 3), 1);
    assert_eq!(table.n(2, 3, 2), 1);
    assert_eq!(table.n(2, 3, 3), 1);
    assert!(table.is_valid());
}

#[test]
fn the_alternating_character_ring_is_forced() {
    let result = solve_default("(1,3;3,1)");
    let SolveStatus::Realizable(table) = &result.status else {
        panic!("expected a model, got {:?}", result.status.name());
    };
    assert_eq!(result.nodes, 0);
    assert_eq!(table.n(3, 3, 3), 2);
    for g in 0..3 {
        assert_eq!(table.n(3, 3, g), 1);
    }
    assert!(table.is_valid());
}

#[test]
fn unsupported_invertible_counts_are_unknown() {
    let result = solve_default("(1,17;2,1)");
    assert_eq!(
        result.status,
        SolveStatus::Unknown(UnknownReason::GroupOrderUnsupported(17))
    );
    assert!(!result.exhaustive);
}

#[test]
fn oversized_dimensions_are_unknown() {
    // 12*12 = 144 exceeds the 127-bit sum representation.
    let result = solve_default("(1,1;12,1)");
    assert_eq!(
        result.status,
        SolveStatus::Unknown(UnknownReason::DomainTooLarge)
    );
}

#[test]
fn budget_zero_on_a_branching_type_is_inconclusive() {
    let config = SolveConfig {
        budget: 0,
        ..SolveConfig::default()
    };
    let result = solve(&sig("(1,2;2,2;4,5)"), &config);
    assert_eq!(
        result.status,
        SolveStatus::Unknown(UnknownReason::BudgetExhausted)
    );
    assert_eq!(result.nodes, 0);
}

#[test]
fn branching_exclusions_stay_cheap() {
    // This type survives root propagation in several (group, duality)
    // spaces and is only refuted by search.
    let result = solve_default("(1,2;2,2;4,5)");
    assert_eq!(result.status.name(), "Excluded");
    assert!(result.exhaustive);
    assert!(result.nodes > 0, "this type requires branching");
    assert!(result.nodes <= 10_000, "got {} nodes", result.nodes);
}

#[test]
fn solving_is_deterministic() {
    let a = solve_default("(1,2;2,2;4,5)");
    let b = solve_default("(1,2;2,2;4,5)");
    assert_eq!(a.nodes, b.nodes);
    assert_eq!(a.combos, b.combos);
    assert_eq!(a.status, b.status);
}

#[test]
fn symmetry_breaking_does_not_change_the_verdict() {
    for text in ["(1,1;2,3)", "(1,2;2,2)", "(1,2;2,1;3,1)"] {
        let broken = solve(&sig(text), &SolveConfig::default());
        let full = solve(
            &sig(text),
            &SolveConfig {
                symmetry_breaking: false,
                ..SolveConfig::default()
            },
        );
        assert_eq!(broken.status.name(), full.status.name(), "{text}");
        assert!(full.combos >= broken.combos, "{text}");
    }
}

#[test]
fn traces_record_combos_and_steps() {
    let mut buf: Vec<u8> = Vec::new();
    let result = solve_with_trace(
        &sig("(1,1;2,1)"),
        &SolveConfig::default(),
        Some(&mut buf),
    );
    assert_eq!(result.status.name(), "Excluded");
    let text = String::from_utf8(buf).unwrap();
    assert!(text.contains("combo 1: group C1"), "trace was:\n{text}");
    assert!(text.contains("conflict"), "trace was:\n{text}");
    assert!(text.contains("step 1"), "trace was:\n{text}");
}

#[test]
fn found_tables_match_their_signature() {
    let result = solve_default("(1,2;2,2)");
    let SolveStatus::Realizable(table) = &result.status else {
        panic!("expected a model");
    };
    assert_eq!(table.dims(), &[1, 1, 2, 2]);
    assert_eq!(table.dual(0), 0);
    assert_eq!(table.group().order(), 2);
}
