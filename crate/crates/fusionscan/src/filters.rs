//! Arithmetic exclusion rules for candidate type signatures.
//!
//! Each rule is a pure predicate on `(signature, N)`: divisibility and
//! counting constraints that any fusion ring of global dimension `N` must
//! satisfy. A signature violating a rule cannot be the type of such a ring
//! and is excluded without any search. Rules R1-R13 are universal; R14 is
//! an opt-in rule scoped to `N = 90`. RF is a marker, not an exclusion: it
//! tags signatures that are not of Frobenius type, which the search stage
//! must later refute individually.
//!
//! All selected rules are evaluated on every signature (no short-circuit on
//! the first firing), so a report carries complete attribution.

use crate::signature::TypeSignature;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Stable identifiers for the exclusion rules and the Frobenius marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
    R14,
    RF,
}

impl RuleId {
    /// Every rule, in catalog order.
    pub const ALL: [RuleId; 15] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::R11,
        RuleId::R12,
        RuleId::R13,
        RuleId::R14,
        RuleId::RF,
    ];

    /// The rules applied by default: all universal rules plus the marker.
    /// R14 participates only when explicitly enabled for `N = 90`.
    pub const DEFAULT: [RuleId; 14] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::R11,
        RuleId::R12,
        RuleId::R13,
        RuleId::RF,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::R1 => "R1",
            RuleId::R2 => "R2",
            RuleId::R3 => "R3",
            RuleId::R4 => "R4",
            RuleId::R5 => "R5",
            RuleId::R6 => "R6",
            RuleId::R7 => "R7",
            RuleId::R8 => "R8",
            RuleId::R9 => "R9",
            RuleId::R10 => "R10",
            RuleId::R11 => "R11",
            RuleId::R12 => "R12",
            RuleId::R13 => "R13",
            RuleId::R14 => "R14",
            RuleId::RF => "RF",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RuleId {
    type Err = FilterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| FilterError::UnknownRule(s.to_string()))
    }
}

/// Whether a rule excludes signatures or merely tags them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleKind {
    Excluding,
    Marker,
}

/// The dimensions a rule may be applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleScope {
    Universal,
    /// Valid only for the given global dimension.
    OnlyDim(u64),
}

/// Catalog metadata for one rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleInfo {
    pub id: RuleId,
    pub kind: RuleKind,
    pub scope: RuleScope,
    /// The firing condition, spelled out.
    pub condition: &'static str,
    /// Why the condition excludes (or, for RF, what the tag means).
    pub justification: &'static str,
}

/// Errors from rule application.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FilterError {
    #[error("unknown rule id `{0}`")]
    UnknownRule(String),
    #[error("rule {rule} only applies to global dimension {expected}, not {actual}")]
    Scope {
        rule: RuleId,
        expected: u64,
        actual: u64,
    },
    #[error("signature {signature} has global dimension {actual}, not {expected}")]
    DimensionMismatch {
        signature: String,
        expected: u64,
        actual: u64,
    },
}

/// The outcome of one rule on one signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub rule: RuleId,
    pub fired: bool,
    /// The instantiated arithmetic when fired, e.g. `2+4*5 = 22 does not
    /// divide 90`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// All verdicts for one signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureVerdicts {
    pub signature: TypeSignature,
    pub verdicts: Vec<FilterVerdict>,
    /// No excluding rule fired.
    pub survivor: bool,
    /// The RF marker: not a Frobenius type, so survival alone is not
    /// enough; the search stage must decide it.
    pub requires_exclusion: bool,
}

/// The result of running a rule set over a candidate list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterReport {
    pub fpdim: u64,
    pub rules: Vec<RuleId>,
    pub records: Vec<SignatureVerdicts>,
}

impl FilterReport {
    /// Signatures with no fired excluding rule, in input (canonical) order.
    pub fn survivors(&self) -> impl Iterator<Item = &TypeSignature> {
        self.records
            .iter()
            .filter(|r| r.survivor)
            .map(|r| &r.signature)
    }
}

static CATALOG: [RuleInfo; 15] = [
    RuleInfo {
        id: RuleId::R1,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 = 1, m2 >= 1, and 60 does not divide N",
        justification: "a simple of dimension 2 with trivial invertible group forces blocks of \
                        dimensions 1..5 whose combined dimension 60 must divide N",
    },
    RuleInfo {
        id: RuleId::R2,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "4 divides n0, m2 is odd, and 8 does not divide N",
        justification: "an odd number of dimension-2 simples forces one fixed by a subgroup of \
                        order 4, generating a subring of dimension divisible by 8, and subring \
                        dimensions divide N",
    },
    RuleInfo {
        id: RuleId::R3,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 does not divide N, or n0 does not divide some block size ni*di^2",
        justification: "the invertibles act freely on each dimension class up to stabilizers \
                        whose order divides di^2, so every block dimension ni*di^2, and hence N, \
                        is a multiple of n0",
    },
    RuleInfo {
        id: RuleId::R4,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "gcd(d1, ..., ds) does not divide n0",
        justification: "the common divisor of the nontrivial dimensions grades the ring over a \
                        cyclic group whose order divides the number of invertibles",
    },
    RuleInfo {
        id: RuleId::R5,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 = 1 and s <= 2",
        justification: "with trivial invertible group, rows x.dual(x) over at most two \
                        nontrivial dimensions cannot balance: some product forces either a new \
                        invertible or a third dimension",
    },
    RuleInfo {
        id: RuleId::R6,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 = 2, m2 >= 1, and none of 24, 60, 2+4*m2 divides N",
        justification: "with exactly two invertibles, the simples of dimension <= 2 either close \
                        into a subring of dimension 2+4*m2, or force dimension-3 or -5 blocks \
                        yielding subrings of dimension 24 or 60; some option must divide N",
    },
    RuleInfo {
        id: RuleId::R7,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "m2 >= 1, m4 = 0, 12 does not divide N, and n0+4*m2 does not divide N",
        justification: "products of dimension-2 simples land in dimensions 1..4; with no \
                        dimension-4 simples they either close into a subring of dimension \
                        n0+4*m2 or force a dimension-3 block making 12 divide N",
    },
    RuleInfo {
        id: RuleId::R8,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "m2 >= 1, m3 = m4 = 0, s >= 2, and n0+4*m2 does not divide N",
        justification: "with no simples of dimension 3 or 4 the invertibles and dimension-2 \
                        simples close into a proper subring of dimension n0+4*m2, which must \
                        divide N",
    },
    RuleInfo {
        id: RuleId::R9,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 odd, m2 >= 1, and m3 = 0",
        justification: "for odd n0 a dimension-2 simple has trivial stabilizer and its square \
                        contains a dimension-3 simple, so m3 = 0 is impossible",
    },
    RuleInfo {
        id: RuleId::R10,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 odd, m2 >= 1, m4 = 0 or m5 = 0, and 12 does not divide N",
        justification: "for odd n0 a dimension-2 simple forces a chain of simples of dimensions \
                        3, 4 and 5; if the chain breaks, the dimension-2 and -3 simples span a \
                        subring of dimension divisible by 12",
    },
    RuleInfo {
        id: RuleId::R11,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 = 1, m2 >= 1, and m3 = 0 or m4 = 0 or m5 = 0 or 60 does not divide N",
        justification: "with trivial invertible group a dimension-2 simple forces simples of \
                        dimensions 3, 4 and 5 all present and a subring of dimension divisible \
                        by 60",
    },
    RuleInfo {
        id: RuleId::R12,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 prime, n0 not in {2, 3}, m2 >= 1, and m4 = 0",
        justification: "for prime n0 >= 5 a dimension-2 simple has trivial stabilizer, its \
                        square forces a dimension-3 simple, and the product of those forces a \
                        dimension-4 simple",
    },
    RuleInfo {
        id: RuleId::R13,
        kind: RuleKind::Excluding,
        scope: RuleScope::Universal,
        condition: "n0 = 2, m2 >= 1, (m3 = 0, or 12 does not divide N and m4 = 0, or n0 prime \
                    and 12 does not divide N), and 2+4*m2 does not divide N",
        justification: "with two invertibles, a dimension-2 simple whose square avoids \
                        dimension-3 (or whose forced dimension-3 chain breaks) closes the \
                        dimension <= 2 simples into a subring of dimension 2+4*m2",
    },
    RuleInfo {
        id: RuleId::R14,
        kind: RuleKind::Excluding,
        scope: RuleScope::OnlyDim(90),
        condition: "signature is not of Frobenius type, and n0 = 6 or (n0 = 2 and m2 = 1)",
        justification: "at global dimension 90 these invertible-group shapes force a fusion \
                        subring of dimension 6, whose presence implies every simple dimension \
                        divides 90; a non-Frobenius type contradicts that",
    },
    RuleInfo {
        id: RuleId::RF,
        kind: RuleKind::Marker,
        scope: RuleScope::Universal,
        condition: "some simple dimension does not divide N",
        justification: "marker only: such a type is not of Frobenius type, so it cannot be \
                        accepted by survival alone and must be refuted by exhaustive search",
    },
];

/// The full rule catalog, in order.
pub fn rule_catalog() -> &'static [RuleInfo; 15] {
    &CATALOG
}

/// Catalog metadata for one rule.
pub fn rule_info(id: RuleId) -> &'static RuleInfo {
    &CATALOG[RuleId::ALL.iter().position(|&r| r == id).unwrap()]
}

/// The catalog as machine-readable JSON (shared by docs and tests).
pub fn rule_catalog_json() -> String {
    serde_json::to_string_pretty(&CATALOG[..]).expect("catalog serializes")
}

fn divides(d: u64, n: u64) -> bool {
    d != 0 && n % d == 0
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

fn gcd_of_dims(sig: &TypeSignature) -> u64 {
    sig.noninvertible_entries()
        .iter()
        .fold(0, |acc, e| num_integer::gcd(acc, e.dim))
}

/// Applies one rule. The signature's global dimension must equal `n`, and
/// `n` must be within the rule's scope.
pub fn apply_rule(id: RuleId, sig: &TypeSignature, n: u64) -> Result<FilterVerdict, FilterError> {
    let actual = sig.global_dim_u64();
    if actual != n {
        return Err(FilterError::DimensionMismatch {
            signature: sig.to_string(),
            expected: n,
            actual,
        });
    }
    if let RuleScope::OnlyDim(expected) = rule_info(id).scope {
        if n != expected {
            return Err(FilterError::Scope {
                rule: id,
                expected,
                actual: n,
            });
        }
    }

    let n0 = sig.invertible_count();
    let m = |d: u64| sig.count_of_dim(d);
    let s = sig.noninvertible_entries().len() as u64;
    let (m2, m3, m4, m5) = (m(2), m(3), m(4), m(5));
    // Subring dimensions n0 + 4*m2 stay well inside u64: both terms are <= N.
    let two_plus = 2 + 4 * m2;
    let n0_plus = n0 + 4 * m2;

    let (fired, detail) = match id {
        RuleId::R1 => (
            n0 == 1 && m2 >= 1 && !divides(60, n),
            format!("n0 = 1, m2 = {m2} >= 1, and 60 does not divide {n}"),
        ),
        RuleId::R2 => (
            divides(4, n0) && m2 % 2 == 1 && !divides(8, n),
            format!("4 divides n0 = {n0}, m2 = {m2} is odd, and 8 does not divide {n}"),
        ),
        RuleId::R3 => {
            if !divides(n0, n) {
                (true, format!("n0 = {n0} does not divide {n}"))
            } else {
                match sig
                    .noninvertible_entries()
                    .iter()
                    .find(|e| !divides(n0, e.count * e.dim * e.dim))
                {
                    Some(e) => (
                        true,
                        format!(
                            "n0 = {n0} does not divide the block size {}*{}^2 = {}",
                            e.count,
                            e.dim,
                            e.count * e.dim * e.dim
                        ),
                    ),
                    None => (false, String::new()),
                }
            }
        }
        RuleId::R4 => {
            let g = gcd_of_dims(sig);
            (
                !divides(g, n0),
                format!("gcd of nontrivial dimensions = {g} does not divide n0 = {n0}"),
            )
        }
        RuleId::R5 => (
            n0 == 1 && s <= 2,
            format!("n0 = 1 and only {s} distinct nontrivial dimensions"),
        ),
        RuleId::R6 => (
            n0 == 2 && m2 >= 1 && !divides(24, n) && !divides(60, n) && !divides(two_plus, n),
            format!("n0 = 2, m2 = {m2} >= 1, and none of 24, 60, 2+4*{m2} = {two_plus} divides {n}"),
        ),
        RuleId::R7 => (
            m2 >= 1 && m4 == 0 && !divides(12, n) && !divides(n0_plus, n),
            format!(
                "m2 = {m2} >= 1, m4 = 0, and neither 12 nor n0+4*m2 = {n0_plus} divides {n}"
            ),
        ),
        RuleId::R8 => (
            m2 >= 1 && m3 == 0 && m4 == 0 && s >= 2 && !divides(n0_plus, n),
            format!(
                "m2 = {m2} >= 1, m3 = m4 = 0, s = {s} >= 2, and n0+4*m2 = {n0_plus} does not \
                 divide {n}"
            ),
        ),
        RuleId::R9 => (
            n0 % 2 == 1 && m2 >= 1 && m3 == 0,
            format!("n0 = {n0} is odd, m2 = {m2} >= 1, and m3 = 0"),
        ),
        RuleId::R10 => (
            n0 % 2 == 1 && m2 >= 1 && (m4 == 0 || m5 == 0) && !divides(12, n),
            format!(
                "n0 = {n0} is odd, m2 = {m2} >= 1, m4 = {m4} or m5 = {m5} is 0, and 12 does \
                 not divide {n}"
            ),
        ),
        RuleId::R11 => (
            n0 == 1 && m2 >= 1 && (m3 == 0 || m4 == 0 || m5 == 0 || !divides(60, n)),
            format!(
                "n0 = 1, m2 = {m2} >= 1, and (m3, m4, m5) = ({m3}, {m4}, {m5}) has a zero or \
                 60 does not divide {n}"
            ),
        ),
        RuleId::R12 => (
            is_prime(n0) && n0 != 2 && n0 != 3 && m2 >= 1 && m4 == 0,
            format!("n0 = {n0} is a prime >= 5, m2 = {m2} >= 1, and m4 = 0"),
        ),
        RuleId::R13 => (
            n0 == 2
                && m2 >= 1
                && (m3 == 0
                    || (!divides(12, n) && m4 == 0)
                    || (is_prime(n0) && !divides(12, n)))
                && !divides(two_plus, n),
            format!(
                "n0 = 2, m2 = {m2} >= 1, the dimension-3 chain breaks (m3 = {m3}, m4 = {m4}, \
                 12 divides {n}: {}), and 2+4*m2 = {two_plus} does not divide {n}",
                divides(12, n)
            ),
        ),
        RuleId::R14 => {
            let frobenius = sig
                .is_frobenius_type(n)
                .expect("global dimension already checked");
            (
                !frobenius && (n0 == 6 || (n0 == 2 && m2 == 1)),
                format!(
                    "not a Frobenius type, and n0 = {n0} with m2 = {m2} forces a fusion \
                     subring of dimension 6"
                ),
            )
        }
        RuleId::RF => {
            let frobenius = sig
                .is_frobenius_type(n)
                .expect("global dimension already checked");
            let bad: Vec<String> = sig
                .noninvertible_entries()
                .iter()
                .filter(|e| !divides(e.dim, n))
                .map(|e| e.dim.to_string())
                .collect();
            (
                !frobenius,
                format!("dimensions {} do not divide {n}", bad.join(", ")),
            )
        }
    };

    Ok(FilterVerdict {
        rule: id,
        fired,
        detail: fired.then_some(detail),
    })
}

/// Runs the given rules over every signature, evaluating all rules on each
/// signature and preserving input order.
pub fn run_filters(
    sigs: &[TypeSignature],
    rules: &[RuleId],
    n: u64,
) -> Result<FilterReport, FilterError> {
    // Validate scopes once up front so workers cannot fail.
    for &id in rules {
        if let RuleScope::OnlyDim(expected) = rule_info(id).scope {
            if n != expected {
                return Err(FilterError::Scope {
                    rule: id,
                    expected,
                    actual: n,
                });
            }
        }
    }
    for sig in sigs {
        let actual = sig.global_dim_u64();
        if actual != n {
            return Err(FilterError::DimensionMismatch {
                signature: sig.to_string(),
                expected: n,
                actual,
            });
        }
    }

    let records: Vec<SignatureVerdicts> = sigs
        .par_iter()
        .map(|sig| {
            let verdicts: Vec<FilterVerdict> = rules
                .iter()
                .map(|&id| apply_rule(id, sig, n).expect("scope and dimension pre-checked"))
                .collect();
            let survivor = !verdicts
                .iter()
                .any(|v| v.fired && rule_info(v.rule).kind == RuleKind::Excluding);
            let requires_exclusion = apply_rule(RuleId::RF, sig, n)
                .expect("RF is universal")
                .fired;
            SignatureVerdicts {
                signature: sig.clone(),
                verdicts,
                survivor,
                requires_exclusion,
            }
        })
        .collect();

    Ok(FilterReport {
        fpdim: n,
        rules: rules.to_vec(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_signatures;

    fn sig(text: &str) -> TypeSignature {
        text.parse().expect("test signature parses")
    }

    fn fired(id: RuleId, text: &str, n: u64) -> bool {
        apply_rule(id, &sig(text), n).unwrap().fired
    }

    #[test]
    fn r1_fires_without_divisibility_by_60() {
        assert!(fired(RuleId::R1, "(1,1;2,2;5,3)", 84));
        assert!(!fired(RuleId::R1, "(1,1;2,4;3,3;4,1)", 60));
    }

    #[test]
    fn r4_fires_on_gcd_not_dividing_invertibles() {
        assert!(fired(RuleId::R4, "(1,1;2,1)", 5));
        assert!(!fired(RuleId::R4, "(1,2;2,1)", 6));
        assert!(fired(RuleId::R4, "(1,3;2,9;4,3)", 87));
    }

    #[test]
    fn r9_and_r10_on_the_same_signature() {
        // m3 = 5 >= 1 keeps R9 quiet; the broken 4/5 chain fires R10.
        let s = sig("(1,5;2,10;3,5)");
        assert_eq!(s.global_dim_u64(), 90);
        assert!(!fired(RuleId::R9, "(1,5;2,10;3,5)", 90));
        assert!(fired(RuleId::R10, "(1,5;2,10;3,5)", 90));
    }

    #[test]
    fn r14_is_scoped_to_dimension_90() {
        let err = apply_rule(RuleId::R14, &sig("(1,2;3,2;8,1)"), 84);
        assert!(matches!(err, Err(FilterError::Scope { .. })));
        assert!(fired(RuleId::R14, "(1,6;3,4;4,3)", 90));
        assert!(fired(RuleId::R14, "(1,2;2,1;4,3;6,1)", 90));
        // Frobenius types are never touched by R14.
        assert!(!fired(RuleId::R14, "(1,6;2,21)", 90));
    }

    #[test]
    fn rf_marks_non_frobenius_types_and_never_excludes() {
        let v = apply_rule(RuleId::RF, &sig("(1,2;3,2;8,1)"), 84).unwrap();
        assert!(v.fired, "8 does not divide 84");
        assert_eq!(rule_info(RuleId::RF).kind, RuleKind::Marker);
        let report = run_filters(&[sig("(1,2;3,2;8,1)")], &[RuleId::RF], 84).unwrap();
        assert!(report.records[0].survivor, "markers never exclude");
        assert!(report.records[0].requires_exclusion);
    }

    #[test]
    fn mismatched_global_dimension_is_an_error() {
        let err = apply_rule(RuleId::R1, &sig("(1,2;2,1)"), 84);
        assert!(matches!(err, Err(FilterError::DimensionMismatch { .. })));
    }

    #[test]
    fn all_rules_evaluate_without_short_circuit() {
        // (1,1;2,1): R4 and R5 both fire, and both verdicts are recorded.
        let report = run_filters(&[sig("(1,1;2,1)")], &RuleId::DEFAULT, 5).unwrap();
        let rec = &report.records[0];
        assert_eq!(rec.verdicts.len(), RuleId::DEFAULT.len());
        assert!(rec.verdicts.iter().any(|v| v.rule == RuleId::R4 && v.fired));
        assert!(rec.verdicts.iter().any(|v| v.rule == RuleId::R5 && v.fired));
        assert!(!rec.survivor);
    }

    #[test]
    fn fired_verdicts_carry_detail() {
        let n = 90;
        for s in enumerate_signatures(n, None) {
            for v in run_filters(std::slice::from_ref(&s), &RuleId::DEFAULT, n)
                .unwrap()
                .records[0]
                .verdicts
                .iter()
            {
                assert_eq!(v.fired, v.detail.is_some(), "{s} {}", v.rule);
            }
        }
    }

    #[test]
    fn rule_ids_roundtrip_through_strings() {
        for id in RuleId::ALL {
            let back: RuleId = id.as_str().parse().unwrap();
            assert_eq!(back, id);
        }
        assert!("R99".parse::<RuleId>().is_err());
    }

    #[test]
    fn catalog_json_lists_every_rule() {
        let json = rule_catalog_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed.as_array().unwrap().len(), RuleId::ALL.len());
        for id in RuleId::ALL {
            assert!(json.contains(&format!("\"{}\"", id.as_str())), "{id}");
        }
    }

    #[test]
    fn default_rules_at_84_leave_exactly_the_intermediate_set() {
        let sigs = enumerate_signatures(84, None);
        let report = run_filters(&sigs, &RuleId::DEFAULT, 84).unwrap();
        let survivors: Vec<TypeSignature> = report.survivors().cloned().collect();
        let expected = crate::catalog::reference_for(84).unwrap().intermediate();
        assert_eq!(survivors, expected);
    }

    #[test]
    fn default_rules_at_90_leave_the_non_rule_killed_intermediates() {
        let entry = crate::catalog::reference_for(90).unwrap();
        let sigs = enumerate_signatures(90, None);
        let report = run_filters(&sigs, &RuleId::DEFAULT, 90).unwrap();
        let survivors: Vec<TypeSignature> = report.survivors().cloned().collect();
        // R9/R10 already remove five of the intermediates; R14 and the
        // search stage handle the rest.
        let expected: Vec<TypeSignature> = entry
            .intermediate()
            .into_iter()
            .filter(|sig| {
                !matches!(
                    entry.killer_of(sig),
                    Some(crate::catalog::Killer::Rule(RuleId::R9))
                        | Some(crate::catalog::Killer::Rule(RuleId::R10))
                )
            })
            .collect();
        assert_eq!(survivors.len(), 32);
        assert_eq!(survivors, expected);
    }

    #[test]
    fn survivor_sets_ignore_rule_order() {
        let sigs = enumerate_signatures(60, None);
        let forward = run_filters(&sigs, &RuleId::DEFAULT, 60).unwrap();
        let mut reversed_rules = RuleId::DEFAULT;
        reversed_rules.reverse();
        let backward = run_filters(&sigs, &reversed_rules, 60).unwrap();
        let fwd: Vec<_> = forward.survivors().collect();
        let bwd: Vec<_> = backward.survivors().collect();
        assert_eq!(fwd, bwd);
    }
}
