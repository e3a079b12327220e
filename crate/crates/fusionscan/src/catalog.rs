//! Built-in reference lists of classified types, parsed from a checked-in
//! plain-text file so the transcription stays reviewable in isolation.
//!
//! For each covered global dimension the catalog records the final list of
//! possible types, plus the candidates that survive the basic arithmetic
//! rules but are excluded later, annotated with the expected killer (a
//! specific rule or the feasibility search). The union of both groups is
//! the intermediate survivor set.

use crate::filters::RuleId;
use crate::signature::TypeSignature;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

const REFERENCE_DATA: &str = include_str!("../data/reference_types.txt");

/// What is expected to remove an intermediate survivor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Killer {
    Rule(RuleId),
    Solver,
}

impl fmt::Display for Killer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Killer::Rule(id) => write!(f, "{id}"),
            Killer::Solver => f.write_str("solver"),
        }
    }
}

/// An intermediate survivor that the final classification rejects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedType {
    pub signature: TypeSignature,
    pub expected_killer: Killer,
}

/// Reference data for one global dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub fpdim: u64,
    /// The classified possible types, in canonical order.
    pub final_types: Vec<TypeSignature>,
    /// Intermediate survivors removed later, with their expected killers.
    pub excluded: Vec<ExcludedType>,
}

impl CatalogEntry {
    /// The intermediate survivor set: final types plus the excluded ones,
    /// in canonical order.
    pub fn intermediate(&self) -> Vec<TypeSignature> {
        let mut all: Vec<TypeSignature> = self
            .final_types
            .iter()
            .cloned()
            .chain(self.excluded.iter().map(|e| e.signature.clone()))
            .collect();
        all.sort();
        all
    }

    /// The expected killer for a signature, if it is in the excluded list.
    pub fn killer_of(&self, sig: &TypeSignature) -> Option<Killer> {
        self.excluded
            .iter()
            .find(|e| e.signature == *sig)
            .map(|e| e.expected_killer)
    }

    /// The excluded signatures whose expected killer is the solver.
    pub fn solver_excluded(&self) -> Vec<&TypeSignature> {
        self.excluded
            .iter()
            .filter(|e| e.expected_killer == Killer::Solver)
            .map(|e| &e.signature)
            .collect()
    }
}

fn parse_catalog(text: &str) -> BTreeMap<u64, CatalogEntry> {
    enum Section {
        Final,
        Excluded(Killer),
    }
    let mut catalog = BTreeMap::new();
    let mut current_n: Option<u64> = None;
    let mut section: Option<Section> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let fail = |msg: &str| -> ! { panic!("reference data line {}: {msg}", lineno + 1) };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("##") {
            let rest = rest.trim();
            let n = current_n.unwrap_or_else(|| fail("section header before any dimension"));
            section = Some(if rest == "final" {
                Section::Final
            } else if let Some(killer) = rest.strip_prefix("excluded") {
                let killer = killer.trim();
                Section::Excluded(if killer == "solver" {
                    Killer::Solver
                } else {
                    Killer::Rule(
                        killer
                            .parse()
                            .unwrap_or_else(|_| fail("unknown killer annotation")),
                    )
                })
            } else {
                fail("unknown section header")
            });
            catalog.entry(n).or_insert_with(|| CatalogEntry {
                fpdim: n,
                final_types: Vec::new(),
                excluded: Vec::new(),
            });
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if let Some(n) = rest.strip_prefix("N=") {
                current_n = Some(n.parse().unwrap_or_else(|_| fail("bad dimension header")));
                section = None;
            }
            // Other `#` lines are comments.
            continue;
        }
        let n = current_n.unwrap_or_else(|| fail("signature before any dimension header"));
        let sig: TypeSignature = line
            .parse()
            .unwrap_or_else(|e| fail(&format!("bad signature: {e}")));
        if sig.global_dim_u64() != n {
            fail(&format!(
                "signature {sig} has global dimension {}, expected {n}",
                sig.global_dim_u64()
            ));
        }
        let entry = catalog.get_mut(&n).expect("entry created with section");
        match section {
            Some(Section::Final) => entry.final_types.push(sig),
            Some(Section::Excluded(killer)) => entry.excluded.push(ExcludedType {
                signature: sig,
                expected_killer: killer,
            }),
            None => fail("signature before any section header"),
        }
    }
    catalog
}

/// The built-in reference catalog, keyed by global dimension.
pub fn reference_catalog() -> &'static BTreeMap<u64, CatalogEntry> {
    static CATALOG: OnceLock<BTreeMap<u64, CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(REFERENCE_DATA))
}

/// The reference entry for one global dimension, if covered.
pub fn reference_for(n: u64) -> Option<&'static CatalogEntry> {
    reference_catalog().get(&n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_covers_84_and_90() {
        let keys: Vec<u64> = reference_catalog().keys().copied().collect();
        assert_eq!(keys, vec![84, 90]);
    }

    #[test]
    fn final_list_sizes_match_the_classification() {
        assert_eq!(reference_for(84).unwrap().final_types.len(), 30);
        assert_eq!(reference_for(90).unwrap().final_types.len(), 20);
    }

    #[test]
    fn intermediate_sets_have_the_documented_sizes() {
        assert_eq!(reference_for(84).unwrap().intermediate().len(), 35);
        assert_eq!(reference_for(90).unwrap().intermediate().len(), 37);
    }

    #[test]
    fn every_final_type_is_frobenius() {
        for (&n, entry) in reference_catalog() {
            for sig in &entry.final_types {
                assert_eq!(sig.is_frobenius_type(n), Ok(true), "{sig}");
            }
        }
    }

    #[test]
    fn final_lists_are_in_canonical_order_without_duplicates() {
        for entry in reference_catalog().values() {
            let mut sorted = entry.final_types.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, entry.final_types);
        }
    }

    #[test]
    fn solver_excluded_lists_match_the_hand_proofs() {
        assert_eq!(reference_for(84).unwrap().solver_excluded().len(), 5);
        assert_eq!(reference_for(90).unwrap().solver_excluded().len(), 6);
    }

    #[test]
    fn killer_lookup_finds_annotations() {
        let entry = reference_for(90).unwrap();
        let sig: TypeSignature = "(1,5;2,10;3,5)".parse().unwrap();
        assert_eq!(entry.killer_of(&sig), Some(Killer::Rule(RuleId::R10)));
        let final_type: TypeSignature = "(1,45;3,5)".parse().unwrap();
        assert_eq!(entry.killer_of(&final_type), None);
    }

    #[test]
    fn rule_killed_types_actually_fire_their_annotated_rule() {
        use crate::filters::apply_rule;
        for (&n, entry) in reference_catalog() {
            for exc in &entry.excluded {
                if let Killer::Rule(id) = exc.expected_killer {
                    let verdict = apply_rule(id, &exc.signature, n).unwrap();
                    assert!(verdict.fired, "{} should fire {id}", exc.signature);
                }
            }
        }
    }
}
