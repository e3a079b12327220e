//! The end-to-end classification pipeline, reference comparison, report
//! rendering, and the on-disk report cache.
//!
//! [`classify`] chains the three stages — enumerate, filter, solve — into
//! one [`ClassificationReport`]. By default the feasibility search runs
//! only on survivors that still need an exclusion decision: types flagged
//! by the RF marker (not of Frobenius type) and types the reference
//! catalog expects the search to settle. `--solve-all` extends the search
//! to every survivor; Realizable and Unknown outcomes are informational
//! and never remove a survivor, while an exhaustive Excluded does.
//!
//! Reports are deterministic for a fixed configuration fingerprint; the
//! only non-reproducible field is the timing block, which callers mask
//! via [`ClassificationReport::without_timing`] when comparing bytes.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{reference_for, CatalogEntry, Killer};
use crate::enumerate::enumerate_signatures;
use crate::filters::{run_filters, FilterError, RuleId};
use crate::fusion::FusionTable;
use crate::signature::TypeSignature;
use crate::solver::{solve, SolveConfig, SolveStatus};

/// Pipeline configuration. The fingerprint covers every field that can
/// change the report's content; the cache directory is deliberately not
/// part of it.
#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub fpdim: u64,
    /// Additionally apply rule R14, which is valid only at dimension 90.
    pub enable_cor90_6: bool,
    /// Run the feasibility search on every survivor instead of only the
    /// ones that still need an exclusion decision.
    pub solve_all: bool,
    /// Node budget per solved signature.
    pub budget: u64,
    pub symmetry_breaking: bool,
    /// Report cache directory; `None` consults the `FUSIONSCAN_CACHE`
    /// environment variable, and an unset variable disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl ClassifyConfig {
    pub fn new(fpdim: u64) -> Self {
        ClassifyConfig {
            fpdim,
            enable_cor90_6: false,
            solve_all: false,
            budget: crate::solver::DEFAULT_BUDGET,
            symmetry_breaking: true,
            cache_dir: None,
        }
    }

    /// The rule set this configuration runs.
    pub fn rules(&self) -> Vec<RuleId> {
        if self.enable_cor90_6 {
            RuleId::ALL.to_vec()
        } else {
            RuleId::DEFAULT.to_vec()
        }
    }

    /// Hex SHA-256 over everything that determines the report content,
    /// including the crate version.
    pub fn fingerprint(&self) -> String {
        let rules: Vec<&str> = self.rules().iter().map(|r| r.as_str()).collect();
        let key = format!(
            "v{};fpdim={};rules={};solve_all={};budget={};symmetry_breaking={}",
            env!("CARGO_PKG_VERSION"),
            self.fpdim,
            rules.join(","),
            self.solve_all,
            self.budget,
            self.symmetry_breaking,
        );
        let digest = Sha256::digest(key.as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            use std::fmt::Write;
            let _ = write!(hex, "{byte:02x}");
        }
        hex
    }
}

/// A signature removed by the filter stage, with every rule that fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionRecord {
    pub signature: TypeSignature,
    pub rules: Vec<RuleId>,
}

/// One feasibility-search outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveRecord {
    pub signature: TypeSignature,
    /// `Excluded`, `Realizable`, or `Unknown`.
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unknown_reason: Option<String>,
    /// A verified fusion table witnessing realizability.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<FusionTable>,
    pub nodes: u64,
    pub exhaustive: bool,
    pub combos: u64,
}

/// How the post-filter survivor set deviates from the reference
/// intermediate list. Informational: never fails a run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyRecord {
    pub signature: TypeSignature,
    pub kind: DiscrepancyKind,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscrepancyKind {
    /// In the reference intermediate list, but our rules already removed
    /// it.
    MissingFromIntermediate,
    /// Survived our rules but is not in the reference intermediate list.
    ExtraInIntermediate,
}

/// Expected vs. actual exclusion mechanism for a reference-excluded type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttributionRecord {
    pub signature: TypeSignature,
    /// The mechanism the reference expects (a rule id or `solver`).
    pub expected: String,
    /// What this run did: fired rule ids joined by `+`, `solver`, or
    /// `None` if the type was not excluded at all.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    pub agrees: bool,
}

/// Wall-clock cost of a run. Excluded from fingerprints and maskable for
/// byte-for-byte comparisons.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TimingStats {
    pub elapsed_ms: u64,
}

/// Everything one classification run produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub fpdim: u64,
    pub version: String,
    pub config_fingerprint: String,
    pub rules: Vec<RuleId>,
    pub raw_candidates: u64,
    /// Survivors of the filter stage (the intermediate set), canonical
    /// order.
    pub filter_survivors: Vec<TypeSignature>,
    /// Survivors flagged as not of Frobenius type (the RF marker); the
    /// search must settle these.
    pub rf_flagged: Vec<TypeSignature>,
    /// Types the filter stage removed.
    pub exclusions: Vec<ExclusionRecord>,
    /// Feasibility-search outcomes, in survivor order.
    pub solve_records: Vec<SolveRecord>,
    /// The classification: survivors not excluded by the search.
    pub final_types: Vec<TypeSignature>,
    /// Final types whose search outcome was Unknown: they remain listed,
    /// but their exclusion status is unsettled.
    pub unresolved: Vec<TypeSignature>,
    pub intermediate_discrepancies: Vec<DiscrepancyRecord>,
    pub attribution: Vec<AttributionRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingStats>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Drops the timing block (the only non-deterministic field), for
    /// byte-for-byte report comparison.
    pub fn without_timing(mut self) -> Self {
        self.timing = None;
        self
    }

    /// Text rendering: the final list grouped by invertible count.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        use std::fmt::Write;
        let _ = writeln!(
            out,
            "FPdim {}: {} candidate types, {} filter survivors, {} final types",
            self.fpdim,
            self.raw_candidates,
            self.filter_survivors.len(),
            self.final_types.len()
        );
        let mut current_n0: Option<u64> = None;
        for sig in &self.final_types {
            let n0 = sig.invertible_count();
            if current_n0 != Some(n0) {
                let count = self
                    .final_types
                    .iter()
                    .filter(|s| s.invertible_count() == n0)
                    .count();
                let plural = if count == 1 { "type" } else { "types" };
                let _ = writeln!(out, "\n[n0 = {n0}] ({count} {plural})");
                current_n0 = Some(n0);
            }
            let _ = writeln!(out, "{sig}");
        }
        if !self.unresolved.is_empty() {
            let _ = writeln!(out, "\nunresolved (search was inconclusive):");
            for sig in &self.unresolved {
                let _ = writeln!(out, "{sig}");
            }
        }
        if !self.intermediate_discrepancies.is_empty() {
            let _ = writeln!(out, "\nintermediate-set discrepancies:");
            for d in &self.intermediate_discrepancies {
                let kind = match d.kind {
                    DiscrepancyKind::MissingFromIntermediate => "missing",
                    DiscrepancyKind::ExtraInIntermediate => "extra",
                };
                let _ = writeln!(out, "{} [{kind}] {}", d.signature, d.detail);
            }
        }
        out
    }
}

/// Runs the full pipeline. Fails only on an inapplicable rule set (R14
/// requested outside dimension 90).
pub fn classify(config: &ClassifyConfig) -> Result<ClassificationReport, FilterError> {
    let started = Instant::now();
    let n = config.fpdim;
    let rules = config.rules();
    let candidates = enumerate_signatures(n, None);
    let freport = run_filters(&candidates, &rules, n)?;

    let reference = reference_for(n);
    let catalog_solver_targets: BTreeSet<TypeSignature> = reference
        .map(|entry| entry.solver_excluded().into_iter().cloned().collect())
        .unwrap_or_default();

    let survivors: Vec<TypeSignature> = freport.survivors().cloned().collect();
    let rf_flagged: Vec<TypeSignature> = freport
        .records
        .iter()
        .filter(|r| r.survivor && r.requires_exclusion)
        .map(|r| r.signature.clone())
        .collect();
    let exclusions: Vec<ExclusionRecord> = freport
        .records
        .iter()
        .filter(|r| !r.survivor)
        .map(|r| ExclusionRecord {
            signature: r.signature.clone(),
            rules: r
                .verdicts
                .iter()
                .filter(|v| v.fired && v.rule != RuleId::RF)
                .map(|v| v.rule)
                .collect(),
        })
        .collect();

    let targets: Vec<TypeSignature> = freport
        .records
        .iter()
        .filter(|r| r.survivor)
        .filter(|r| {
            config.solve_all
                || r.requires_exclusion
                || catalog_solver_targets.contains(&r.signature)
        })
        .map(|r| r.signature.clone())
        .collect();

    let solve_config = SolveConfig {
        budget: config.budget,
        symmetry_breaking: config.symmetry_breaking,
    };
    let solve_records: Vec<SolveRecord> = targets
        .par_iter()
        .map(|sig| {
            let result = solve(sig, &solve_config);
            let (status, unknown_reason, model) = match result.status {
                SolveStatus::Excluded => ("Excluded", None, None),
                SolveStatus::Realizable(table) => ("Realizable", None, Some(*table)),
                SolveStatus::Unknown(reason) => {
                    ("Unknown", Some(reason.to_string()), None)
                }
            };
            SolveRecord {
                signature: sig.clone(),
                status: status.to_string(),
                unknown_reason,
                model,
                nodes: result.nodes,
                exhaustive: result.exhaustive,
                combos: result.combos,
            }
        })
        .collect();

    let search_excluded: BTreeSet<&TypeSignature> = solve_records
        .iter()
        .filter(|r| r.status == "Excluded" && r.exhaustive)
        .map(|r| &r.signature)
        .collect();
    let final_types: Vec<TypeSignature> = survivors
        .iter()
        .filter(|s| !search_excluded.contains(s))
        .cloned()
        .collect();
    let unresolved: Vec<TypeSignature> = solve_records
        .iter()
        .filter(|r| r.status == "Unknown")
        .map(|r| r.signature.clone())
        .collect();

    let (intermediate_discrepancies, attribution) = match reference {
        Some(entry) => reference_notes(entry, &survivors, &exclusions, &solve_records),
        None => (Vec::new(), Vec::new()),
    };

    Ok(ClassificationReport {
        fpdim: n,
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_fingerprint: config.fingerprint(),
        rules,
        raw_candidates: candidates.len() as u64,
        filter_survivors: survivors,
        rf_flagged,
        exclusions,
        solve_records,
        final_types,
        unresolved,
        intermediate_discrepancies,
        attribution,
        timing: Some(TimingStats {
            elapsed_ms: started.elapsed().as_millis() as u64,
        }),
    })
}

/// Intermediate-set discrepancies and exclusion attributions against the
/// reference catalog.
fn reference_notes(
    entry: &CatalogEntry,
    survivors: &[TypeSignature],
    exclusions: &[ExclusionRecord],
    solve_records: &[SolveRecord],
) -> (Vec<DiscrepancyRecord>, Vec<AttributionRecord>) {
    let survivor_set: BTreeSet<&TypeSignature> = survivors.iter().collect();
    let intermediate = entry.intermediate();
    let intermediate_set: BTreeSet<&TypeSignature> = intermediate.iter().collect();

    let fired_rules = |sig: &TypeSignature| -> Option<String> {
        exclusions
            .iter()
            .find(|e| &e.signature == sig)
            .map(|e| {
                e.rules
                    .iter()
                    .map(|r| r.as_str())
                    .collect::<Vec<_>>()
                    .join("+")
            })
    };

    let mut discrepancies = Vec::new();
    for sig in &intermediate {
        if !survivor_set.contains(sig) {
            let detail = match fired_rules(sig) {
                Some(rules) => format!("removed by {rules}"),
                None => "not produced by the enumerator".to_string(),
            };
            discrepancies.push(DiscrepancyRecord {
                signature: (*sig).clone(),
                kind: DiscrepancyKind::MissingFromIntermediate,
                detail,
            });
        }
    }
    for sig in survivors {
        if !intermediate_set.contains(sig) {
            discrepancies.push(DiscrepancyRecord {
                signature: sig.clone(),
                kind: DiscrepancyKind::ExtraInIntermediate,
                detail: "no reference counterpart".to_string(),
            });
        }
    }

    let mut attribution = Vec::new();
    for excluded in &entry.excluded {
        let sig = &excluded.signature;
        let expected = match excluded.expected_killer {
            Killer::Rule(rule) => rule.as_str().to_string(),
            Killer::Solver => "solver".to_string(),
        };
        let actual = fired_rules(sig).or_else(|| {
            solve_records.iter().find(|r| &r.signature == sig).and_then(|r| {
                (r.status == "Excluded" && r.exhaustive).then(|| "solver".to_string())
            })
        });
        let agrees = actual
            .as_deref()
            .is_some_and(|a| a == expected || a.split('+').any(|part| part == expected));
        attribution.push(AttributionRecord {
            signature: sig.clone(),
            expected,
            actual,
            agrees,
        });
    }
    (discrepancies, attribution)
}

/// Where a cached report came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    Disabled,
}

/// [`classify`] with a read-through report cache. The cache key is
/// `{fpdim}-{fingerprint}.json`; entries are full JSON reports and are
/// only trusted when dimension, fingerprint, and version all match.
/// The `FUSIONSCAN_CACHE` environment variable overrides the configured
/// directory. Cache write failures are ignored — a cache is never worth
/// failing the run for.
pub fn classify_cached(
    config: &ClassifyConfig,
) -> Result<(ClassificationReport, CacheStatus), FilterError> {
    let dir = std::env::var_os("FUSIONSCAN_CACHE")
        .map(PathBuf::from)
        .or_else(|| config.cache_dir.clone());
    let Some(dir) = dir else {
        return classify(config).map(|r| (r, CacheStatus::Disabled));
    };
    let fingerprint = config.fingerprint();
    let path = dir.join(format!("{}-{}.json", config.fpdim, fingerprint));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(report) = ClassificationReport::from_json(&text) {
            if report.fpdim == config.fpdim
                && report.config_fingerprint == fingerprint
                && report.version == env!("CARGO_PKG_VERSION")
            {
                return Ok((report, CacheStatus::Hit));
            }
        }
    }
    let report = classify(config)?;
    let _ = std::fs::create_dir_all(&dir);
    let _ = std::fs::write(&path, report.to_json());
    Ok((report, CacheStatus::Miss))
}

/// Differences between a report and the reference catalog entry for the
/// same dimension. Only final-list differences make the diff nonempty;
/// intermediate and attribution notes are informational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceDiff {
    pub fpdim: u64,
    /// Reference final types absent from the report.
    pub missing: Vec<TypeSignature>,
    /// Report final types absent from the reference, with the mechanism
    /// the reference expects to remove them (when it lists the type as
    /// excluded).
    pub extra: Vec<ExtraEntry>,
    pub intermediate_missing: Vec<TypeSignature>,
    pub intermediate_extra: Vec<TypeSignature>,
    /// Reference-excluded types whose exclusion mechanism differs.
    pub attribution_mismatches: Vec<AttributionRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraEntry {
    pub signature: TypeSignature,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_killer: Option<String>,
}

impl ReferenceDiff {
    /// True when the final lists match exactly.
    pub fn is_empty(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        if self.is_empty() {
            let _ = writeln!(
                out,
                "FPdim {}: final list matches the reference",
                self.fpdim
            );
        }
        for sig in &self.missing {
            let _ = writeln!(out, "missing: {sig}");
        }
        for e in &self.extra {
            match &e.expected_killer {
                Some(k) => {
                    let _ = writeln!(
                        out,
                        "extra: {} (reference excludes it via {k})",
                        e.signature
                    );
                }
                None => {
                    let _ = writeln!(out, "extra: {} (unknown to the reference)", e.signature);
                }
            }
        }
        for sig in &self.intermediate_missing {
            let _ = writeln!(out, "intermediate missing: {sig}");
        }
        for sig in &self.intermediate_extra {
            let _ = writeln!(out, "intermediate extra: {sig}");
        }
        for a in &self.attribution_mismatches {
            let _ = writeln!(
                out,
                "attribution: {} expected {} got {}",
                a.signature,
                a.expected,
                a.actual.as_deref().unwrap_or("nothing")
            );
        }
        out
    }
}

/// Compares a report's lists with the reference catalog entry of the same
/// dimension.
pub fn diff_reference(report: &ClassificationReport, entry: &CatalogEntry) -> ReferenceDiff {
    let ours: BTreeSet<&TypeSignature> = report.final_types.iter().collect();
    let theirs: BTreeSet<&TypeSignature> = entry.final_types.iter().collect();
    let missing: Vec<TypeSignature> = entry
        .final_types
        .iter()
        .filter(|s| !ours.contains(s))
        .cloned()
        .collect();
    let extra: Vec<ExtraEntry> = report
        .final_types
        .iter()
        .filter(|s| !theirs.contains(s))
        .map(|s| ExtraEntry {
            signature: s.clone(),
            expected_killer: entry.killer_of(s).map(|k| k.to_string()),
        })
        .collect();

    let our_intermediate: BTreeSet<&TypeSignature> = report.filter_survivors.iter().collect();
    let reference_intermediate = entry.intermediate();
    let reference_intermediate_set: BTreeSet<&TypeSignature> =
        reference_intermediate.iter().collect();
    let intermediate_missing: Vec<TypeSignature> = reference_intermediate
        .iter()
        .filter(|s| !our_intermediate.contains(s))
        .cloned()
        .collect();
    let intermediate_extra: Vec<TypeSignature> = report
        .filter_survivors
        .iter()
        .filter(|s| !reference_intermediate_set.contains(s))
        .cloned()
        .collect();

    let attribution_mismatches: Vec<AttributionRecord> = report
        .attribution
        .iter()
        .filter(|a| !a.agrees)
        .cloned()
        .collect();

    ReferenceDiff {
        fpdim: report.fpdim,
        missing,
        extra,
        intermediate_missing,
        intermediate_extra,
        attribution_mismatches,
    }
}
