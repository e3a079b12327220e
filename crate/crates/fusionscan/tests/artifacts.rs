//! Keeps the checked-in machine-readable artifacts in sync with the
//! code they are generated from.

use fusionscan::filters::rule_catalog_json;

/// `docs/rules.json` is the exported rule catalog; docs and tests share
/// it as the single source of truth. Regenerate it from
/// [`rule_catalog_json`] whenever a rule changes.
#[test]
fn checked_in_rule_catalog_is_current() {
    let checked_in = include_str!("../../../docs/rules.json");
    assert_eq!(
        checked_in.trim(),
        rule_catalog_json().trim(),
        "docs/rules.json is stale; regenerate it from rule_catalog_json()"
    );
}
