use betamoments::verify::{run_suite, Suite, DEFAULT_MAX_N};

#[test]
fn every_suite_passes_at_default_depth() {
    let report = run_suite(Suite::All, DEFAULT_MAX_N);
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    assert!(report.passed, "{failed:#?}");
    for suite in [Suite::CrossBackend, Suite::Identities, Suite::PathsOracle] {
        assert!(report.checks.iter().any(|c| c.suite == suite));
    }
}
