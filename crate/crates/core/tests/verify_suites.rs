use htgroth::verify::{run_suites, SUITES};

#[test]
fn every_suite_passes_at_small_size() {
    let reports = run_suites("all", 5, 7).unwrap();
    assert_eq!(reports.len(), SUITES.len());
    for r in &reports {
        assert!(r.cases > 0, "{} ran no cases", r.suite);
        assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suites("nope", 3, 0).is_err());
}
