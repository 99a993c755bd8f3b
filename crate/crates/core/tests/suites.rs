use std::collections::BTreeMap;

use convring::relations::RelationSet;
use convring::report::Status;
use convring::suites::{run_suite, Suite, SuiteConfig};

#[test]
fn every_suite_passes_with_default_relations() {
    let cfg = SuiteConfig::default();
    for s in Suite::components() {
        let r = run_suite(s, &cfg).unwrap();
        assert!(r.passed(), "{}: {:#?}", s.name(), r.failures());
        assert!(r.count(Status::Pass) > 0);
    }
}

#[test]
fn corrupting_a_coefficient_fails_the_owning_suite() {
    let cases = [
        ("S", "a*b*c - b^2 - c^2 - 2", Suite::Centralizer),
        ("S", "a*b*c - b^2 - 2*c^2 - 1", Suite::Kring),
        ("S-prime", "xi^2 - 3*delta*eta^2 - 1", Suite::Centralizer),
        ("BM", "xi^2 - delta*eta^2 + 1", Suite::Homology),
        ("blowup-gg", "T*x - 2*u", Suite::Blowup),
        ("blowup-Gg", "T*z^2 - T - 2*x", Suite::Blowup),
        ("blowup-gG", "T*x - y^2 + 3", Suite::Blowup),
        ("blowup-GG", "T*z^2 - 2*T - y^2 + 1", Suite::Blowup),
        ("blowup-GGv", "T*z^2 - T - t + 2", Suite::Blowup),
    ];
    for (name, text, suite) in cases {
        let overrides = BTreeMap::from([(name.to_string(), text.to_string())]);
        let cfg = SuiteConfig { relations: RelationSet::with_overrides(&overrides).unwrap(), ..Default::default() };
        let r = run_suite(suite, &cfg).unwrap();
        assert!(!r.passed(), "{name} = {text} did not fail {}", suite.name());
    }
}
