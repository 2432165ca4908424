use lazard_core::catalog::{verify_fixture, FixtureConfig, FIXTURES};
use lazard_core::Error;

fn cfg(p: u64) -> FixtureConfig {
    FixtureConfig { p, precision: None, rho: None }
}

#[test]
fn every_fixture_passes_at_p5() {
    for name in FIXTURES {
        let rep = verify_fixture(name, &cfg(5)).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn small_fixtures_pass_at_p7() {
    for name in ["two-dim", "p3-pair", "insoluble"] {
        let rep = verify_fixture(name, &cfg(7)).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn unknown_fixture() {
    assert!(matches!(
        verify_fixture("nope", &cfg(5)),
        Err(Error::UnknownFixture(_))
    ));
}

#[test]
fn report_lists_every_check() {
    let rep = verify_fixture("two-dim", &cfg(5)).unwrap();
    let text = rep.to_string();
    assert_eq!(text.lines().count(), rep.checks.len() + 2);
    assert!(text.ends_with("PASS"));
}
