use extweyl::verify::{run, Suite, VerifyConfig};

fn check(suite: Suite, samples: usize) {
    let cfg = VerifyConfig {
        samples,
        cap_rank: 4,
        ..VerifyConfig::default()
    };
    for report in run(suite, &cfg) {
        for c in &report.cases {
            if !c.passed || c.detail.is_some() {
                eprintln!("{} {}: {:?}", report.suite, c.name, c.detail);
            }
        }
        assert!(report.passed(), "{:?}", report.first_failure());
    }
}

#[test]
fn tables() {
    check(Suite::Tables, 0);
}

#[test]
fn tensor() {
    check(Suite::Tensor, 0);
}

#[test]
fn orbits() {
    check(Suite::Orbits, 0);
}

#[test]
fn cocycle() {
    check(Suite::Cocycle, 100);
}

#[test]
fn words() {
    check(Suite::Words, 50);
}
