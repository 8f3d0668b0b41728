use std::time::Instant;

use coinsite::verify::{run, Suite};

#[test]
fn every_suite_passes() {
    for suite in ["den-sig", "sigma-inv", "scal-group", "rings"] {
        let t = Instant::now();
        let rep = run(suite.parse::<Suite>().unwrap(), 42, &[]).unwrap();
        eprintln!("{suite}: {:?}\n{rep}", t.elapsed());
        assert!(rep.passed(), "{suite}\n{rep}");
    }
}
