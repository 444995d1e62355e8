#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::castelnuovo::recursive_h0;
use rncdim::{evaluate, Evaluator, LinearSystemSpec};

// Bytes: n, d, then one multiplicity per byte, all kept small.
fuzz_target!(|data: &[u8]| {
    let [n, d, rest @ ..] = data else {
        return;
    };
    let n = u32::from(n % 4) + 1;
    let d = i64::from(d % 12) - 1;
    let mults: Vec<i64> = rest
        .iter()
        .take(10)
        .map(|&b| i64::from(b % 7) - 1)
        .collect();
    let spec = LinearSystemSpec::new(n, d, mults).unwrap();
    let auto = evaluate(&spec, Evaluator::Auto).unwrap().dimension;
    let recursive = recursive_h0(&spec).unwrap();
    if auto > 0.into() || recursive > 0.into() {
        assert_eq!(auto, recursive, "{spec:?}");
    }
});
