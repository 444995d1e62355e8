#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::parse::parse_evaluators;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(list) = parse_evaluators(text) {
        let names: Vec<&str> = list.iter().map(|e| e.name()).collect();
        assert_eq!(parse_evaluators(&names.join(",")), Ok(list));
    }
});
