#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::parse::{format_mults, parse_mults};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mults) = parse_mults(text) {
        let again = parse_mults(&format_mults(&mults)).expect("formatted list parses");
        assert_eq!(again, mults);
    }
});
