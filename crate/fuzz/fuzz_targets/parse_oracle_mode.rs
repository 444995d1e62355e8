#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::parse::parse_oracle_mode;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mode) = parse_oracle_mode(text) {
        assert_eq!(parse_oracle_mode(&mode.to_string()), Ok(mode));
    }
});
