#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::parse::parse_grid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = parse_grid(text) {
        assert_eq!(parse_grid(&grid.to_string()), Ok(grid));
    }
});
