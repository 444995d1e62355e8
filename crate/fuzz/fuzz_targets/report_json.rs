#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::report::StructuredReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = StructuredReport::from_json(text) {
        let again = StructuredReport::from_json(&report.to_json()).expect("own output parses");
        assert_eq!(again, report);
    }
});
