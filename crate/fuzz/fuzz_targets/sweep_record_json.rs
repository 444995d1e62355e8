#![no_main]
use libfuzzer_sys::fuzz_target;
use rncdim::oracle::SweepRecord;

fuzz_target!(|data: &[u8]| {
    if let Ok(rec) = serde_json::from_slice::<SweepRecord>(data) {
        let again: SweepRecord = serde_json::from_str(&rec.to_json()).expect("own output parses");
        assert_eq!(again, rec);
    }
});
