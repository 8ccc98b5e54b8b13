//! Multisegment JSON: parse, and re-parse what gets printed.
#![no_main]
use htgroth::io::{multisegment_to_json, parse_multisegment};
use htgroth::Cusps;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let cusps = Cusps::new();
    if let Ok(m) = parse_multisegment(s, &cusps) {
        let again = parse_multisegment(&multisegment_to_json(&m), &cusps).expect("printed form parses");
        assert_eq!(again, m);
    }
});
