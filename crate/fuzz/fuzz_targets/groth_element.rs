//! Grothendieck element JSON round trip.
#![no_main]
use htgroth::io::{groth_to_json, parse_groth};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_groth(s) {
        assert_eq!(parse_groth(&groth_to_json(&x)).expect("printed form parses"), x);
    }
});
