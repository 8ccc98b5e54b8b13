#![no_main]
use htgroth::io::{parse_supercuspidal, supercuspidal_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(sc) = parse_supercuspidal(s) {
        assert_eq!(parse_supercuspidal(&supercuspidal_to_json(&sc)).expect("printed form parses"), sc);
    }
});
