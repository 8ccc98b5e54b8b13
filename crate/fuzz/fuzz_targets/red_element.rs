#![no_main]
use htgroth::io::{parse_red, red_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = parse_red(s) {
        assert_eq!(parse_red(&red_to_json(&x)).expect("printed form parses"), x);
    }
});
