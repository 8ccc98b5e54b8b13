#![no_main]
use htgroth::io::{parse_table, table_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = parse_table(s) {
        assert_eq!(parse_table(&table_to_json(&t)).expect("printed form parses"), t);
    }
});
