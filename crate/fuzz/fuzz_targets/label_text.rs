//! Label text grammar: `{pi[a,b], ...} x St_t(pi) x name{twist}`.
#![no_main]
use htgroth::{Cusps, IrreducibleLabel};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 256 {
        return;
    }
    let cusps = Cusps::new();
    if let Ok(l) = IrreducibleLabel::parse(s, &cusps) {
        let again = IrreducibleLabel::parse(&l.to_string(), &cusps).expect("printed form parses");
        assert_eq!(again, l);
    }
});
