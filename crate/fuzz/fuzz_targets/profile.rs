//! Spectrum profile JSON; parsed profiles also feed the table builders.
#![no_main]
use htgroth::cohomology::coh_shriek;
use htgroth::io::{parse_profile, profile_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((p, cusps)) = parse_profile(s) {
        let (q, _) = parse_profile(&profile_to_json(&p)).expect("printed form parses");
        assert_eq!(q, p);
        if let (Some(e), Ok(pi)) = (p.entries.first(), cusps.resolve("pi")) {
            if e.s + e.t <= 8 {
                let _ = coh_shriek(&p, &pi, e.r);
            }
        }
    }
});
