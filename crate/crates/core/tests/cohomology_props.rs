use htgroth::cohomology::*;
use htgroth::{Coeff, CuspidalLabel, IrreducibleLabel};

fn pi() -> CuspidalLabel {
    CuspidalLabel::unit("pi")
}

fn single(s: u32, t: u32) -> SpectrumProfile {
    SpectrumProfile::new(vec![ProfileEntry::new(s, t, pi(), Coeff::atom("m"), IrreducibleLabel::unit()).unwrap()]).unwrap()
}

#[test]
fn shriek_euler_matches_red_route() {
    for s in 1..=4 {
        for t in 1..=4 {
            let p = single(s, t);
            for r in 1..=s * t {
                let a = coh_shriek(&p, &pi(), r).euler();
                let b = euler_via_red(&p, &pi(), r);
                assert_eq!(a, b, "s={s} t={t} r={r}");
            }
        }
    }
}

#[test]
fn hij_reexpansion_holds() {
    for s in 1..=4 {
        for t in 1..=4 {
            let p = single(s, t);
            for r in 1..=s + t {
                let (l, rr) = hij_reexpansion(&p, &pi(), r);
                assert_eq!(l, rr, "s={s} t={t} r={r}");
            }
        }
    }
}

#[test]
fn se2_reexpansion_holds() {
    for s in 1..=4 {
        for t in 1..=4 {
            let p = single(s, t);
            for r in 1..=s + t {
                let (l, rr) = se2_reexpansion(&p, &pi(), r);
                assert_eq!(l, rr, "s={s} t={t} r={r}");
            }
        }
    }
}
