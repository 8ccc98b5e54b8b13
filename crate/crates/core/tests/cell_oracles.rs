//! Independent checks of the cell representations against the diagrams,
//! through the symmetric-function shadow.

use htgroth::diagrams::{m_coeff, n_support};
use htgroth::jl_red::{r_sti, r_sti_formal, s_sti, shriek_cuts};
use htgroth::sym::{eval_by_twist, shadow};
use htgroth::{CuspidalLabel, HalfInt};
use std::collections::BTreeSet;

fn pi() -> CuspidalLabel {
    CuspidalLabel::unit("pi")
}

#[test]
fn shriek_cells_are_the_n_diagram() {
    for s in 1..=6 {
        for t in 1..=6 {
            let mut cells = BTreeSet::new();
            for r in 1..=s * t {
                for c in shriek_cuts(s, t, r, &pi()) {
                    cells.insert((c.r, c.i));
                }
            }
            assert_eq!(cells, n_support(s, t).points, "s={s} t={t}");
        }
    }
}

#[test]
fn cut_sign_times_degree_parity_is_constant() {
    for s in 1..=6u32 {
        for t in 1..=6 {
            for r in 1..s + t {
                for c in shriek_cuts(s, t, r, &pi()) {
                    let parity = if (c.i as i64 + s as i64 - 1) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(c.sign as i64, parity, "s={s} t={t} r={r} i={}", c.i);
                }
            }
        }
    }
}

#[test]
fn r_shadow_support_is_the_m_diagram_and_positive() {
    for s in 1..=5u32 {
        for t in 1..=5u32 {
            let b = (s + t) as i32;
            for r in 1..s + t {
                for i in -b..=b {
                    let formal = r_sti_formal(s, t, r, i, &pi());
                    let sh = shadow(&formal, "pi");
                    let on = m_coeff(s, t, r, i) == 1;
                    assert_eq!(!sh.is_zero(), on, "s={s} t={t} r={r} i={i}");
                    if on {
                        let vals = eval_by_twist(&sh, 12, &|_| 1);
                        assert_eq!(vals.len(), 1);
                        assert!(vals[&HalfInt::ZERO] > 0, "s={s} t={t} r={r} i={i}");
                        assert_eq!(r_sti(s, t, r, i, &pi()), formal);
                    } else {
                        assert!(r_sti(s, t, r, i, &pi()).is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn s_is_effective() {
    for s in 1..=4u32 {
        for t in 1..=4u32 {
            for &(r, i) in &n_support(s, t).points {
                let x = s_sti(s, t, r, i, &pi());
                assert!(!x.is_zero());
                assert!(x.iter().all(|(_, c)| c.as_int().is_some_and(|n| n > 0)));
            }
        }
    }
}
