//! Triangular base changes between j_!* and j_! on the strata t <= h <= s_max.

use crate::coeff::Coeff;
use crate::halfint::HalfInt;
use crate::label::{make_speh_st, make_steinberg, GrothElement, Term};
use crate::segments::CuspidalLabel;
use crate::sym::{shadow, Shadow, ShadowKey};
use std::collections::BTreeMap;

/// Matrix indexed by strata, entries in the shadowed Grothendieck group.
/// Entry (h, k) is the coefficient of the class on stratum k in the
/// expansion of the class on stratum h.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrataMatrix {
    pub lo: u32,
    pub hi: u32,
    pub entries: BTreeMap<(u32, u32), Shadow>,
}

impl StrataMatrix {
    pub fn get(&self, h: u32, k: u32) -> Shadow {
        self.entries.get(&(h, k)).cloned().unwrap_or_default()
    }

    pub fn is_unitriangular(&self) -> bool {
        let one = unit_shadow();
        self.entries.iter().all(|(&(h, k), v)| k >= h || v.is_zero())
            && (self.lo..=self.hi).all(|h| self.get(h, h) == one)
    }

    pub fn is_identity(&self) -> bool {
        let one = unit_shadow();
        self.entries
            .iter()
            .all(|(&(h, k), v)| if h == k { *v == one } else { v.is_zero() })
            && (self.lo..=self.hi).all(|h| self.get(h, h) == one)
    }
}

fn unit_shadow() -> Shadow {
    Shadow::single(
        ShadowKey {
            rest: Vec::new(),
            xi: HalfInt::ZERO,
            mono: Vec::new(),
        },
        Coeff::one(),
    )
}

fn shadow_product(a: &Shadow, b: &Shadow) -> Shadow {
    a.product(b, |x, y| {
        let mut rest = x.rest.clone();
        rest.extend(y.rest.iter().cloned());
        rest.sort();
        let mut mono = x.mono.clone();
        mono.extend(y.mono.iter().copied());
        mono.sort();
        ShadowKey {
            rest,
            xi: x.xi + y.xi,
            mono,
        }
    })
}

fn shifted(label: Option<crate::label::IrreducibleLabel>, d: u32, pi: &CuspidalLabel) -> Shadow {
    let term = Term::new(
        label.unwrap_or_default(),
        HalfInt::from_num(-(d as i64)),
    );
    shadow(&GrothElement::single(term, Coeff::one()), pi.id())
}

/// j_!* on stratum h as an alternating sum of j_! on strata h + delta,
/// weighted by Speh_delta(pi) and Xi^{-delta/2}.
pub fn se2_matrix(pi: &CuspidalLabel, t: u32, s_max: u32) -> StrataMatrix {
    let mut entries = BTreeMap::new();
    for h in t..=s_max {
        for k in h..=s_max {
            let d = k - h;
            let label = (d > 0).then(|| make_speh_st(pi, d, 1).expect("d > 0"));
            let sign = if d % 2 == 0 { 1 } else { -1 };
            entries.insert((h, k), shifted(label, d, pi).scale_int(sign));
        }
    }
    StrataMatrix {
        lo: t,
        hi: s_max,
        entries,
    }
}

/// j_! on stratum h as a sum of j_!* on strata h + eps, weighted by
/// St_eps(pi) and Xi^{-eps/2}.
pub fn hij_matrix(pi: &CuspidalLabel, t: u32, s_max: u32) -> StrataMatrix {
    let mut entries = BTreeMap::new();
    for h in t..=s_max {
        for k in h..=s_max {
            let e = k - h;
            let label = (e > 0).then(|| make_steinberg(pi, e).expect("e > 0"));
            entries.insert((h, k), shifted(label, e, pi));
        }
    }
    StrataMatrix {
        lo: t,
        hi: s_max,
        entries,
    }
}

/// Matrix product a * b: substitute b's expansion into a's.
pub fn compose(a: &StrataMatrix, b: &StrataMatrix) -> StrataMatrix {
    let lo = a.lo.max(b.lo);
    let hi = a.hi.min(b.hi);
    let mut entries = BTreeMap::new();
    for h in lo..=hi {
        for k in lo..=hi {
            let mut acc = Shadow::zero();
            for j in lo..=hi {
                acc.accumulate(&shadow_product(&a.get(h, j), &b.get(j, k)));
            }
            if !acc.is_zero() {
                entries.insert((h, k), acc);
            }
        }
    }
    StrataMatrix { lo, hi, entries }
}

/// se2 composed with hij is the identity, and se2 is unitriangular.
pub fn check_se2(pi: &CuspidalLabel, t: u32, s_max: u32) -> bool {
    if t > s_max {
        return true;
    }
    let se2 = se2_matrix(pi, t, s_max);
    se2.is_unitriangular() && compose(&se2, &hij_matrix(pi, t, s_max)).is_identity()
}

/// hij composed with se2 is the identity, and hij is unitriangular.
pub fn check_hij(pi: &CuspidalLabel, t: u32, s_max: u32) -> bool {
    if t > s_max {
        return true;
    }
    let hij = hij_matrix(pi, t, s_max);
    hij.is_unitriangular() && compose(&hij, &se2_matrix(pi, t, s_max)).is_identity()
}
