use super::profile::SpectrumProfile;
use crate::coeff::{Coeff, KER1_ATOM};
use crate::diagrams::{m_coeff, n_coeff};
use crate::halfint::HalfInt;
use crate::label::{make_speh_st, GrothElement, Term};
use crate::jl_red::{r_sti, red_tau, s_sti, Tau};
use crate::segments::CuspidalLabel;
use crate::sym::{shadow, shadow_mul, Shadow, Sym};
use std::collections::BTreeMap;

/// Degree-indexed Grothendieck classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub degrees: BTreeMap<i32, GrothElement>,
}

impl CohomologyTable {
    pub fn add(&mut self, i: i32, x: &GrothElement) {
        if x.is_zero() {
            return;
        }
        let e = self.degrees.entry(i).or_default();
        e.accumulate(x);
        if e.is_zero() {
            self.degrees.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn get(&self, i: i32) -> GrothElement {
        self.degrees.get(&i).cloned().unwrap_or_default()
    }

    /// sum_i (-1)^i H^i.
    pub fn euler(&self) -> GrothElement {
        let mut out = GrothElement::zero();
        for (i, x) in &self.degrees {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            out.accumulate(&x.scale_int(sign));
        }
        out
    }

    pub fn map(&self, f: impl Fn(&GrothElement) -> GrothElement) -> CohomologyTable {
        let mut out = CohomologyTable::default();
        for (i, x) in &self.degrees {
            out.add(*i, &f(x));
        }
        out
    }
}

/// e_pi * #Ker1(Q,G)/d.
pub fn global_scalar(pi: &CuspidalLabel) -> Coeff {
    Coeff::int(pi.e_pi() as i64) * Coeff::atom(KER1_ATOM)
}

fn degree_range(s: u32, t: u32) -> std::ops::RangeInclusive<i32> {
    let b = (s + t) as i32;
    -b..=b
}

/// Classes of the intermediate extension at stratum r.
pub fn coh_intermediate(profile: &SpectrumProfile, pi: &CuspidalLabel, r: u32) -> CohomologyTable {
    let mut table = CohomologyTable::default();
    let scalar = global_scalar(pi);
    for e in profile.entries.iter().filter(|e| &e.cusp == pi) {
        let c = &e.mult * &scalar;
        let tail = GrothElement::of_label(e.tail.clone());
        for i in degree_range(e.s, e.t) {
            if m_coeff(e.s, e.t, r, i) == 0 {
                continue;
            }
            let x = tail
                .groth_product(&r_sti(e.s, e.t, r, i, pi))
                .xi_twist(HalfInt::from_num(i as i64))
                .scale(&c);
            table.add(i, &x);
        }
    }
    table
}

/// Classes of the extension by zero at stratum r.
pub fn coh_shriek(profile: &SpectrumProfile, pi: &CuspidalLabel, r: u32) -> CohomologyTable {
    let mut table = CohomologyTable::default();
    let scalar = global_scalar(pi);
    for e in profile.entries.iter().filter(|e| &e.cusp == pi) {
        let c = &e.mult * &scalar;
        let tail = GrothElement::of_label(e.tail.clone());
        for i in degree_range(e.s, e.t) {
            if n_coeff(e.s, e.t, r, i) == 0 {
                continue;
            }
            let w = 2 * i as i64 + r as i64 - e.s as i64 - e.t as i64 + 1;
            let x = tail
                .groth_product(&s_sti(e.s, e.t, r, i, pi))
                .xi_twist(HalfInt::from_num(w))
                .scale(&c);
            table.add(i, &x);
        }
    }
    table
}

/// The alternating sum of the extension by zero computed directly from
/// red_tau: (-1)^{s-1} sum over cuts of sign(a1) [a2] Xi^{-k/2}.
pub fn euler_via_red(profile: &SpectrumProfile, pi: &CuspidalLabel, r: u32) -> GrothElement {
    let mut out = GrothElement::zero();
    let scalar = global_scalar(pi);
    let tau = Tau {
        cusp: pi.clone(),
        r,
    };
    for e in profile.entries.iter().filter(|e| &e.cusp == pi) {
        let Ok(label) = make_speh_st(pi, e.s, e.t) else {
            continue;
        };
        let red = red_tau(&tau, &GrothElement::of_label(label));
        let sign = if e.s % 2 == 1 { 1 } else { -1 };
        let c = (&e.mult * &scalar).scale(sign);
        for (k, v) in red.iter() {
            out.add_term(
                Term::new(e.tail.mul(&k.label), k.xi - k.psi),
                v * &c,
            );
        }
    }
    out
}

/// Both sides of the j_! = sum_eps St_eps x j_!* expansion, in the
/// symmetric-function shadow along `pi`, at stratum r.
pub fn hij_reexpansion(profile: &SpectrumProfile, pi: &CuspidalLabel, r: u32) -> (Shadow, Shadow) {
    let lhs = shadow(&coh_shriek(profile, pi, r).euler(), pi.id());
    let top = profile
        .entries
        .iter()
        .filter(|e| &e.cusp == pi)
        .map(|e| e.r)
        .max()
        .unwrap_or(0);
    let mut rhs = Shadow::zero();
    for rr in r..=top.max(r) {
        let eps = rr - r;
        let ic = shadow(&coh_intermediate(profile, pi, rr).euler(), pi.id());
        rhs.accumulate(&shadow_mul(&ic, &Sym::h(eps as i64), HalfInt::from_num(-(eps as i64))));
    }
    (lhs, rhs)
}

/// Both sides of the alternating expansion of j_!* through j_! weighted by
/// (-1)^delta Speh_delta(pi), in the shadow along `pi`, at stratum r.
pub fn se2_reexpansion(profile: &SpectrumProfile, pi: &CuspidalLabel, r: u32) -> (Shadow, Shadow) {
    let lhs = shadow(&coh_intermediate(profile, pi, r).euler(), pi.id());
    let top = profile
        .entries
        .iter()
        .filter(|e| &e.cusp == pi)
        .map(|e| e.s * e.t)
        .max()
        .unwrap_or(0);
    let mut rhs = Shadow::zero();
    for rr in r..=top.max(r) {
        let d = rr - r;
        let sh = shadow(&coh_shriek(profile, pi, rr).euler(), pi.id());
        let sign = if d.is_multiple_of(2) { 1 } else { -1 };
        rhs.accumulate(&shadow_mul(&sh, &Sym::e(d).scale(sign), HalfInt::from_num(-(d as i64))));
    }
    (lhs, rhs)
}
