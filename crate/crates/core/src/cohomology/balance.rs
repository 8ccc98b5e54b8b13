//! Mod-l balance between two levels of the tower of cuspidal lifts, and the
//! congruence constraints it imposes on symbolic spectra.

use super::profile::{ProfileEntry, SpectrumProfile};
use super::tables::CohomologyTable;
use crate::coeff::Coeff;
use crate::diagrams::n_coeff;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::jl_red::s_sti;
use crate::label::{GrothElement, Term};
use crate::modl::{chgt_cuspi_factor, rank_at, ModlCollapse, SupercuspidalData};
use crate::segments::CuspidalLabel;
use std::collections::{BTreeMap, BTreeSet};

/// Marker for entries whose component at the auxiliary place is a Speh of a
/// non-degenerate representation.
pub const NONDEG_AUX: &str = "nondeg-aux";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceSetup {
    pub sc: SupercuspidalData,
    pub u: i32,
    pub u2: i32,
    pub pi_u: CuspidalLabel,
    pub pi_u2: CuspidalLabel,
    pub collapse: ModlCollapse,
}

impl BalanceSetup {
    /// Both lifts collapse onto the supercuspidal's line.
    pub fn new(sc: SupercuspidalData, u: i32, u2: i32, pi_u: CuspidalLabel, pi_u2: CuspidalLabel) -> Result<Self> {
        if u < -1 || u2 < u {
            return Err(Error::pre("need -1 <= u <= u'"));
        }
        for (pi, lvl) in [(&pi_u, u), (&pi_u2, u2)] {
            let g = rank_at(&sc, lvl);
            if pi.g() as u64 != g {
                return Err(Error::pre(format!(
                    "{} has rank {} but level {lvl} has rank {g}",
                    pi.id(),
                    pi.g()
                )));
            }
        }
        let collapse = ModlCollapse::new(sc.epsilon())
            .lift(pi_u.id(), sc.label().clone())
            .lift(pi_u2.id(), sc.label().clone());
        Ok(BalanceSetup {
            sc,
            u,
            u2,
            pi_u,
            pi_u2,
            collapse,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConstraintKind {
    /// lhs = rhs for one mod-l class.
    Balance,
    /// lhs must be nonzero: some matching side-u entry with s = 1 exists.
    Existence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceConstraint {
    pub kind: ConstraintKind,
    pub class: Term,
    pub lhs: Coeff,
    pub rhs: Coeff,
    /// Indices of the profile entries feeding each side.
    pub lhs_entries: Vec<usize>,
    pub rhs_entries: Vec<usize>,
    /// (r, i) cells of the contributions.
    pub cells: Vec<(u32, i32)>,
}

impl CongruenceConstraint {
    pub fn is_tautology(&self) -> bool {
        self.kind == ConstraintKind::Balance && self.lhs == self.rhs
    }

    pub fn is_satisfied(&self) -> bool {
        match self.kind {
            ConstraintKind::Balance => self.lhs == self.rhs,
            ConstraintKind::Existence => !self.lhs.is_zero(),
        }
    }
}

#[derive(Default)]
struct Side {
    sum: BTreeMap<Term, Coeff>,
    sources: BTreeMap<Term, BTreeSet<usize>>,
    cells: BTreeMap<Term, BTreeSet<(u32, i32)>>,
}

fn side_sum(profile: &SpectrumProfile, pi: &CuspidalLabel, r: u32, collapse: &ModlCollapse) -> Side {
    let mut side = Side::default();
    for (idx, e) in profile.entries.iter().enumerate() {
        if &e.cusp != pi {
            continue;
        }
        let tail = GrothElement::of_label(e.tail.clone());
        let b = (e.s + e.t) as i32;
        for i in -b..=b {
            if n_coeff(e.s, e.t, r, i) == 0 {
                continue;
            }
            let w = 2 * i as i64 + r as i64 - e.s as i64 - e.t as i64 + 1;
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            let x = tail
                .groth_product(&s_sti(e.s, e.t, r, i, pi))
                .xi_twist(HalfInt::from_num(w))
                .scale(&e.mult.scale(sign));
            for (term, c) in collapse.collapse(&x).iter() {
                let slot = side.sum.entry(term.clone()).or_insert_with(Coeff::zero);
                *slot = &*slot + c;
                side.sources.entry(term.clone()).or_default().insert(idx);
                side.cells.entry(term.clone()).or_default().insert((r, i));
            }
        }
    }
    side
}

/// Alternating j_! sums at strata r (level u) and r' (level u'), reduced
/// mod l; the left side is scaled by the change-of-cuspidal factor.
pub fn rl_hi_balance(
    profile_u: &SpectrumProfile,
    profile_u2: &SpectrumProfile,
    setup: &BalanceSetup,
    r: u32,
    r2: u32,
) -> Result<Vec<CongruenceConstraint>> {
    let (gu, gu2) = (rank_at(&setup.sc, setup.u), rank_at(&setup.sc, setup.u2));
    if r as u64 * gu != r2 as u64 * gu2 {
        return Err(Error::pre(format!(
            "mismatched strata: r g_u = {} but r' g_u' = {}",
            r as u64 * gu,
            r2 as u64 * gu2
        )));
    }
    let chgt = chgt_cuspi_factor(setup.u, setup.u2, &setup.sc)? as i64;
    let left = side_sum(profile_u, &setup.pi_u, r, &setup.collapse);
    let right = side_sum(profile_u2, &setup.pi_u2, r2, &setup.collapse);

    let classes: BTreeSet<&Term> = left.sum.keys().chain(right.sum.keys()).collect();
    let mut out = Vec::new();
    for class in classes {
        let get = |s: &Side| s.sum.get(class).cloned().unwrap_or_default();
        let ids = |s: &Side| -> Vec<usize> {
            s.sources.get(class).map(|v| v.iter().copied().collect()).unwrap_or_default()
        };
        let mut cells: BTreeSet<(u32, i32)> = BTreeSet::new();
        for s in [&left, &right] {
            cells.extend(s.cells.get(class).into_iter().flatten());
        }
        let lhs = get(&left).scale(chgt);
        let rhs = get(&right);
        if lhs.is_zero() && rhs.is_zero() {
            continue;
        }
        out.push(CongruenceConstraint {
            kind: ConstraintKind::Balance,
            class: class.clone(),
            lhs,
            rhs,
            lhs_entries: ids(&left),
            rhs_entries: ids(&right),
            cells: cells.into_iter().collect(),
        });
    }
    out.extend(existence_constraints(profile_u, profile_u2, setup));
    Ok(out)
}

fn existence_constraints(
    profile_u: &SpectrumProfile,
    profile_u2: &SpectrumProfile,
    setup: &BalanceSetup,
) -> Vec<CongruenceConstraint> {
    let c = &setup.collapse;
    let mut out = Vec::new();
    for (j, e2) in profile_u2.entries.iter().enumerate() {
        if e2.cusp != setup.pi_u2 || !e2.markers.contains(NONDEG_AUX) {
            continue;
        }
        let tail = c.collapse_label(&e2.tail);
        let matches: Vec<(usize, &ProfileEntry)> = profile_u
            .entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.cusp == setup.pi_u && e.s == 1 && c.collapse_label(&e.tail) == tail)
            .collect();
        let lhs = matches.iter().fold(Coeff::zero(), |acc, (_, e)| acc + e.mult.clone());
        out.push(CongruenceConstraint {
            kind: ConstraintKind::Existence,
            class: Term::new(tail, HalfInt::ZERO),
            lhs,
            rhs: e2.mult.clone(),
            lhs_entries: matches.iter().map(|(i, _)| *i).collect(),
            rhs_entries: vec![j],
            cells: vec![(e2.r, 0)],
        });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateRecord {
    pub class: Term,
    pub strong: bool,
    pub lhs_entries: Vec<usize>,
    pub rhs_entries: Vec<usize>,
}

/// Satisfied balance constraints, labelled strong when every contributing
/// entry on both sides carries `marker`.
pub fn strong_congruence_filter(
    constraints: &[CongruenceConstraint],
    profiles: (&SpectrumProfile, &SpectrumProfile),
    marker: &str,
) -> Vec<CertificateRecord> {
    let marked = |p: &SpectrumProfile, ids: &[usize]| {
        !ids.is_empty()
            && ids
                .iter()
                .all(|&i| p.entries.get(i).is_some_and(|e| e.markers.contains(marker)))
    };
    constraints
        .iter()
        .filter(|c| c.kind == ConstraintKind::Balance && c.is_satisfied())
        .map(|c| CertificateRecord {
            class: c.class.clone(),
            strong: marked(profiles.0, &c.lhs_entries) && marked(profiles.1, &c.rhs_entries),
            lhs_entries: c.lhs_entries.clone(),
            rhs_entries: c.rhs_entries.clone(),
        })
        .collect()
}

/// Two cohomology runs agree degree by degree after mod-l collapse.
pub fn conj2_predicate(run_a: &CohomologyTable, run_b: &CohomologyTable, collapse: &ModlCollapse) -> bool {
    let reduce = |t: &CohomologyTable| t.map(|x| collapse.collapse(x));
    reduce(run_a) == reduce(run_b)
}

