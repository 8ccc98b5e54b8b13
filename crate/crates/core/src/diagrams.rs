//! The coefficient diagrams m_{s,t}(r,i) and n_{s,t}(r,i) and their superposition.

use crate::geometry::{contains, hull, Pt};
use crate::halfint::HalfInt;
use crate::segments::CuspidalLabel;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    M,
    N,
}

/// m_{s,t}(r,i) from the bullet inequalities.
pub fn m_coeff(s: u32, t: u32, r: u32, i: i32) -> u8 {
    if s == 0 || t == 0 {
        return 0;
    }
    let (s, t, r, i) = (s as i64, t as i64, r as i64, i as i64);
    let lo = 1.max(s + t - 1 - 2 * (s - 1));
    if r < lo || r > s + t - 1 {
        return 0;
    }
    let ok = if t <= r {
        i.abs() <= s + t - 1 - r && (i - (s + t - 1 - r)).rem_euclid(2) == 0
    } else {
        i.abs() <= s - 1 - (t - r) && (i - (s - t - 1 + r)).rem_euclid(2) == 0
    };
    ok as u8
}

/// Vertices of the m-polygon.
pub fn m_vertices(s: u32, t: u32) -> Vec<Pt> {
    let (s, t) = (s as i64, t as i64);
    if s >= t {
        vec![(s + t - 1, 0), (t, s - 1), (t, 1 - s), (1, s - t), (1, t - s)]
    } else {
        vec![(s + t - 1, 0), (t, s - 1), (t, 1 - s), (t - s + 1, 0)]
    }
}

/// m_{s,t}(r,i) from hull membership plus the parity i = s+t-1-r mod 2.
pub fn m_coeff_hull(s: u32, t: u32, r: u32, i: i32) -> u8 {
    if s == 0 || t == 0 {
        return 0;
    }
    let h = hull(&m_vertices(s, t));
    let parity = (i as i64 - (s as i64 + t as i64 - 1 - r as i64)).rem_euclid(2) == 0;
    (parity && contains(&h, (r as i64, i as i64))) as u8
}

pub fn n_vertices(s: u32, t: u32) -> Vec<Pt> {
    let (s, t) = (s as i64, t as i64);
    vec![(s + t - 1, 0), (s, 0), (1, s - 1), (t, s - 1)]
}

/// n_{s,t}(r,i): lattice points of the closed hull of the four vertices.
pub fn n_coeff(s: u32, t: u32, r: u32, i: i32) -> u8 {
    if s == 0 || t == 0 {
        return 0;
    }
    contains(&hull(&n_vertices(s, t)), (r as i64, i as i64)) as u8
}

pub fn coeff(kind: Kind, s: u32, t: u32, r: u32, i: i32) -> u8 {
    match kind {
        Kind::M => m_coeff(s, t, r, i),
        Kind::N => n_coeff(s, t, r, i),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSupport {
    pub kind: Kind,
    pub s: u32,
    pub t: u32,
    pub points: BTreeSet<(u32, i32)>,
}

fn support(kind: Kind, s: u32, t: u32) -> DiagramSupport {
    let mut points = BTreeSet::new();
    let bound = (s + t) as i32;
    for r in 1..s + t {
        for i in -bound..=bound {
            if coeff(kind, s, t, r, i) == 1 {
                points.insert((r, i));
            }
        }
    }
    DiagramSupport { kind, s, t, points }
}

pub fn m_support(s: u32, t: u32) -> DiagramSupport {
    support(Kind::M, s, t)
}

pub fn n_support(s: u32, t: u32) -> DiagramSupport {
    support(Kind::N, s, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub cusp: CuspidalLabel,
    pub t: u32,
    /// Unramified twist relating the block's cuspidal to the reference one.
    pub xi: HalfInt,
}

/// Local component Speh_s(St_{t_1}(pi_1)) x ... x Speh_s(St_{t_u}(pi_u)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalComponent {
    pub s: u32,
    pub blocks: Vec<Block>,
}

impl LocalComponent {
    /// All blocks on the line of `pi`, untwisted.
    pub fn on_line(pi: &CuspidalLabel, s: u32, ts: &[u32]) -> Self {
        LocalComponent {
            s,
            blocks: ts
                .iter()
                .map(|&t| Block {
                    cusp: pi.clone(),
                    t,
                    xi: HalfInt::ZERO,
                })
                .collect(),
        }
    }
}

/// One block's contribution at a cell, traced back to its source vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Contribution {
    pub block: usize,
    pub source: (u32, i32),
    /// True when the source lies strictly to the right of the cell.
    pub higher_source: bool,
}

pub type Superposition = BTreeMap<(u32, i32), Vec<Contribution>>;

/// Overlay the (s, t_k) diagrams of the blocks inertially equivalent to `target`.
pub fn superpose(comp: &LocalComponent, target: &CuspidalLabel, kind: Kind) -> Superposition {
    let mut out = Superposition::new();
    for (k, b) in comp.blocks.iter().enumerate() {
        if &b.cusp != target {
            continue;
        }
        let src = comp.s + b.t - 1;
        for &(r, i) in &support(kind, comp.s, b.t).points {
            out.entry((r, i)).or_default().push(Contribution {
                block: k,
                source: (src, 0),
                higher_source: src > r,
            });
        }
    }
    out
}
