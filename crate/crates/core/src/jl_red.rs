//! The transfer maps R_tau and red_tau, orientations of the linear graph, and
//! the cell representations R_pi(s,t)(r,i) and S_pi(s,t)(r,i).

use crate::coeff::Coeff;
use crate::diagrams::{m_coeff, n_coeff};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::label::{Factor, GrothElement, IrreducibleLabel, Term};
use crate::lin::Lin;
use crate::segments::{ladder_cuts, speh_st_ladder, CuspidalLabel, Multisegment, Segment};

/// An orientation of the linear graph 1 - 2 - ... - t; `edges[k]` is true
/// when the edge between k+1 and k+2 points right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    pub t: u32,
    pub edges: Vec<bool>,
}

pub fn orientations(t: u32) -> Vec<Orientation> {
    assert!((1..=31).contains(&t), "orientations need 1 <= t <= 31");
    let n = t - 1;
    (0..1u32 << n)
        .map(|mask| Orientation {
            t,
            edges: (0..n).map(|k| mask & (1 << k) != 0).collect(),
        })
        .collect()
}

/// Maximal rightward runs become segments on the twists (1-t)/2, ..., (t-1)/2.
pub fn multisegment_of_orientation(o: &Orientation, pi: &CuspidalLabel) -> Multisegment {
    let mut segs = Vec::new();
    let mut start = 0u32;
    for k in 0..o.t {
        let run_ends = k + 1 == o.t || !o.edges[k as usize];
        if run_ends {
            segs.push(Segment {
                cusp: pi.clone(),
                start: HalfInt::from_num(-(o.t as i64 - 1) + 2 * start as i64),
                len: k - start + 1,
            });
            start = k + 1;
        }
    }
    Multisegment::new(segs)
}

/// A sign and the character |-|^{k/2}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedCharacter {
    pub sign: i8,
    pub k: i64,
}

/// The R_tau trace on a1: sign (-1)^{#segments - 1} and the center of a1.
pub fn r_tau_sign(a1: &Multisegment, pi: &CuspidalLabel) -> Result<SignedCharacter> {
    if a1.is_empty() {
        return Err(Error::pre("R_tau needs a nonempty multisegment"));
    }
    if a1.segments().iter().any(|s| &s.cusp != pi) {
        return Err(Error::pre(format!("{a1} is not on the line of {}", pi.id())));
    }
    let pts = a1.support();
    let run = pts.windows(2).all(|w| w[1] - w[0] == HalfInt::ONE);
    if !run {
        return Err(Error::pre(format!(
            "{a1} is not a multiplicity-one consecutive run"
        )));
    }
    let k = (pts[0].num() + pts[pts.len() - 1].num()) / 2;
    let sign = if a1.segments().len() % 2 == 1 { 1 } else { -1 };
    Ok(SignedCharacter { sign, k })
}

/// tau = pi[r]_D, attached to St_r(pi).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tau {
    pub cusp: CuspidalLabel,
    pub r: u32,
}

/// Basis of the Grothendieck group of F^x x GL: a character |-|^psi, a label,
/// and the external Xi-twist carried over from the input.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RedKey {
    pub psi: HalfInt,
    pub label: IrreducibleLabel,
    pub xi: HalfInt,
}

pub type RedElement = Lin<RedKey>;

/// Pieces of a factor that the Jacquet functor cuts independently.
fn units(m: &Multisegment) -> Vec<Multisegment> {
    if m.is_ladder() {
        vec![m.clone()]
    } else {
        m.segments()
            .iter()
            .map(|s| Multisegment::new(vec![s.clone()]))
            .collect()
    }
}

/// One choice of cut for every unit of a factor: (a1 pieces, recombined a2).
type FactorCut = (Vec<Multisegment>, Factor);

/// All cuts of one factor with left rank `n` (in units of GL_1).
fn factor_cuts(f: &Factor, pi: &CuspidalLabel, n: u64) -> Vec<FactorCut> {
    let m = match f {
        Factor::Seg(m) if f.line() == Some(pi) => m,
        _ => {
            return if n == 0 {
                vec![(Vec::new(), f.clone())]
            } else {
                Vec::new()
            }
        }
    };
    let us = units(m);
    let mut acc: Vec<(Vec<Multisegment>, Multisegment, u64)> =
        vec![(Vec::new(), Multisegment::empty(), 0)];
    for u in &us {
        let mut next = Vec::new();
        for (a1s, a2, used) in &acc {
            let g = pi.g() as u64;
            let mut k = 0;
            while used + k <= n && k <= u.rank() {
                for c in ladder_cuts(u, k).unwrap_or_default() {
                    let mut a1s = a1s.clone();
                    if !c.a1.is_empty() {
                        a1s.push(c.a1);
                    }
                    next.push((a1s, a2.union(&c.a2), used + k));
                }
                k += g;
            }
        }
        acc = next;
    }
    acc.into_iter()
        .filter(|(_, _, used)| *used == n)
        .map(|(a1s, a2, _)| (a1s, Factor::Seg(a2)))
        .collect()
}

fn apply_r_tau(a1s: &[Multisegment], pi: &CuspidalLabel) -> Option<SignedCharacter> {
    // a properly induced a1 has vanishing trace
    match a1s {
        [single] => r_tau_sign(single, pi).ok(),
        _ => None,
    }
}

fn red_term(tau: &Tau, term: &Term, c: &Coeff, out: &mut RedElement) {
    let pi = &tau.cusp;
    let total = tau.r as u64 * pi.g() as u64;
    let factors = term.label.factors();
    // distribute the rank over the factors
    let mut partial: Vec<(Vec<Multisegment>, Vec<Factor>, u64)> = vec![(Vec::new(), Vec::new(), 0)];
    for f in factors {
        let cap = match f {
            Factor::Seg(m) if f.line() == Some(pi) => m.rank(),
            _ => 0,
        };
        let mut next = Vec::new();
        for (a1s, rest, used) in &partial {
            let g = pi.g() as u64;
            let mut n = 0;
            while used + n <= total && n <= cap {
                for (fa1, fa2) in factor_cuts(f, pi, n) {
                    let mut a1s = a1s.clone();
                    a1s.extend(fa1);
                    let mut rest = rest.clone();
                    rest.push(fa2);
                    next.push((a1s, rest, used + n));
                }
                n += g;
            }
        }
        partial = next;
    }
    for (a1s, rest, used) in partial {
        if used != total {
            continue;
        }
        if let Some(ch) = apply_r_tau(&a1s, pi) {
            out.add_term(
                RedKey {
                    psi: HalfInt::from_num(ch.k),
                    label: IrreducibleLabel::new(rest),
                    xi: term.xi,
                },
                c.scale(ch.sign as i64),
            );
        }
    }
}

/// red_tau through the Jacquet functor of the whole product followed by R_tau.
pub fn red_tau(tau: &Tau, x: &GrothElement) -> RedElement {
    let mut out = RedElement::zero();
    for (term, c) in x.iter() {
        red_term(tau, term, c, &mut out);
    }
    out
}

/// red_tau through multiplicativity: sum over factors of (red factor) x others.
pub fn red_leibniz(tau: &Tau, x: &GrothElement) -> RedElement {
    let mut out = RedElement::zero();
    for (term, c) in x.iter() {
        let fs = term.label.factors();
        for (j, f) in fs.iter().enumerate() {
            let single = GrothElement::of_label(IrreducibleLabel::new(vec![f.clone()]));
            let others: Vec<Factor> = fs
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, g)| g.clone())
                .collect();
            let others = IrreducibleLabel::new(others);
            for (k, v) in red_tau(tau, &single).iter() {
                out.add_term(
                    RedKey {
                        psi: k.psi,
                        label: k.label.mul(&others),
                        xi: term.xi,
                    },
                    v * c,
                );
            }
        }
    }
    out
}

/// A cut of Speh_s(St_t(pi)) with nonvanishing R_tau, placed in its cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellCut {
    pub r: u32,
    pub i: i32,
    pub sign: i8,
    pub psi: SignedCharacter,
    pub a2: Multisegment,
}

/// All nonvanishing cuts at stratum r. The character |-|^{k/2} becomes the
/// twist Xi^{-k/2}, so the cell is i = (-k - (r-s-t+1)) / 2.
pub fn shriek_cuts(s: u32, t: u32, r: u32, pi: &CuspidalLabel) -> Vec<CellCut> {
    let Ok(lad) = speh_st_ladder(pi, s, t) else {
        return Vec::new();
    };
    let left = r as u64 * pi.g() as u64;
    let Ok(cuts) = ladder_cuts(&lad, left) else {
        return Vec::new();
    };
    let shift = r as i64 - s as i64 - t as i64 + 1;
    cuts.into_iter()
        .filter_map(|c| {
            let ch = r_tau_sign(&c.a1, pi).ok()?;
            let twice_i = -ch.k - shift;
            debug_assert!(twice_i % 2 == 0);
            Some(CellCut {
                r,
                i: (twice_i / 2) as i32,
                sign: ch.sign,
                psi: ch,
                a2: c.a2,
            })
        })
        .collect()
}

/// S_pi(s,t)(r,i): the sum of the right factors a2 of the cuts in cell (r,i).
pub fn s_sti(s: u32, t: u32, r: u32, i: i32, pi: &CuspidalLabel) -> GrothElement {
    if n_coeff(s, t, r, i) == 0 {
        return GrothElement::zero();
    }
    s_sti_ungated(s, t, r, i, pi)
}

pub fn s_sti_ungated(s: u32, t: u32, r: u32, i: i32, pi: &CuspidalLabel) -> GrothElement {
    let mut out = GrothElement::zero();
    for c in shriek_cuts(s, t, r, pi).into_iter().filter(|c| c.i == i) {
        out.add_term(
            Term::new(IrreducibleLabel::from_multisegment(c.a2), HalfInt::ZERO),
            Coeff::one(),
        );
    }
    out
}

/// Speh_delta(pi) centered at 0, as a factor (the unit for delta = 0).
fn speh_factor(pi: &CuspidalLabel, delta: u32) -> IrreducibleLabel {
    match delta {
        0 => IrreducibleLabel::unit(),
        d => IrreducibleLabel::from_multisegment(speh_st_ladder(pi, d, 1).expect("delta > 0")),
    }
}

/// R_pi(s,t)(r,i) as a formal signed sum, before restriction to the m-diagram:
/// (-1)^i sum_{delta >= 0} (-1)^{delta + i_S} Speh_delta(pi) x S(s,t)(r+delta, i_S)
/// with i_S = (i + s + t - 1 - r) / 2.
pub fn r_sti_formal(s: u32, t: u32, r: u32, i: i32, pi: &CuspidalLabel) -> GrothElement {
    let mut out = GrothElement::zero();
    let twice = i as i64 + s as i64 + t as i64 - 1 - r as i64;
    if twice.rem_euclid(2) != 0 || r == 0 {
        return out;
    }
    let i_s = (twice / 2) as i32;
    for rr in r..s + t {
        let delta = rr - r;
        let sign = if (i as i64 + delta as i64 + i_s as i64).rem_euclid(2) == 0 {
            1
        } else {
            -1
        };
        let piece = s_sti(s, t, rr, i_s, pi);
        if piece.is_zero() {
            continue;
        }
        let sp = GrothElement::of_label(speh_factor(pi, delta));
        out.accumulate(&sp.groth_product(&piece).scale_int(sign));
    }
    out
}

/// R_pi(s,t)(r,i), zero off the m-diagram.
pub fn r_sti(s: u32, t: u32, r: u32, i: i32, pi: &CuspidalLabel) -> GrothElement {
    if m_coeff(s, t, r, i) == 0 {
        return GrothElement::zero();
    }
    r_sti_formal(s, t, r, i, pi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{make_speh_st, make_steinberg};
    use crate::segments::Twist;

    fn pi() -> CuspidalLabel {
        CuspidalLabel::unit("pi")
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(orientations(1).len(), 1);
        assert_eq!(orientations(2).len(), 2);
        assert_eq!(orientations(4).len(), 8);
    }

    #[test]
    fn orientation_multisegments() {
        let right = Orientation { t: 2, edges: vec![true] };
        let left = Orientation { t: 2, edges: vec![false] };
        assert_eq!(multisegment_of_orientation(&right, &pi()).to_string(), "{pi[-1/2,1/2]}");
        assert_eq!(
            multisegment_of_orientation(&left, &pi()).to_string(),
            "{pi[-1/2,-1/2], pi[1/2,1/2]}"
        );
        let one = Orientation { t: 1, edges: vec![] };
        assert_eq!(multisegment_of_orientation(&one, &pi()).to_string(), "{pi[0,0]}");
    }

    #[test]
    fn signs() {
        let st = multisegment_of_orientation(&Orientation { t: 3, edges: vec![true, true] }, &pi());
        assert_eq!(r_tau_sign(&st, &pi()).unwrap(), SignedCharacter { sign: 1, k: 0 });
        let sp = multisegment_of_orientation(&Orientation { t: 2, edges: vec![false] }, &pi());
        assert_eq!(r_tau_sign(&sp, &pi()).unwrap(), SignedCharacter { sign: -1, k: 0 });
        let shifted = st.twist(HalfInt::from_num(-3));
        assert_eq!(r_tau_sign(&shifted, &pi()).unwrap(), SignedCharacter { sign: 1, k: -3 });
        let gap = Multisegment::new(vec![
            Segment::new(pi(), HalfInt::ZERO, 1).unwrap(),
            Segment::new(pi(), HalfInt::int(2), 1).unwrap(),
        ]);
        assert!(r_tau_sign(&gap, &pi()).is_err());
        assert!(r_tau_sign(&st, &CuspidalLabel::unit("other")).is_err());
    }

    #[test]
    fn red_examples() {
        let tau = Tau { cusp: pi(), r: 1 };
        let st1 = GrothElement::of_label(make_steinberg(&pi(), 1).unwrap());
        let red = red_tau(&tau, &st1);
        assert_eq!(red.len(), 1);
        let (k, c) = red.iter().next().unwrap();
        assert!(k.label.is_unit() && k.psi == HalfInt::ZERO && c.as_int() == Some(1));
        let other = GrothElement::of_label(make_steinberg(&CuspidalLabel::unit("q"), 2).unwrap());
        assert!(red_tau(&tau, &other).is_zero());
    }

    #[test]
    fn leibniz_on_a_product() {
        let tau = Tau { cusp: pi(), r: 1 };
        let a = make_speh_st(&pi(), 2, 1).unwrap();
        let b = make_steinberg(&pi(), 2).unwrap().twist(HalfInt::int(3));
        let x = GrothElement::of_label(a.mul(&b));
        assert_eq!(red_tau(&tau, &x), red_leibniz(&tau, &x));
        assert_eq!(red_tau(&tau, &x).len(), 2);
    }

    #[test]
    fn endpoint_identity_small() {
        for (s, t) in [(1, 1), (2, 1), (1, 3), (2, 2), (3, 2)] {
            let v = s + t - 1;
            let sv = s_sti(s, t, v, 0, &pi());
            assert!(!sv.is_zero());
            assert_eq!(sv, r_sti(s, t, v, 0, &pi()));
        }
    }

    #[test]
    fn steinberg_cells() {
        for r in 1..=4 {
            assert!(!s_sti(1, 4, r, 0, &pi()).is_zero());
        }
        assert!(r_sti(1, 4, 3, 0, &pi()).is_zero());
        assert!(!r_sti(1, 4, 4, 0, &pi()).is_zero());
    }
}
