//! Mod-l invariants of cuspidal lines, cuspidal towers and reduction rules.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::label::{Factor, GrothElement, IrreducibleLabel, Term};
use crate::segments::{steinberg_segment, CuspidalLabel, Multisegment, Segment};
use std::collections::BTreeMap;

/// Mod-l Grothendieck elements share the shape of [`GrothElement`], over
/// mod-l cuspidal ids, with integer coefficients.
pub type ModlGrothElement = GrothElement;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime p with q = p^f, if any.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
    }
    (x == 1).then_some(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldData {
    q: u64,
    l: u64,
}

impl FieldData {
    pub fn new(q: u64, l: u64) -> Result<Self> {
        if prime_power_base(q).is_none() {
            return Err(Error::pre(format!("q = {q} is not a prime power")));
        }
        if !is_prime(l) {
            return Err(Error::pre(format!("l = {l} is not prime")));
        }
        if q.is_multiple_of(l) {
            return Err(Error::pre(format!("l = {l} divides q = {q}")));
        }
        Ok(FieldData { q, l })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn l(&self) -> u64 {
        self.l
    }
}

/// Multiplicative order of q modulo l.
pub fn e_l(field: &FieldData) -> u64 {
    order_mod(field.q, field.l)
}

fn order_mod(q: u64, l: u64) -> u64 {
    let base = q % l;
    let mut x = base;
    let mut k = 1;
    while x != 1 {
        x = x * base % l;
        k += 1;
    }
    k
}

/// e_l(q^f): the line size of a supercuspidal whose residue field degree is f.
pub fn e_l_power(field: &FieldData, f: u32) -> u64 {
    let mut x = 1u64;
    for _ in 0..f {
        x = x * (field.q % field.l) % field.l;
    }
    order_mod(x, field.l)
}

/// A mod-l supercuspidal of GL_{g_{-1}} with its line size epsilon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupercuspidalData {
    label: CuspidalLabel,
    field: FieldData,
    epsilon: u64,
}

impl SupercuspidalData {
    pub fn new(label: CuspidalLabel, field: FieldData, epsilon: u64) -> Result<Self> {
        let e = e_l(&field);
        if epsilon == 0 || !e.is_multiple_of(epsilon) {
            return Err(Error::pre(format!(
                "epsilon = {epsilon} does not divide e_l(q) = {e}"
            )));
        }
        Ok(SupercuspidalData {
            label,
            field,
            epsilon,
        })
    }

    pub fn label(&self) -> &CuspidalLabel {
        &self.label
    }

    pub fn field(&self) -> &FieldData {
        &self.field
    }

    pub fn epsilon(&self) -> u64 {
        self.epsilon
    }

    pub fn g(&self) -> u64 {
        self.label.g() as u64
    }

    pub fn l(&self) -> u64 {
        self.field.l
    }
}

/// m = epsilon when epsilon > 1, else l.
pub fn m_of(sc: &SupercuspidalData) -> u64 {
    if sc.epsilon > 1 {
        sc.epsilon
    } else {
        sc.field.l
    }
}

/// Whether St_s of the supercuspidal is cuspidal: s in {1, m, ml, ml^2, ...}.
pub fn is_cuspidal_st(sc: &SupercuspidalData, s: u64) -> bool {
    if s == 1 {
        return true;
    }
    let m = m_of(sc);
    if !s.is_multiple_of(m) {
        return false;
    }
    let mut x = s / m;
    while x.is_multiple_of(sc.field.l) {
        x /= sc.field.l;
    }
    x == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerLevel {
    pub base: SupercuspidalData,
    pub u: i32,
}

impl TowerLevel {
    pub fn new(base: SupercuspidalData, u: i32) -> Result<Self> {
        if u < -1 {
            return Err(Error::pre("tower level u must be >= -1"));
        }
        Ok(TowerLevel { base, u })
    }
}

/// g_u = g_{-1} for u = -1, else g_{-1} m l^u.
pub fn tower_rank(t: &TowerLevel) -> u64 {
    rank_at(&t.base, t.u)
}

pub(crate) fn rank_at(sc: &SupercuspidalData, u: i32) -> u64 {
    if u < 0 {
        sc.g()
    } else {
        sc.g() * m_of(sc) * sc.l().pow(u as u32)
    }
}

/// Banal case: e_l(q) > d.
pub fn is_banal(field: &FieldData, d: u64) -> bool {
    e_l(field) > d
}

fn relabel(m: &Multisegment, target: &CuspidalLabel) -> Multisegment {
    Multisegment::new(
        m.segments()
            .iter()
            .map(|s| Segment {
                cusp: target.clone(),
                start: s.start,
                len: s.len,
            })
            .collect(),
    )
}

fn single_multisegment(label: &IrreducibleLabel) -> Result<&Multisegment> {
    match label.factors() {
        [Factor::Seg(m)] => Ok(m),
        _ => Err(Error::pre(format!("{label} is not a single multisegment"))),
    }
}

/// Reduction of Speh_s(pi): the single irreducible Speh_s(r_l(pi)).
pub fn rl_speh(label: &IrreducibleLabel, target: &CuspidalLabel) -> Result<ModlGrothElement> {
    let m = single_multisegment(label)?;
    if !(m.is_rectangle() && m.segments().iter().all(|s| s.len == 1)) {
        return Err(Error::pre(format!("{label} is not a Speh of a cuspidal")));
    }
    Ok(GrothElement::of_label(IrreducibleLabel::from_multisegment(
        relabel(m, target),
    )))
}

/// Reduction of St_s(pi): the non-degenerate constituent St_s(r_l(pi)) with
/// multiplicity one, plus an opaque remainder for s > 1.
pub fn rl_steinberg(label: &IrreducibleLabel, target: &CuspidalLabel) -> Result<ModlGrothElement> {
    let m = single_multisegment(label)?;
    let [seg] = m.segments() else {
        return Err(Error::pre(format!("{label} is not a Steinberg")));
    };
    let main = IrreducibleLabel::from_multisegment(Multisegment::new(vec![Segment {
        cusp: target.clone(),
        start: seg.start,
        len: seg.len,
    }]));
    let mut out = GrothElement::of_label(main);
    if seg.len > 1 {
        let rest = Factor::opaque(&format!("rest(St_{}({}))", seg.len, target.id()))?;
        out.add_term(
            Term::new(IrreducibleLabel::new(vec![rest]), HalfInt::ZERO),
            Coeff::one(),
        );
    }
    Ok(out)
}

/// Reduction of the D^x-representation: iota{-(m-1)/2} + ... + iota{(m-1)/2}.
pub fn rl_division_rep(m_tau: u32, iota: &str) -> Result<ModlGrothElement> {
    if m_tau == 0 {
        return Err(Error::pre("m_tau must be positive"));
    }
    let base = Factor::opaque(iota)?;
    let mut out = GrothElement::zero();
    for j in 0..m_tau as i64 {
        let k = HalfInt::from_num(-(m_tau as i64 - 1) + 2 * j);
        let f = match &base {
            Factor::Opaque { name, .. } => Factor::Opaque {
                name: name.clone(),
                twist: k,
            },
            Factor::Seg(_) => unreachable!(),
        };
        out.add_term(Term::new(IrreducibleLabel::new(vec![f]), HalfInt::ZERO), Coeff::one());
    }
    Ok(out)
}

/// l^{u'-u} for u >= 0, m l^{u'} for u = -1.
pub fn chgt_cuspi_factor(u: i32, u_prime: i32, sc: &SupercuspidalData) -> Result<u64> {
    chgt_factor(u, u_prime, m_of(sc), sc.l())
}

/// [`chgt_cuspi_factor`] from the raw pair (m, l).
pub fn chgt_factor(u: i32, u_prime: i32, m: u64, l: u64) -> Result<u64> {
    if u < -1 || u_prime < u {
        return Err(Error::pre("need -1 <= u <= u'"));
    }
    if u >= 0 {
        Ok(l.pow((u_prime - u) as u32))
    } else if u_prime < 0 {
        Ok(1)
    } else {
        Ok(m * l.pow(u_prime as u32))
    }
}

/// All (r, r') with r g_u = r' g_{u'} <= d.
pub fn matched_strata_ranks(g_u: u64, g_u2: u64, d: u64) -> Vec<(u64, u64)> {
    let lcm = g_u / gcd(g_u, g_u2) * g_u2;
    (1..)
        .map(|k| k * lcm)
        .take_while(|&n| n <= d)
        .map(|n| (n / g_u, n / g_u2))
        .collect()
}

pub fn matched_strata(u: i32, u_prime: i32, d: u64, sc: &SupercuspidalData) -> Vec<(u64, u64)> {
    matched_strata_ranks(rank_at(sc, u), rank_at(sc, u_prime), d)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Collapse of labels to mod-l classes: cuspidal ids are mapped through
/// `classes` (ids absent from the map stand for themselves) and segment
/// starts are reduced modulo the line size epsilon.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModlCollapse {
    pub classes: BTreeMap<String, CuspidalLabel>,
    pub epsilon: u64,
}

impl ModlCollapse {
    pub fn new(epsilon: u64) -> Self {
        ModlCollapse {
            classes: BTreeMap::new(),
            epsilon,
        }
    }

    pub fn lift(mut self, id: &str, class: CuspidalLabel) -> Self {
        self.classes.insert(id.to_string(), class);
        self
    }

    fn reduce(&self, x: HalfInt) -> HalfInt {
        if self.epsilon == 0 {
            return x;
        }
        let p = 2 * self.epsilon as i64;
        HalfInt::from_num(x.num().rem_euclid(p))
    }

    pub fn collapse_label(&self, label: &IrreducibleLabel) -> IrreducibleLabel {
        IrreducibleLabel::new(
            label
                .factors()
                .iter()
                .map(|f| match f {
                    Factor::Seg(m) => Factor::Seg(Multisegment::new(
                        m.segments()
                            .iter()
                            .map(|s| Segment {
                                cusp: self
                                    .classes
                                    .get(s.cusp.id())
                                    .cloned()
                                    .unwrap_or_else(|| s.cusp.clone()),
                                start: self.reduce(s.start),
                                len: s.len,
                            })
                            .collect(),
                    )),
                    Factor::Opaque { .. } => f.clone(),
                })
                .collect(),
        )
    }

    pub fn collapse(&self, x: &GrothElement) -> ModlGrothElement {
        x.map_keys(|t| Term::new(self.collapse_label(&t.label), t.xi))
    }
}

/// St_s(pi) as a label, for the reduction helpers.
pub fn steinberg_label(pi: &CuspidalLabel, s: u32) -> Result<IrreducibleLabel> {
    Ok(IrreducibleLabel::from_multisegment(Multisegment::new(vec![
        steinberg_segment(pi, s)?,
    ])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::make_speh_st;

    fn sc(g: u32, q: u64, l: u64, eps: u64) -> SupercuspidalData {
        let lab = CuspidalLabel::new("rho", g, 1).unwrap();
        SupercuspidalData::new(lab, FieldData::new(q, l).unwrap(), eps).unwrap()
    }

    #[test]
    fn e_l_examples() {
        assert_eq!(e_l(&FieldData::new(2, 7).unwrap()), 3);
        assert_eq!(e_l(&FieldData::new(4, 3).unwrap()), 1);
        assert_eq!(e_l(&FieldData::new(3, 2).unwrap()), 1);
        assert!(FieldData::new(9, 3).is_err());
        assert!(FieldData::new(6, 5).is_err());
    }

    #[test]
    fn m_and_cuspidality() {
        let a = sc(1, 2, 7, 3);
        assert_eq!(m_of(&a), 3);
        assert!(is_cuspidal_st(&a, 21));
        assert!(!is_cuspidal_st(&a, 6));
        assert!(is_cuspidal_st(&a, 1));
        assert_eq!(m_of(&sc(1, 4, 3, 1)), 3);
        assert_eq!(m_of(&sc(1, 3, 2, 1)), 2);
        let lab = CuspidalLabel::unit("rho");
        assert!(SupercuspidalData::new(lab, FieldData::new(2, 7).unwrap(), 2).is_err());
    }

    #[test]
    fn towers() {
        let a = sc(1, 2, 7, 3);
        assert_eq!(tower_rank(&TowerLevel::new(a.clone(), 0).unwrap()), 3);
        assert_eq!(tower_rank(&TowerLevel::new(a, -1).unwrap()), 1);
        // g = 2, m = 2, l = 3
        let b = sc(2, 2, 3, 2);
        assert_eq!(tower_rank(&TowerLevel::new(b, 2).unwrap()), 36);
    }

    #[test]
    fn chgt_examples() {
        let five = sc(1, 2, 5, 1);
        assert_eq!(chgt_cuspi_factor(0, 2, &five).unwrap(), 25);
        assert_eq!(chgt_cuspi_factor(1, 1, &five).unwrap(), 1);
        assert_eq!(chgt_factor(-1, 1, 3, 5).unwrap(), 15);
        let m3 = sc(1, 2, 7, 3);
        assert_eq!(chgt_cuspi_factor(-1, 1, &m3).unwrap(), 21);
    }

    #[test]
    fn matched_examples() {
        assert_eq!(matched_strata_ranks(3, 21, 42), vec![(7, 1), (14, 2)]);
        assert_eq!(matched_strata_ranks(2, 2, 5), vec![(1, 1), (2, 2)]);
        assert!(matched_strata_ranks(2, 6, 5).is_empty());
    }

    #[test]
    fn division_rep() {
        let x = rl_division_rep(2, "iota").unwrap();
        let names: Vec<String> = x.keys().map(|t| t.label.to_string()).collect();
        assert_eq!(names, vec!["iota{-1/2}", "iota{1/2}"]);
        assert_eq!(rl_division_rep(1, "iota").unwrap().len(), 1);
    }

    #[test]
    fn speh_reduces_irreducibly() {
        let pi = CuspidalLabel::unit("pi");
        let rho = CuspidalLabel::unit("rho");
        let r = rl_speh(&make_speh_st(&pi, 3, 1).unwrap(), &rho).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.keys().next().unwrap().label.to_string(), "{rho[-1,-1], rho[0,0], rho[1,1]}");
        assert!(rl_speh(&make_speh_st(&pi, 2, 2).unwrap(), &rho).is_err());
    }
}
