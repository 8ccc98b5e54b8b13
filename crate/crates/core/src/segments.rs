//! Zelevinsky segments, multisegments, ladders and their Jacquet cuts.

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

/// An unramified twist action of (1/2)Z.
pub trait Twist {
    fn twist(&self, n: HalfInt) -> Self;
}

/// A cuspidal representation of GL_g, identified up to nothing but its id.
#[derive(Clone, Debug)]
pub struct CuspidalLabel {
    id: String,
    g: u32,
    e_pi: u32,
}

impl CuspidalLabel {
    pub fn new(id: &str, g: u32, e_pi: u32) -> Result<Self> {
        if g == 0 || e_pi == 0 {
            return Err(Error::pre("cuspidal rank g and e_pi must be positive"));
        }
        if !valid_id(id) {
            return Err(Error::parse(format!("bad cuspidal id {id:?}")));
        }
        Ok(CuspidalLabel {
            id: id.to_string(),
            g,
            e_pi,
        })
    }

    /// Rank-one label with e_pi = 1.
    pub fn unit(id: &str) -> Self {
        CuspidalLabel::new(id, 1, 1).expect("valid id")
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn e_pi(&self) -> u32 {
        self.e_pi
    }
}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && id
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-' | '#' | '?'))
}

impl PartialEq for CuspidalLabel {
    fn eq(&self, o: &Self) -> bool {
        self.id == o.id
    }
}

impl Eq for CuspidalLabel {}

impl PartialOrd for CuspidalLabel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for CuspidalLabel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.id.cmp(&o.id)
    }
}

impl Hash for CuspidalLabel {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.id.hash(h)
    }
}

/// Registry resolving cuspidal ids met in text formats to their attributes.
/// Unknown ids resolve to g = 1, e_pi = 1.
#[derive(Clone, Debug, Default)]
pub struct Cusps {
    known: BTreeMap<String, CuspidalLabel>,
}

impl Cusps {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, c: CuspidalLabel) -> Self {
        self.insert(c);
        self
    }

    pub fn insert(&mut self, c: CuspidalLabel) {
        self.known.insert(c.id.clone(), c);
    }

    pub fn resolve(&self, id: &str) -> Result<CuspidalLabel> {
        match self.known.get(id) {
            Some(c) => Ok(c.clone()),
            None => CuspidalLabel::new(id, 1, 1),
        }
    }
}

/// The segment {pi{start}, pi{start+1}, ..., pi{start+len-1}}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub cusp: CuspidalLabel,
    pub start: HalfInt,
    pub len: u32,
}

impl Segment {
    pub fn new(cusp: CuspidalLabel, start: HalfInt, len: u32) -> Result<Self> {
        if len == 0 {
            return Err(Error::pre("segment length must be positive"));
        }
        Ok(Segment { cusp, start, len })
    }

    pub fn end(&self) -> HalfInt {
        self.start + HalfInt::int(self.len as i64 - 1)
    }

    pub fn rank(&self) -> u64 {
        self.len as u64 * self.cusp.g as u64
    }

    /// Twists pi{start}, ..., pi{end} as numerators.
    pub fn points(&self) -> impl Iterator<Item = HalfInt> + '_ {
        (0..self.len as i64).map(move |k| self.start + HalfInt::int(k))
    }

    /// Linked in Zelevinsky's sense: the union is a segment and neither contains the other.
    pub fn linked(&self, o: &Segment) -> bool {
        if self.cusp != o.cusp || (self.start - o.start).num() % 2 != 0 {
            return false;
        }
        let (a, b) = if self.start <= o.start { (self, o) } else { (o, self) };
        a.start < b.start && a.end() < b.end() && b.start <= a.end() + HalfInt::ONE
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        (&self.cusp.id, self.start, self.len).cmp(&(&o.cusp.id, o.start, o.len))
    }
}

impl Twist for Segment {
    fn twist(&self, n: HalfInt) -> Self {
        Segment {
            start: self.start + n,
            ..self.clone()
        }
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.cusp.id, self.start, self.end())
    }
}

/// A multiset of segments, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn new(mut segs: Vec<Segment>) -> Self {
        segs.sort();
        Multisegment { segs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn rank(&self) -> u64 {
        self.segs.iter().map(Segment::rank).sum()
    }

    pub fn on_single_line(&self) -> bool {
        self.segs.windows(2).all(|w| w[0].cusp == w[1].cusp)
    }

    /// Strictly increasing starts and ends on one cuspidal line.
    pub fn is_ladder(&self) -> bool {
        self.on_single_line()
            && self
                .segs
                .windows(2)
                .all(|w| w[0].start < w[1].start && w[0].end() < w[1].end())
    }

    /// A ladder of equal-length segments whose starts step by one.
    pub fn is_rectangle(&self) -> bool {
        self.is_ladder()
            && self.segs.windows(2).all(|w| {
                w[0].len == w[1].len && w[1].start - w[0].start == HalfInt::ONE
            })
    }

    /// All twists with multiplicity, on a single line.
    pub fn support(&self) -> Vec<HalfInt> {
        let mut v: Vec<HalfInt> = self.segs.iter().flat_map(|s| s.points()).collect();
        v.sort();
        v
    }

    pub fn union(&self, o: &Multisegment) -> Multisegment {
        let mut segs = self.segs.clone();
        segs.extend(o.segs.iter().cloned());
        Multisegment::new(segs)
    }
}

impl Twist for Multisegment {
    fn twist(&self, n: HalfInt) -> Self {
        Multisegment::new(self.segs.iter().map(|s| s.twist(n)).collect())
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, s) in self.segs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// The segment of St_t(pi), centered at 0.
pub fn steinberg_segment(pi: &CuspidalLabel, t: u32) -> Result<Segment> {
    if t == 0 {
        return Err(Error::pre("t must be positive"));
    }
    Segment::new(pi.clone(), HalfInt::from_num(-(t as i64 - 1)), t)
}

/// The ladder of Speh_s(St_t(pi)).
pub fn speh_st_ladder(pi: &CuspidalLabel, s: u32, t: u32) -> Result<Multisegment> {
    if s == 0 || t == 0 {
        return Err(Error::pre("s and t must be positive"));
    }
    let (s, t) = (s as i64, t as i64);
    let segs = (0..s)
        .map(|j| Segment {
            cusp: pi.clone(),
            start: HalfInt::from_num((1 - s) + 2 * j - (t - 1)),
            len: t as u32,
        })
        .collect();
    Ok(Multisegment::new(segs))
}

/// One Jacquet cut: `a1` collects the suffix pieces, `k[j]` is the piece length
/// taken from the j-th segment (segments in increasing start order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub a1: Multisegment,
    pub a2: Multisegment,
    pub k: Vec<u32>,
}

/// Jacquet cuts of a ladder with left factor of rank `left_rank`.
///
/// The j-th segment [b_j, e_j] is cut at c_j = e_j - k_j; the cut points must
/// strictly increase with j.
pub fn ladder_cuts(lad: &Multisegment, left_rank: u64) -> Result<Vec<Cut>> {
    if !lad.is_ladder() {
        return Err(Error::pre("ladder_cuts needs a ladder"));
    }
    let segs = lad.segments();
    if segs.is_empty() {
        return if left_rank == 0 {
            Ok(vec![Cut {
                a1: Multisegment::empty(),
                a2: Multisegment::empty(),
                k: vec![],
            }])
        } else {
            Err(Error::pre("left rank exceeds total rank"))
        };
    }
    let g = segs[0].cusp.g as u64;
    if !left_rank.is_multiple_of(g) {
        return Err(Error::pre(format!(
            "left rank {left_rank} is not a multiple of g = {g}"
        )));
    }
    if left_rank > lad.rank() {
        return Err(Error::pre("left rank exceeds total rank"));
    }
    let mut out = Vec::new();
    let mut k = Vec::with_capacity(segs.len());
    cut_rec(segs, (left_rank / g) as u32, None, &mut k, &mut out);
    Ok(out)
}

fn cut_rec(
    segs: &[Segment],
    remaining: u32,
    prev_cut: Option<HalfInt>,
    k: &mut Vec<u32>,
    out: &mut Vec<Cut>,
) {
    let j = k.len();
    if j == segs.len() {
        if remaining == 0 {
            out.push(assemble(segs, k));
        }
        return;
    }
    let cap: u32 = segs[j..].iter().map(|s| s.len).sum();
    if cap < remaining {
        return;
    }
    let seg = &segs[j];
    for kj in 0..=seg.len.min(remaining) {
        let c = seg.end() - HalfInt::int(kj as i64);
        if prev_cut.is_some_and(|p| c <= p) {
            continue;
        }
        k.push(kj);
        cut_rec(segs, remaining - kj, Some(c), k, out);
        k.pop();
    }
}

fn assemble(segs: &[Segment], k: &[u32]) -> Cut {
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    for (s, &kj) in segs.iter().zip(k) {
        if kj > 0 {
            a1.push(Segment {
                cusp: s.cusp.clone(),
                start: s.end() - HalfInt::int(kj as i64 - 1),
                len: kj,
            });
        }
        if kj < s.len {
            a2.push(Segment {
                cusp: s.cusp.clone(),
                start: s.start,
                len: s.len - kj,
            });
        }
    }
    Cut {
        a1: Multisegment::new(a1),
        a2: Multisegment::new(a2),
        k: k.to_vec(),
    }
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::pre("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }
}

/// Dominance order: every partial sum of `p` is at most that of `q`.
pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<bool> {
    if p.size() != q.size() {
        return Err(Error::pre("dominance needs partitions of the same size"));
    }
    let n = p.parts.len().max(q.parts.len());
    let (mut sp, mut sq) = (0u64, 0u64);
    for k in 0..n {
        sp += p.parts.get(k).copied().unwrap_or(0) as u64;
        sq += q.parts.get(k).copied().unwrap_or(0) as u64;
        if sp > sq {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi() -> CuspidalLabel {
        CuspidalLabel::unit("pi")
    }

    fn seg(start: i64, len: u32) -> Segment {
        Segment::new(pi(), HalfInt::from_num(start), len).unwrap()
    }

    #[test]
    fn speh_ladders() {
        let l = speh_st_ladder(&pi(), 2, 2).unwrap();
        assert_eq!(l.to_string(), "{pi[-1,0], pi[0,1]}");
        assert!(l.is_ladder() && l.is_rectangle());
        let l = speh_st_ladder(&pi(), 2, 1).unwrap();
        assert_eq!(l.to_string(), "{pi[-1/2,-1/2], pi[1/2,1/2]}");
    }

    #[test]
    fn st2_cut() {
        let st2 = Multisegment::new(vec![steinberg_segment(&pi(), 2).unwrap()]);
        let cuts = ladder_cuts(&st2, 1).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].a1.to_string(), "{pi[1/2,1/2]}");
        assert_eq!(cuts[0].a2.to_string(), "{pi[-1/2,-1/2]}");
    }

    #[test]
    fn speh2_cut_takes_lower_singleton() {
        let l = speh_st_ladder(&pi(), 2, 1).unwrap();
        let cuts = ladder_cuts(&l, 1).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].k, vec![1, 0]);
        assert_eq!(cuts[0].a1.to_string(), "{pi[-1/2,-1/2]}");
        assert_eq!(cuts[0].a2.to_string(), "{pi[1/2,1/2]}");
    }

    #[test]
    fn speh2_st2_two_cuts() {
        let l = speh_st_ladder(&pi(), 2, 2).unwrap();
        let ks: Vec<_> = ladder_cuts(&l, 2).unwrap().into_iter().map(|c| c.k).collect();
        assert_eq!(ks, vec![vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn cut_errors() {
        let c = CuspidalLabel::new("rho", 2, 1).unwrap();
        let l = speh_st_ladder(&c, 2, 2).unwrap();
        assert!(ladder_cuts(&l, 3).is_err());
        assert!(ladder_cuts(&l, 10).is_err());
        let not_ladder = Multisegment::new(vec![seg(0, 3), seg(2, 1)]);
        assert!(ladder_cuts(&not_ladder, 1).is_err());
    }

    #[test]
    fn linked_segments() {
        assert!(seg(0, 1).linked(&seg(2, 1)));
        assert!(!seg(0, 1).linked(&seg(4, 1)));
        assert!(!seg(0, 3).linked(&seg(2, 1)));
        assert!(seg(-2, 2).linked(&seg(0, 2)));
    }

    #[test]
    fn dominance_examples() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        assert!(dominance_leq(&p(vec![1, 1, 1]), &p(vec![3])).unwrap());
        assert!(dominance_leq(&p(vec![2, 2]), &p(vec![3, 1])).unwrap());
        assert!(!dominance_leq(&p(vec![3, 1]), &p(vec![2, 2])).unwrap());
        assert!(dominance_leq(&p(vec![3]), &p(vec![2])).is_err());
    }
}
