//! Irreducible labels as formal products of factors, and Grothendieck elements.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::lin::Lin;
use crate::segments::{
    speh_st_ladder, steinberg_segment, valid_id, CuspidalLabel, Cusps, Multisegment, Segment,
    Twist,
};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// A multisegment on one cuspidal line.
    Seg(Multisegment),
    /// An opaque representation, with its own twist.
    Opaque { name: String, twist: HalfInt },
}

impl Factor {
    pub fn opaque(name: &str) -> Result<Self> {
        if !valid_opaque(name) {
            return Err(Error::parse(format!("bad opaque factor name {name:?}")));
        }
        Ok(Factor::Opaque {
            name: name.to_string(),
            twist: HalfInt::ZERO,
        })
    }

    pub fn line(&self) -> Option<&CuspidalLabel> {
        match self {
            Factor::Seg(m) => m.segments().first().map(|s| &s.cusp),
            Factor::Opaque { .. } => None,
        }
    }
}

fn valid_opaque(name: &str) -> bool {
    !name.is_empty()
        && name != "1"
        && !name.starts_with("St_")
        && !name.starts_with("Speh_")
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || "_'.-#?()^/|:".contains(c))
}

impl Twist for Factor {
    fn twist(&self, n: HalfInt) -> Self {
        match self {
            Factor::Seg(m) => Factor::Seg(m.twist(n)),
            Factor::Opaque { name, twist } => Factor::Opaque {
                name: name.clone(),
                twist: *twist + n,
            },
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Seg(m) => write!(f, "{m}"),
            Factor::Opaque { name, twist } if *twist == HalfInt::ZERO => write!(f, "{name}"),
            Factor::Opaque { name, twist } => write!(f, "{name}{{{twist}}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    GenericProduct,
    SpehStProduct,
    Formal,
}

/// A formal product of factors; the empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreducibleLabel {
    factors: Vec<Factor>,
    kind: LabelKind,
}

impl Default for IrreducibleLabel {
    fn default() -> Self {
        IrreducibleLabel::unit()
    }
}

impl IrreducibleLabel {
    pub fn unit() -> Self {
        IrreducibleLabel {
            factors: Vec::new(),
            kind: LabelKind::SpehStProduct,
        }
    }

    pub fn new(factors: Vec<Factor>) -> Self {
        let mut factors: Vec<Factor> = factors
            .into_iter()
            .filter(|f| !matches!(f, Factor::Seg(m) if m.is_empty()))
            .collect();
        factors.sort();
        let kind = classify(&factors);
        IrreducibleLabel { factors, kind }
    }

    pub fn from_multisegment(m: Multisegment) -> Self {
        IrreducibleLabel::new(vec![Factor::Seg(m)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn kind(&self) -> LabelKind {
        self.kind
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, o: &IrreducibleLabel) -> IrreducibleLabel {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        IrreducibleLabel::new(f)
    }

    /// Rank in units of GL_1, counting opaque factors as rank 0.
    pub fn rank(&self) -> u64 {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Seg(m) => m.rank(),
                Factor::Opaque { .. } => 0,
            })
            .sum()
    }

    pub fn parse(text: &str, cusps: &Cusps) -> Result<Self> {
        let text = text.trim();
        if text == "1" {
            return Ok(IrreducibleLabel::unit());
        }
        if text.is_empty() {
            return Err(Error::parse("empty label"));
        }
        let mut factors = Vec::new();
        for part in text.split(" x ") {
            factors.push(parse_factor(part.trim(), cusps)?);
        }
        Ok(IrreducibleLabel::new(factors))
    }
}

fn classify(factors: &[Factor]) -> LabelKind {
    let segs: Vec<&Multisegment> = factors
        .iter()
        .filter_map(|f| match f {
            Factor::Seg(m) => Some(m),
            _ => None,
        })
        .collect();
    for (a, ma) in segs.iter().enumerate() {
        for mb in &segs[a + 1..] {
            let linked = ma
                .segments()
                .iter()
                .any(|x| mb.segments().iter().any(|y| x.linked(y)));
            if linked {
                return LabelKind::Formal;
            }
        }
    }
    let all_rect = factors.iter().all(|f| match f {
        Factor::Seg(m) => m.is_rectangle(),
        Factor::Opaque { .. } => false,
    });
    if all_rect {
        LabelKind::SpehStProduct
    } else {
        LabelKind::GenericProduct
    }
}

impl Twist for IrreducibleLabel {
    fn twist(&self, n: HalfInt) -> Self {
        IrreducibleLabel::new(self.factors.iter().map(|f| f.twist(n)).collect())
    }
}

impl fmt::Display for IrreducibleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, x) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn parse_segment(text: &str, cusps: &Cusps) -> Result<Segment> {
    let bad = || Error::parse(format!("bad segment {text:?}, expected id[a,b]"));
    let (id, rest) = text.split_once('[').ok_or_else(bad)?;
    let body = rest.strip_suffix(']').ok_or_else(bad)?;
    let (a, b) = body.split_once(',').ok_or_else(bad)?;
    let a: HalfInt = a.parse()?;
    let b: HalfInt = b.parse()?;
    if b < a || (b - a).num() % 2 != 0 {
        return Err(Error::parse(format!("segment {text:?} has bad endpoints")));
    }
    let len = (b - a).num() / 2 + 1;
    if len > u32::MAX as i64 {
        return Err(bad());
    }
    Segment::new(cusps.resolve(id.trim())?, a, len as u32)
}

fn parse_shorthand(text: &str, cusps: &Cusps) -> Result<Option<Multisegment>> {
    // St_t(id), Speh_s(id), Speh_s(St_t(id))
    fn split_call(t: &str, head: &str) -> Option<(u32, String)> {
        let rest = t.strip_prefix(head)?;
        let open = rest.find('(')?;
        let n = rest[..open].parse().ok()?;
        let inner = rest[open + 1..].strip_suffix(')')?;
        Some((n, inner.to_string()))
    }
    let (s, inner) = match split_call(text, "Speh_") {
        Some((s, inner)) => (s, inner),
        None => (1, text.to_string()),
    };
    let (t, id) = match split_call(&inner, "St_") {
        Some((t, id)) => (t, id),
        None if text.starts_with("Speh_") => (1, inner),
        None => return Ok(None),
    };
    if s == 0 || t == 0 || !valid_id(&id) {
        return Err(Error::parse(format!("bad shorthand {text:?}")));
    }
    let pi = cusps.resolve(&id)?;
    if s == 1 {
        return Ok(Some(Multisegment::new(vec![steinberg_segment(&pi, t)?])));
    }
    Ok(Some(speh_st_ladder(&pi, s, t)?))
}

fn parse_factor(text: &str, cusps: &Cusps) -> Result<Factor> {
    if let Some(body) = text.strip_prefix('{') {
        let body = body
            .strip_suffix('}')
            .ok_or_else(|| Error::parse(format!("unclosed multisegment {text:?}")))?;
        let mut segs = Vec::new();
        for part in body.split("],") {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let part = if part.ends_with(']') {
                part.to_string()
            } else {
                format!("{part}]")
            };
            segs.push(parse_segment(&part, cusps)?);
        }
        let m = Multisegment::new(segs);
        if !m.on_single_line() {
            return Err(Error::parse("a multisegment factor must lie on one cuspidal line"));
        }
        return Ok(Factor::Seg(m));
    }
    if text.starts_with("St_") || text.starts_with("Speh_") {
        return match parse_shorthand(text, cusps)? {
            Some(m) => Ok(Factor::Seg(m)),
            None => Err(Error::parse(format!("bad shorthand {text:?}"))),
        };
    }
    if let Some(open) = text.find('{') {
        let name = &text[..open];
        let tw = text[open + 1..]
            .strip_suffix('}')
            .ok_or_else(|| Error::parse(format!("bad twist in {text:?}")))?;
        let f = Factor::opaque(name)?;
        return Ok(f.twist(tw.parse()?));
    }
    Factor::opaque(text)
}

/// A Grothendieck-group basis element: a label with an external Xi-twist.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub label: IrreducibleLabel,
    pub xi: HalfInt,
}

impl Term {
    pub fn new(label: IrreducibleLabel, xi: HalfInt) -> Self {
        Term { label, xi }
    }
}

pub type GrothElement = Lin<Term>;

impl GrothElement {
    pub fn of_label(label: IrreducibleLabel) -> Self {
        Lin::single(Term::new(label, HalfInt::ZERO), Coeff::one())
    }

    pub fn one() -> Self {
        Self::of_label(IrreducibleLabel::unit())
    }

    /// Bilinear product: labels multiply, Xi-twists add.
    pub fn groth_product(&self, o: &GrothElement) -> GrothElement {
        self.product(o, |a, b| Term::new(a.label.mul(&b.label), a.xi + b.xi))
    }

    /// Shift of the external Xi-twist.
    pub fn xi_twist(&self, n: HalfInt) -> GrothElement {
        self.map_keys(|t| Term::new(t.label.clone(), t.xi + n))
    }
}

impl Twist for GrothElement {
    fn twist(&self, n: HalfInt) -> Self {
        self.map_keys(|t| Term::new(t.label.twist(n), t.xi))
    }
}

pub fn make_steinberg(pi: &CuspidalLabel, t: u32) -> Result<IrreducibleLabel> {
    Ok(IrreducibleLabel::from_multisegment(Multisegment::new(vec![
        steinberg_segment(pi, t)?,
    ])))
}

pub fn make_speh_st(pi: &CuspidalLabel, s: u32, t: u32) -> Result<IrreducibleLabel> {
    Ok(IrreducibleLabel::from_multisegment(speh_st_ladder(pi, s, t)?))
}
