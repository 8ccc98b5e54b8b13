//! JSON formats for the command-line front end.
//!
//! Labels travel as text (see [`IrreducibleLabel::parse`]), coefficients as
//! an integer or a product string such as `"3*m*#Ker1/d"`, twists as doubled
//! numerators.

use crate::cohomology::{
    CertificateRecord, CohomologyTable, CongruenceConstraint, ConstraintKind, ProfileEntry, SpectrumProfile,
};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::jl_red::{RedElement, RedKey};
use crate::label::{Factor, GrothElement, IrreducibleLabel, Term};
use crate::modl::{FieldData, SupercuspidalData};
use crate::segments::{CuspidalLabel, Cusps, Multisegment, Segment};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

fn coeff_value(c: &Coeff) -> Value {
    match c.as_int() {
        Some(n) => Value::from(n),
        None => Value::from(c.to_string()),
    }
}

fn parse_coeff_value(v: &Value) -> Result<Coeff> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Coeff::int)
            .ok_or_else(|| Error::parse(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s.parse(),
        _ => Err(Error::parse("coefficient must be an integer or a string")),
    }
}

/// Every cuspidal met in a label.
fn label_cusps(label: &IrreducibleLabel, out: &mut BTreeMap<String, CuspidalLabel>) {
    for f in label.factors() {
        if let Factor::Seg(m) = f {
            for s in m.segments() {
                out.insert(s.cusp.id().to_string(), s.cusp.clone());
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CuspRecord {
    id: String,
    #[serde(default = "one")]
    g: u32,
    #[serde(default = "one")]
    e_pi: u32,
}

fn one() -> u32 {
    1
}

fn cusp_records(map: BTreeMap<String, CuspidalLabel>) -> Vec<CuspRecord> {
    map.into_values()
        .map(|c| CuspRecord {
            id: c.id().to_string(),
            g: c.g(),
            e_pi: c.e_pi(),
        })
        .collect()
}

fn cusps_of(records: &[CuspRecord]) -> Result<Cusps> {
    let mut cusps = Cusps::new();
    for c in records {
        cusps.insert(CuspidalLabel::new(&c.id, c.g, c.e_pi)?);
    }
    Ok(cusps)
}

// ---- multisegments ----

/// `[[cusp_id, start_numerator, length], ...]`
pub fn multisegment_to_json(m: &Multisegment) -> String {
    let v: Vec<(String, i64, u32)> = m
        .segments()
        .iter()
        .map(|s| (s.cusp.id().to_string(), s.start.num(), s.len))
        .collect();
    serde_json::to_string(&v).expect("plain data")
}

pub fn parse_multisegment(text: &str, cusps: &Cusps) -> Result<Multisegment> {
    let v: Vec<(String, i64, u32)> = serde_json::from_str(text)?;
    let segs = v
        .into_iter()
        .map(|(id, a, len)| Segment::new(cusps.resolve(&id)?, HalfInt::from_num(a), len))
        .collect::<Result<Vec<_>>>()?;
    Ok(Multisegment::new(segs))
}

// ---- Grothendieck elements ----

#[derive(Serialize, Deserialize)]
struct TermRecord {
    label: String,
    #[serde(default)]
    xi_twist_numerator: i64,
    coeff: Value,
}

fn groth_records(x: &GrothElement) -> Vec<TermRecord> {
    let mut out = Vec::new();
    for (t, c) in x.iter() {
        for m in c.monomials() {
            out.push(TermRecord {
                label: t.label.to_string(),
                xi_twist_numerator: t.xi.num(),
                coeff: coeff_value(&m),
            });
        }
    }
    out
}

fn groth_of_records(records: &[TermRecord], cusps: &Cusps) -> Result<GrothElement> {
    let mut x = GrothElement::zero();
    for r in records {
        let label = IrreducibleLabel::parse(&r.label, cusps)?;
        x.add_term(
            Term::new(label, HalfInt::from_num(r.xi_twist_numerator)),
            parse_coeff_value(&r.coeff)?,
        );
    }
    Ok(x)
}

/// `{"cusps": [...], "terms": [{label, xi_twist_numerator, coeff}, ...]}`
pub fn groth_to_json(x: &GrothElement) -> String {
    let mut map = BTreeMap::new();
    for t in x.keys() {
        label_cusps(&t.label, &mut map);
    }
    serde_json::to_string_pretty(&GrothDoc {
        cusps: cusp_records(map),
        terms: groth_records(x),
    })
    .expect("plain data")
}

#[derive(Serialize, Deserialize)]
struct GrothDoc {
    #[serde(default)]
    cusps: Vec<CuspRecord>,
    terms: Vec<TermRecord>,
}

/// Accepts the document form or a bare list of term records; duplicate
/// terms are summed.
pub fn parse_groth(text: &str) -> Result<GrothElement> {
    let v: Value = serde_json::from_str(text)?;
    let doc: GrothDoc = if v.is_array() {
        GrothDoc {
            cusps: Vec::new(),
            terms: serde_json::from_value(v)?,
        }
    } else {
        serde_json::from_value(v)?
    };
    groth_of_records(&doc.terms, &cusps_of(&doc.cusps)?)
}

// ---- red elements ----

#[derive(Serialize, Deserialize)]
struct RedRecord {
    psi_numerator: i64,
    label: String,
    #[serde(default)]
    xi_twist_numerator: i64,
    coeff: Value,
}

#[derive(Serialize, Deserialize)]
struct RedDoc {
    #[serde(default)]
    cusps: Vec<CuspRecord>,
    terms: Vec<RedRecord>,
}

pub fn red_to_json(x: &RedElement) -> String {
    let mut map = BTreeMap::new();
    let mut terms = Vec::new();
    for (k, c) in x.iter() {
        label_cusps(&k.label, &mut map);
        for m in c.monomials() {
            terms.push(RedRecord {
                psi_numerator: k.psi.num(),
                label: k.label.to_string(),
                xi_twist_numerator: k.xi.num(),
                coeff: coeff_value(&m),
            });
        }
    }
    serde_json::to_string_pretty(&RedDoc {
        cusps: cusp_records(map),
        terms,
    })
    .expect("plain data")
}

pub fn parse_red(text: &str) -> Result<RedElement> {
    let doc: RedDoc = serde_json::from_str(text)?;
    let cusps = cusps_of(&doc.cusps)?;
    let mut x = RedElement::zero();
    for r in &doc.terms {
        x.add_term(
            RedKey {
                psi: HalfInt::from_num(r.psi_numerator),
                label: IrreducibleLabel::parse(&r.label, &cusps)?,
                xi: HalfInt::from_num(r.xi_twist_numerator),
            },
            parse_coeff_value(&r.coeff)?,
        );
    }
    Ok(x)
}

// ---- supercuspidal data ----

#[derive(Serialize, Deserialize)]
struct SupercuspidalRecord {
    id: String,
    g: u32,
    #[serde(default = "one")]
    e_pi: u32,
    q: u64,
    l: u64,
    epsilon: u64,
}

/// `{id, g, q, l, epsilon}`
pub fn supercuspidal_to_json(sc: &SupercuspidalData) -> String {
    serde_json::to_string(&SupercuspidalRecord {
        id: sc.label().id().to_string(),
        g: sc.label().g(),
        e_pi: sc.label().e_pi(),
        q: sc.field().q(),
        l: sc.field().l(),
        epsilon: sc.epsilon(),
    })
    .expect("plain data")
}

pub fn parse_supercuspidal(text: &str) -> Result<SupercuspidalData> {
    let r: SupercuspidalRecord = serde_json::from_str(text)?;
    SupercuspidalData::new(
        CuspidalLabel::new(&r.id, r.g, r.e_pi)?,
        FieldData::new(r.q, r.l)?,
        r.epsilon,
    )
}

// ---- spectrum profiles ----

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    #[serde(default)]
    r: Option<u32>,
    s: u32,
    t: u32,
    cusp: String,
    mult: Value,
    #[serde(default = "unit_text")]
    tail: String,
    #[serde(default)]
    markers: Vec<String>,
}

fn unit_text() -> String {
    "1".into()
}

#[derive(Serialize, Deserialize)]
struct ProfileDoc {
    #[serde(default)]
    cusps: Vec<CuspRecord>,
    entries: Vec<EntryRecord>,
}

pub fn profile_to_json(p: &SpectrumProfile) -> String {
    let mut map = BTreeMap::new();
    for e in &p.entries {
        map.insert(e.cusp.id().to_string(), e.cusp.clone());
        label_cusps(&e.tail, &mut map);
    }
    let entries = p
        .entries
        .iter()
        .map(|e| EntryRecord {
            r: Some(e.r),
            s: e.s,
            t: e.t,
            cusp: e.cusp.id().to_string(),
            mult: Value::from(e.mult.to_string()),
            tail: e.tail.to_string(),
            markers: e.markers.iter().cloned().collect(),
        })
        .collect();
    serde_json::to_string_pretty(&ProfileDoc {
        cusps: cusp_records(map),
        entries,
    })
    .expect("plain data")
}

/// The profile and the registry of cuspidals it declares.
pub fn parse_profile(text: &str) -> Result<(SpectrumProfile, Cusps)> {
    let doc: ProfileDoc = serde_json::from_str(text)?;
    let cusps = cusps_of(&doc.cusps)?;
    let mut entries = Vec::new();
    for e in &doc.entries {
        let mut entry = ProfileEntry::new(
            e.s,
            e.t,
            cusps.resolve(&e.cusp)?,
            parse_coeff_value(&e.mult)?,
            IrreducibleLabel::parse(&e.tail, &cusps)?,
        )?;
        if let Some(r) = e.r {
            entry.r = r;
        }
        for m in &e.markers {
            entry = entry.with_marker(m);
        }
        entries.push(entry);
    }
    Ok((SpectrumProfile::new(entries)?, cusps))
}

// ---- cohomology tables ----

#[derive(Serialize, Deserialize)]
struct DegreeRecord {
    degree: i32,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TableDoc {
    #[serde(default)]
    cusps: Vec<CuspRecord>,
    degrees: Vec<DegreeRecord>,
}

pub fn table_to_json(t: &CohomologyTable) -> String {
    let mut map = BTreeMap::new();
    for x in t.degrees.values() {
        for k in x.keys() {
            label_cusps(&k.label, &mut map);
        }
    }
    serde_json::to_string_pretty(&TableDoc {
        cusps: cusp_records(map),
        degrees: t
            .degrees
            .iter()
            .map(|(i, x)| DegreeRecord {
                degree: *i,
                terms: groth_records(x),
            })
            .collect(),
    })
    .expect("plain data")
}

pub fn parse_table(text: &str) -> Result<CohomologyTable> {
    let doc: TableDoc = serde_json::from_str(text)?;
    let cusps = cusps_of(&doc.cusps)?;
    let mut t = CohomologyTable::default();
    for d in &doc.degrees {
        t.add(d.degree, &groth_of_records(&d.terms, &cusps)?);
    }
    Ok(t)
}

// ---- balance output ----

pub fn constraint_value(c: &CongruenceConstraint) -> Value {
    serde_json::json!({
        "kind": match c.kind {
            ConstraintKind::Balance => "balance",
            ConstraintKind::Existence => "existence",
        },
        "class": c.class.label.to_string(),
        "xi_twist_numerator": c.class.xi.num(),
        "lhs": c.lhs.to_string(),
        "rhs": c.rhs.to_string(),
        "tautology": c.is_tautology(),
        "satisfied": c.is_satisfied(),
        "lhs_entries": c.lhs_entries,
        "rhs_entries": c.rhs_entries,
        "cells": c.cells,
    })
}

pub fn certificate_value(c: &CertificateRecord) -> Value {
    serde_json::json!({
        "class": c.class.label.to_string(),
        "xi_twist_numerator": c.class.xi.num(),
        "strength": if c.strong { "strong" } else { "weak" },
        "lhs_entries": c.lhs_entries,
        "rhs_entries": c.rhs_entries,
    })
}
