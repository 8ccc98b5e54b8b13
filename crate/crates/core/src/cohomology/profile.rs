use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::label::IrreducibleLabel;
use crate::segments::CuspidalLabel;
use std::collections::BTreeSet;

/// One family of automorphic representations with local component
/// Speh_s(St_t(pi')) x tail at the place v, weighted by a symbolic multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub cusp: CuspidalLabel,
    pub mult: Coeff,
    pub tail: IrreducibleLabel,
    pub markers: BTreeSet<String>,
}

impl ProfileEntry {
    pub fn new(s: u32, t: u32, cusp: CuspidalLabel, mult: Coeff, tail: IrreducibleLabel) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::pre("profile entries need s, t >= 1"));
        }
        Ok(ProfileEntry {
            r: s + t - 1,
            s,
            t,
            cusp,
            mult,
            tail,
            markers: BTreeSet::new(),
        })
    }

    pub fn with_marker(mut self, m: &str) -> Self {
        self.markers.insert(m.to_string());
        self
    }

    pub fn check(&self) -> Result<()> {
        if self.s == 0 || self.t == 0 || self.r != self.s + self.t - 1 {
            return Err(Error::pre(format!(
                "profile entry (r={}, s={}, t={}) violates r = s+t-1",
                self.r, self.s, self.t
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumProfile {
    pub entries: Vec<ProfileEntry>,
}

impl SpectrumProfile {
    pub fn new(entries: Vec<ProfileEntry>) -> Result<Self> {
        for e in &entries {
            e.check()?;
        }
        Ok(SpectrumProfile { entries })
    }

    /// Same profile with every entry on `from` moved to `to`.
    pub fn relabel_cusp(&self, from: &CuspidalLabel, to: &CuspidalLabel) -> SpectrumProfile {
        SpectrumProfile {
            entries: self
                .entries
                .iter()
                .map(|e| {
                    let mut e = e.clone();
                    if &e.cusp == from {
                        e.cusp = to.clone();
                    }
                    e
                })
                .collect(),
        }
    }
}
