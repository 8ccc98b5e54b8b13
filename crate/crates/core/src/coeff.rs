//! The symbolic coefficient ring: integer polynomials in opaque commuting atoms
//! such as `m(Pi)`, `d_xi(Pi)` or `#Ker1/d`.

use crate::error::{Error, Result};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Sorted list of (atom, exponent), exponents positive.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coeff {
    terms: BTreeMap<Monomial, i64>,
}

pub const KER1_ATOM: &str = "#Ker1/d";

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m: BTreeMap<String, u32> = a.iter().cloned().collect();
    for (x, e) in b {
        *m.entry(x.clone()).or_insert(0) += e;
    }
    m.into_iter().collect()
}

fn valid_atom(a: &str) -> bool {
    !a.is_empty()
        && !a.contains(['*', '^', '+', '"', '\n'])
        && a.trim() == a
        && !a.starts_with('-')
        && a.parse::<i64>().is_err()
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::int(1)
    }

    pub fn int(n: i64) -> Self {
        let mut terms = BTreeMap::new();
        if n != 0 {
            terms.insert(Vec::new(), n);
        }
        Coeff { terms }
    }

    /// A single opaque atom. Panics on names the text grammar cannot carry.
    pub fn atom(name: &str) -> Self {
        assert!(valid_atom(name), "invalid atom name {name:?}");
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], 1);
        Coeff { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_int(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut c = Coeff::zero();
        for (m, k) in it {
            c.add_mono(m, k);
        }
        c
    }

    fn add_mono(&mut self, m: Monomial, k: i64) {
        if k == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(k);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += k;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, k: i64) -> Coeff {
        if k == 0 {
            return Coeff::zero();
        }
        Coeff {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn atoms(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.iter().map(|(a, _)| a.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Substitute `to` for every occurrence of atom `from`.
    pub fn rename_atom(&self, from: &str, to: &str) -> Coeff {
        Coeff::from_terms(self.terms.iter().map(|(m, c)| {
            let m: BTreeMap<String, u32> = m
                .iter()
                .map(|(a, e)| (if a == from { to.to_string() } else { a.clone() }, *e))
                .fold(BTreeMap::new(), |mut acc, (a, e)| {
                    *acc.entry(a).or_insert(0) += e;
                    acc
                });
            (m.into_iter().collect(), *c)
        }))
    }

    /// Evaluate with every atom set to a positive integer.
    pub fn eval(&self, val: &dyn Fn(&str) -> i64) -> i128 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .fold(*c as i128, |acc, (a, e)| acc * (val(a) as i128).pow(*e))
            })
            .sum()
    }

    /// Split into single-monomial coefficients, each printable as a product string.
    pub fn monomials(&self) -> Vec<Coeff> {
        self.terms
            .iter()
            .map(|(m, c)| Coeff::from_terms([(m.clone(), *c)]))
            .collect()
    }

    fn fmt_mono(m: &Monomial, c: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if m.is_empty() || c.abs() != 1 {
            parts.push(c.abs().to_string());
        }
        for (a, e) in m {
            if *e == 1 {
                parts.push(a.clone());
            } else {
                parts.push(format!("{a}^{e}"));
            }
        }
        if c < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            Coeff::fmt_mono(m, *c, f)?;
        }
        Ok(())
    }
}

fn parse_product(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest.trim_start()),
        None => (false, s),
    };
    if body.is_empty() {
        return Err(Error::parse(format!("empty coefficient term in {s:?}")));
    }
    let mut c: i64 = if neg { -1 } else { 1 };
    let mut mono: Monomial = Vec::new();
    for tok in body.split('*') {
        let tok = tok.trim();
        if let Ok(n) = tok.parse::<i64>() {
            c = c
                .checked_mul(n)
                .ok_or_else(|| Error::parse("coefficient overflow"))?;
            continue;
        }
        let (name, exp) = match tok.rsplit_once('^') {
            Some((a, e)) => (
                a.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::parse(format!("bad exponent in {tok:?}")))?,
            ),
            None => (tok, 1),
        };
        if !valid_atom(name) {
            return Err(Error::parse(format!("bad atom {name:?}")));
        }
        if exp > 0 {
            mono = mono_mul(&mono, &vec![(name.to_string(), exp)]);
        }
    }
    Ok(Coeff::from_terms([(mono, c)]))
}

impl FromStr for Coeff {
    type Err = Error;

    /// Sums of products: `3*m(Pi)*d_xi(Pi) + -2*a^2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = Coeff::zero();
        for part in s.split('+') {
            out = out + parse_product(part)?;
        }
        Ok(out)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(mut self, o: Coeff) -> Coeff {
        for (m, c) in o.terms {
            self.add_mono(m, c);
        }
        self
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        self.clone() + o.clone()
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        self + (-o)
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        self.clone() - o.clone()
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_mono(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        &self * &o
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::int(n)
    }
}
