//! Finite linear combinations with symbolic coefficients.

use crate::coeff::Coeff;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, Coeff>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Coeff) -> Self {
        let mut l = Self::zero();
        l.add_term(k, c);
        l
    }

    pub fn add_term(&mut self, k: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Coeff {
        self.terms.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Coeff)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Coeff::int(n))
    }

    /// Relabel keys, merging collisions.
    pub fn map_keys<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> Lin<J> {
        let mut out = Lin::zero();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Bilinear extension of a key product.
    pub fn product<J: Ord + Clone, O: Ord + Clone>(
        &self,
        other: &Lin<J>,
        mut f: impl FnMut(&K, &J) -> O,
    ) -> Lin<O> {
        let mut out = Lin::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in other.iter() {
                out.add_term(f(a, b), ca * cb);
            }
        }
        out
    }

    pub fn accumulate(&mut self, other: &Lin<K>) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coeff)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coeff)>>(it: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in it {
            l.add_term(k, c);
        }
        l
    }
}

impl<K: Ord + Clone> Add for Lin<K> {
    type Output = Lin<K>;
    fn add(mut self, o: Lin<K>) -> Lin<K> {
        self.accumulate(&o);
        self
    }
}

impl<K: Ord + Clone> Sub for Lin<K> {
    type Output = Lin<K>;
    fn sub(self, o: Lin<K>) -> Lin<K> {
        self + (-o)
    }
}

impl<K: Ord + Clone> Neg for Lin<K> {
    type Output = Lin<K>;
    fn neg(self) -> Lin<K> {
        self.scale_int(-1)
    }
}
