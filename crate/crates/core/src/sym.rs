//! Symmetric-function shadow: the ring Z[h_1, h_2, ...], with a segment of
//! length k sent to h_k and a ladder sent to its Jacobi-Trudi determinant.
//! Used as an independent oracle for sign and support questions.

use crate::halfint::HalfInt;
use crate::label::{Factor, GrothElement};
use crate::lin::Lin;
use crate::segments::Multisegment;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

/// Monomial in the h_k, as a sorted multiset of indices k >= 1.
pub type HMono = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym {
    terms: BTreeMap<HMono, i64>,
}

impl Sym {
    pub fn zero() -> Self {
        Sym::default()
    }

    pub fn one() -> Self {
        Sym::h(0)
    }

    pub fn constant(n: i64) -> Self {
        let mut s = Sym::zero();
        s.add_mono(Vec::new(), n);
        s
    }

    /// Complete homogeneous h_k; h_0 = 1 and h_k = 0 for k < 0.
    pub fn h(k: i64) -> Self {
        match k {
            k if k < 0 => Sym::zero(),
            0 => Sym::constant(1),
            k => {
                let mut s = Sym::zero();
                s.add_mono(vec![k as u32], 1);
                s
            }
        }
    }

    /// Elementary e_n through e_n = sum_{i=1..n} (-1)^{i-1} e_{n-i} h_i.
    pub fn e(n: u32) -> Self {
        let mut es = vec![Sym::one()];
        for m in 1..=n as usize {
            let mut acc = Sym::zero();
            for i in 1..=m {
                let term = &es[m - i] * &Sym::h(i as i64);
                acc = if i % 2 == 1 { acc + term } else { acc - term };
            }
            es.push(acc);
        }
        es.pop().unwrap()
    }

    fn add_mono(&mut self, m: HMono, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HMono, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn scale(&self, k: i64) -> Sym {
        let mut s = Sym::zero();
        for (m, c) in &self.terms {
            s.add_mono(m.clone(), c * k);
        }
        s
    }

    /// Specialization at n variables equal to 1: h_k -> C(n+k-1, k).
    pub fn eval_ones(&self, n: u32) -> i128 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.iter()
                    .fold(*c as i128, |acc, &k| acc * binom(n as i128 + k as i128 - 1, k as i128))
            })
            .sum()
    }

    /// det[h_{(b_j - a_i)/2 + 1}] for doubled starts `a` and ends `b`.
    pub fn jacobi_trudi(a: &[i64], b: &[i64]) -> Sym {
        assert_eq!(a.len(), b.len());
        let n = a.len();
        let entry = |i: usize, j: usize| -> Sym {
            let d = b[j] - a[i];
            if d.rem_euclid(2) != 0 {
                Sym::zero()
            } else {
                Sym::h(d / 2 + 1)
            }
        };
        let mut memo: HashMap<u32, Sym> = HashMap::new();
        det_rec(0, (1u32 << n) - 1, n, &entry, &mut memo)
    }

    pub fn of_multisegment(m: &Multisegment) -> Sym {
        if m.is_ladder() {
            let a: Vec<i64> = m.segments().iter().map(|s| s.start.num()).collect();
            let b: Vec<i64> = m.segments().iter().map(|s| s.end().num()).collect();
            Sym::jacobi_trudi(&a, &b)
        } else {
            m.segments()
                .iter()
                .fold(Sym::one(), |acc, s| &acc * &Sym::h(s.len as i64))
        }
    }
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn det_rec(
    row: usize,
    cols: u32,
    n: usize,
    entry: &dyn Fn(usize, usize) -> Sym,
    memo: &mut HashMap<u32, Sym>,
) -> Sym {
    if row == n {
        return Sym::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let mut acc = Sym::zero();
    let mut sign = 1;
    for j in 0..n {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = entry(row, j);
        if !e.is_zero() {
            let minor = det_rec(row + 1, cols & !(1 << j), n, entry, memo);
            acc = acc + (&e * &minor).scale(sign);
        }
        sign = -sign;
    }
    memo.insert(cols, acc.clone());
    acc
}

impl Add for Sym {
    type Output = Sym;
    fn add(mut self, o: Sym) -> Sym {
        for (m, c) in o.terms {
            self.add_mono(m, c);
        }
        self
    }
}

impl Sub for Sym {
    type Output = Sym;
    fn sub(self, o: Sym) -> Sym {
        self + o.scale(-1)
    }
}

impl Neg for Sym {
    type Output = Sym;
    fn neg(self) -> Sym {
        self.scale(-1)
    }
}

impl<'a> Mul<&'a Sym> for &'a Sym {
    type Output = Sym;
    fn mul(self, o: &Sym) -> Sym {
        let mut out = Sym::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.add_mono(m, c1 * c2);
            }
        }
        out
    }
}

/// Key of a shadowed Grothendieck term: the factors off the chosen line
/// (as text), the Xi-twist, and a monomial in the h_k.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShadowKey {
    pub rest: Vec<String>,
    pub xi: HalfInt,
    pub mono: HMono,
}

pub type Shadow = Lin<ShadowKey>;

/// Multiplicative shadow of a Grothendieck element along the line `line`.
pub fn shadow(x: &GrothElement, line: &str) -> Shadow {
    let mut out = Shadow::zero();
    for (term, c) in x.iter() {
        let mut sym = Sym::one();
        let mut rest = Vec::new();
        for f in term.label.factors() {
            match f {
                Factor::Seg(m) if f.line().map(|l| l.id()) == Some(line) => {
                    sym = &sym * &Sym::of_multisegment(m);
                }
                other => rest.push(other.to_string()),
            }
        }
        rest.sort();
        for (mono, k) in sym.terms() {
            out.add_term(
                ShadowKey {
                    rest: rest.clone(),
                    xi: term.xi,
                    mono: mono.clone(),
                },
                c.scale(k),
            );
        }
    }
    out
}

/// Multiply a shadow by a pure symmetric function and an Xi-shift.
pub fn shadow_mul(x: &Shadow, f: &Sym, xi_shift: HalfInt) -> Shadow {
    let mut out = Shadow::zero();
    for (k, c) in x.iter() {
        let base = Sym {
            terms: [(k.mono.clone(), 1)].into_iter().collect(),
        };
        for (m, n) in (&base * f).terms() {
            out.add_term(
                ShadowKey {
                    rest: k.rest.clone(),
                    xi: k.xi + xi_shift,
                    mono: m.clone(),
                },
                c.scale(n),
            );
        }
    }
    out
}

/// Collapse a shadow with integer coefficients to one symmetric function per Xi-twist.
pub fn by_twist(x: &Shadow) -> BTreeMap<HalfInt, Lin<(Vec<String>, HMono)>> {
    let mut out: BTreeMap<HalfInt, Lin<(Vec<String>, HMono)>> = BTreeMap::new();
    for (k, c) in x.iter() {
        out.entry(k.xi)
            .or_default()
            .add_term((k.rest.clone(), k.mono.clone()), c.clone());
    }
    out
}

/// Evaluate the h-part of an integer-coefficient shadow, one value per Xi-twist.
pub fn eval_by_twist(x: &Shadow, n: u32, atoms: &dyn Fn(&str) -> i64) -> BTreeMap<HalfInt, i128> {
    let mut out = BTreeMap::new();
    for (k, c) in x.iter() {
        let mono = Sym {
            terms: [(k.mono.clone(), 1)].into_iter().collect(),
        };
        *out.entry(k.xi).or_insert(0) += mono.eval_ones(n) * c.eval(atoms);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_h_orthogonality() {
        for n in 1..=7 {
            let mut acc = Sym::zero();
            for d in 0..=n {
                let t = &Sym::e(d) * &Sym::h((n - d) as i64);
                acc = if d % 2 == 0 { acc + t } else { acc - t };
            }
            assert!(acc.is_zero(), "n={n}");
        }
    }

    #[test]
    fn singletons_give_e() {
        for n in 1..=6i64 {
            let a: Vec<i64> = (0..n).map(|i| 2 * i).collect();
            assert_eq!(Sym::jacobi_trudi(&a, &a), Sym::e(n as u32));
        }
    }

    #[test]
    fn e_dimension() {
        // e_k at n ones is C(n, k)
        assert_eq!(Sym::e(3).eval_ones(5), 10);
        assert_eq!(Sym::h(2).eval_ones(3), 6);
    }
}
