//! Invariant suites behind `ht-groth verify`, and the random generators
//! they use. Each suite is a pure function of (max, seed).

use crate::cohomology::{
    check_hij, check_se2, coh_intermediate, coh_shriek, conj2_predicate, euler_via_red, hij_reexpansion,
    inclusion_exclusion_ramified, rl_hi_balance, se2_reexpansion, torsion_detect, BalanceSetup, ProfileEntry,
    RamifiedAtoms, SpectrumProfile,
};
use crate::coeff::Coeff;
use crate::diagrams::{m_coeff, m_coeff_hull, n_support};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::jl_red::{r_sti, red_leibniz, red_tau, s_sti, Tau};
use crate::label::{make_speh_st, Factor, GrothElement, IrreducibleLabel};
use crate::modl::{
    e_l, is_cuspidal_st, is_prime, m_of, prime_power_base, rank_at, rl_division_rep, FieldData, ModlCollapse,
    SupercuspidalData,
};
use crate::segments::{CuspidalLabel, Multisegment, Segment, Twist};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const SUITES: &[&str] = &[
    "diagrams", "endpoint", "strata", "sign", "leibniz", "modl", "torsion", "balance", "ramified", "conj2",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn report(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            cases: self.cases,
            failures: self.failures,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn run_suite(name: &str, max: u32, seed: u64) -> Result<SuiteReport> {
    let max = max.max(1);
    let t = match name {
        "diagrams" => diagrams(max),
        "endpoint" => endpoint(max),
        "strata" => strata(max),
        "sign" => sign(max, seed),
        "leibniz" => leibniz(max, seed),
        "modl" => modl(max),
        "torsion" => torsion(max),
        "balance" => balance(max, seed),
        "ramified" => ramified(max),
        "conj2" => conj2(max, seed),
        other => return Err(Error::parse(format!("unknown suite {other:?}"))),
    };
    Ok(t.report(name))
}

/// `all` or a comma-separated list of suite names, run in parallel.
pub fn run_suites(selection: &str, max: u32, seed: u64) -> Result<Vec<SuiteReport>> {
    let names: Vec<&str> = if selection == "all" {
        SUITES.to_vec()
    } else {
        selection.split(',').map(str::trim).collect()
    };
    names.par_iter().map(|n| run_suite(n, max, seed)).collect()
}

fn line() -> CuspidalLabel {
    CuspidalLabel::unit("pi")
}

fn diagrams(max: u32) -> Tally {
    let mut t = Tally::new();
    for s in 1..=max {
        for tt in 1..=max {
            let b = (s + tt) as i32;
            for r in 0..=s + tt {
                for i in -b..=b {
                    t.check(m_coeff(s, tt, r, i) == m_coeff_hull(s, tt, r, i), || {
                        format!("m({s},{tt}) disagrees at ({r},{i})")
                    });
                }
            }
        }
        let horiz = n_support(1, s).points.iter().all(|&(_, i)| i == 0);
        t.check(horiz && n_support(1, s).points.len() == s as usize, || {
            format!("n(1,{s}) is not horizontal")
        });
        let anti = n_support(s, 1).points.iter().all(|&(r, i)| i == s as i32 - r as i32);
        t.check(anti && n_support(s, 1).points.len() == s as usize, || {
            format!("n({s},1) is not antidiagonal")
        });
    }
    t
}

fn endpoint(max: u32) -> Tally {
    let mut t = Tally::new();
    let pi = line();
    for s in 1..=max {
        for tt in 1..=max / s {
            let v = s + tt - 1;
            t.check(s_sti(s, tt, v, 0, &pi) == r_sti(s, tt, v, 0, &pi), || {
                format!("S != R at the vertex of ({s},{tt})")
            });
        }
    }
    t
}

fn strata(max: u32) -> Tally {
    let mut t = Tally::new();
    let pi = line();
    for s in 1..=max {
        for tt in 1..=s {
            t.check(check_se2(&pi, tt, s) && check_hij(&pi, tt, s), || {
                format!("round trip fails for t={tt}, s_max={s}")
            });
        }
    }
    t
}

/// A random profile on `pi` with s + t <= max_sum, symbolic multiplicities
/// drawn from a few atoms and tails drawn from a few opaque factors.
pub fn random_profile(rng: &mut impl Rng, pi: &CuspidalLabel, max_sum: u32, entries: usize) -> SpectrumProfile {
    let max_sum = max_sum.max(2);
    let out = (0..entries)
        .map(|_| {
            let s = rng.gen_range(1..max_sum);
            let t = rng.gen_range(1..=max_sum - s);
            let mult = Coeff::int(rng.gen_range(1..4)) * Coeff::atom(&format!("m{}", rng.gen_range(0..4)));
            let tail = match rng.gen_range(0..3) {
                0 => IrreducibleLabel::unit(),
                k => IrreducibleLabel::new(vec![Factor::opaque(&format!("tail{k}")).expect("valid name")]),
            };
            ProfileEntry::new(s, t, pi.clone(), mult, tail).expect("s, t >= 1")
        })
        .collect();
    SpectrumProfile::new(out).expect("entries are consistent")
}

fn sign(max: u32, seed: u64) -> Tally {
    let mut t = Tally::new();
    let pi = line();
    let results: Vec<(u64, u32, bool, bool, bool)> = (0..4 * max as u64)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut g = rng(seed.wrapping_add(k));
            let p = random_profile(&mut g, &pi, max, 3);
            let pi = pi.clone();
            (1..max).map(move |r| {
                let red = coh_shriek(&p, &pi, r).euler() == euler_via_red(&p, &pi, r);
                let (a, b) = hij_reexpansion(&p, &pi, r);
                let (c, d) = se2_reexpansion(&p, &pi, r);
                (k, r, red, a == b, c == d)
            })
        })
        .collect();
    for (k, r, red, hij, se2) in results {
        t.check(red && hij && se2, || {
            format!("sample {k}, stratum {r}: red {red}, hij {hij}, se2 {se2}")
        });
    }
    t
}

/// A random label with up to `max_factors` factors, mixing ladders and
/// segments on `pi` with segments on a second line and opaque factors.
pub fn random_product(rng: &mut impl Rng, pi: &CuspidalLabel, max_factors: usize) -> IrreducibleLabel {
    let other = CuspidalLabel::unit("sigma");
    let n = rng.gen_range(1..=max_factors.max(1));
    let factors = (0..n)
        .map(|_| match rng.gen_range(0..5) {
            0 | 1 => {
                let s = rng.gen_range(1..=2);
                let t = rng.gen_range(1..=3);
                let shift = HalfInt::from_num(rng.gen_range(-3..=3));
                let lab = make_speh_st(pi, s, t).expect("positive").twist(shift);
                lab.factors()[0].clone()
            }
            2 => {
                let segs = (0..rng.gen_range(1..=2))
                    .map(|_| {
                        Segment::new(pi.clone(), HalfInt::from_num(rng.gen_range(-4..=4)), rng.gen_range(1..=3))
                            .expect("positive length")
                    })
                    .collect();
                Factor::Seg(Multisegment::new(segs))
            }
            3 => Factor::Seg(Multisegment::new(vec![Segment::new(
                other.clone(),
                HalfInt::from_num(rng.gen_range(-2..=2)),
                rng.gen_range(1..=2),
            )
            .expect("positive length")])),
            _ => Factor::opaque("rest").expect("valid name"),
        })
        .collect();
    IrreducibleLabel::new(factors)
}

fn leibniz(max: u32, seed: u64) -> Tally {
    let mut t = Tally::new();
    let pi = line();
    let mut g = rng(seed);
    for k in 0..10 * max {
        let x = GrothElement::of_label(random_product(&mut g, &pi, 4));
        let tau = Tau {
            cusp: pi.clone(),
            r: g.gen_range(1..=3),
        };
        t.check(red_tau(&tau, &x) == red_leibniz(&tau, &x), || format!("sample {k}: {x:?}"));
    }
    t
}

fn modl(max: u32) -> Tally {
    let mut t = Tally::new();
    for m in 1..=2 * max {
        let x = rl_division_rep(m, "iota").expect("m > 0");
        let twists: Vec<HalfInt> = x
            .keys()
            .filter_map(|k| match k.label.factors() {
                [Factor::Opaque { twist, .. }] => Some(*twist),
                _ => None,
            })
            .collect();
        let mut neg: Vec<HalfInt> = twists.iter().map(|&k| -k).collect();
        neg.sort();
        let mut sorted = twists.clone();
        sorted.sort();
        t.check(twists.len() == m as usize && neg == sorted, || format!("r_l of m_tau={m}"));
    }
    for sc in sweep_supercuspidals(3, 3) {
        let m = m_of(&sc);
        let l = sc.l();
        let mut tower = vec![1u64];
        let mut x = m;
        while x <= 1000 {
            tower.push(x);
            x *= l;
        }
        for s in 1..=1000u64 {
            t.check(is_cuspidal_st(&sc, s) == tower.contains(&s), || {
                format!("is_cuspidal_st(m={m}, l={l}, s={s})")
            });
        }
    }
    t
}

/// One supercuspidal per (g, l, epsilon) with g <= max_g, l in {2,3,5,7}
/// and m <= max_m, on the smallest prime power q with epsilon | e_l(q).
pub fn sweep_supercuspidals(max_g: u32, max_m: u64) -> Vec<SupercuspidalData> {
    let mut out = Vec::new();
    for l in [2u64, 3, 5, 7] {
        for eps in 1..=max_m {
            let m = if eps > 1 { eps } else { l };
            if m > max_m {
                continue;
            }
            let q = (2u64..200).find(|&q| {
                q % l != 0
                    && prime_power_base(q).is_some()
                    && FieldData::new(q, l).map(|f| e_l(&f).is_multiple_of(eps)).unwrap_or(false)
            });
            let Some(q) = q else { continue };
            for g in 1..=max_g {
                let label = CuspidalLabel::new(&format!("rho{g}"), g, 1).expect("positive");
                let field = FieldData::new(q, l).expect("checked");
                if let Ok(sc) = SupercuspidalData::new(label, field, eps) {
                    out.push(sc);
                }
            }
        }
    }
    debug_assert!(out.iter().all(|sc| is_prime(sc.l())));
    out
}

fn torsion(max: u32) -> Tally {
    let mut t = Tally::new();
    let dmax = (4 * max as u64).min(60);
    for sc in sweep_supercuspidals(3, 3) {
        for u2 in 0..=2 {
            let gu = rank_at(&sc, u2);
            for d in 1..=dmax {
                for r2 in 1..=d / gu + 1 {
                    let Ok(c) = torsion_detect(d, &sc, u2, r2) else {
                        t.check(false, || format!("error at d={d} u'={u2} r'={r2}"));
                        continue;
                    };
                    let expect = r2 * gu + sc.g() <= d;
                    let pivot = c.r.is_none_or(|r| (c.s as i64 - r as i64) > c.s_prime as i64 - r2 as i64);
                    t.check(c.certified() == expect && (!c.certified() || pivot), || {
                        format!("d={d} g={} u'={u2} r'={r2}", sc.g())
                    });
                }
            }
        }
    }
    t
}

/// Supercuspidal of GL_1 with l = 3, e_l(q) = 2, so m = 2 and g_u = 2 * 3^u.
pub fn balance_supercuspidal() -> SupercuspidalData {
    SupercuspidalData::new(
        CuspidalLabel::new("rho", 1, 1).expect("positive"),
        FieldData::new(2, 3).expect("coprime"),
        2,
    )
    .expect("2 divides e_3(2)")
}

/// Lifts at levels u and u' collapsing onto the supercuspidal's line.
pub fn balance_setup(sc: &SupercuspidalData, u: i32, u2: i32) -> BalanceSetup {
    let a = CuspidalLabel::new("pi_a", rank_at(sc, u) as u32, 1).expect("positive");
    let b = if u == u2 {
        a.clone()
    } else {
        CuspidalLabel::new("pi_b", rank_at(sc, u2) as u32, 1).expect("positive")
    };
    BalanceSetup::new(sc.clone(), u, u2, a, b).expect("ranks match")
}

/// Profiles whose alternating sums balance at strata (r, r'): on each side
/// the entries (1, r) and (r, 1), which both contribute a bare tail in
/// degree 0, with the right-hand multiplicities scaled by the change factor.
pub fn matching_profiles(
    rng: &mut impl Rng,
    setup: &BalanceSetup,
    r: u32,
    r2: u32,
    chgt: i64,
) -> (SpectrumProfile, SpectrumProfile) {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for k in 0..rng.gen_range(1..=3) {
        let tail = IrreducibleLabel::new(vec![Factor::opaque(&format!("tail{k}")).expect("valid")]);
        for (j, (s, t)) in [(1, r), (r, 1)].into_iter().enumerate() {
            let atom = Coeff::atom(&format!("a{k}_{j}"));
            left.push(ProfileEntry::new(s, t, setup.pi_u.clone(), atom.clone(), tail.clone()).expect("positive"));
        }
        let total = (Coeff::atom(&format!("a{k}_0")) + Coeff::atom(&format!("a{k}_1"))).scale(chgt);
        let split = if r2 == 1 {
            vec![((1, 1), total)]
        } else {
            vec![
                ((1, r2), Coeff::atom(&format!("a{k}_0")).scale(chgt)),
                ((r2, 1), Coeff::atom(&format!("a{k}_1")).scale(chgt)),
            ]
        };
        for ((s, t), mult) in split {
            right.push(ProfileEntry::new(s, t, setup.pi_u2.clone(), mult, tail.clone()).expect("positive"));
        }
    }
    let mut order: Vec<usize> = (0..right.len()).collect();
    order.shuffle(rng);
    let right = order.into_iter().map(|i| right[i].clone()).collect();
    (
        SpectrumProfile::new(left).expect("consistent"),
        SpectrumProfile::new(right).expect("consistent"),
    )
}

/// Replace the multiplicity of one entry by a fresh atom.
pub fn mutate(p: &SpectrumProfile, idx: usize) -> SpectrumProfile {
    let mut q = p.clone();
    if let Some(e) = q.entries.get_mut(idx) {
        e.mult = Coeff::atom("mutant");
    }
    q
}

fn balance(max: u32, seed: u64) -> Tally {
    let mut t = Tally::new();
    let sc = balance_supercuspidal();
    let mut g = rng(seed);
    for k in 0..2 * max {
        let (u, u2) = [(-1, 0), (0, 1), (-1, 1), (0, 0)][k as usize % 4];
        let setup = balance_setup(&sc, u, u2);
        let (gu, gu2) = (rank_at(&sc, u), rank_at(&sc, u2));
        let r2 = 1u32;
        let r = (gu2 / gu) as u32;
        let chgt = crate::modl::chgt_cuspi_factor(u, u2, &sc).expect("u <= u'") as i64;
        let (pu, pu2) = matching_profiles(&mut g, &setup, r, r2, chgt);
        let cs = rl_hi_balance(&pu, &pu2, &setup, r, r2).expect("matched strata");
        t.check(!cs.is_empty() && cs.iter().all(|c| c.is_tautology()), || {
            format!("case {k}: non-tautology on matching profiles")
        });
        let side = g.gen_bool(0.5);
        let (a, b) = if side {
            (mutate(&pu, g.gen_range(0..pu.entries.len())), pu2.clone())
        } else {
            (pu.clone(), mutate(&pu2, g.gen_range(0..pu2.entries.len())))
        };
        let cs = rl_hi_balance(&a, &b, &setup, r, r2).expect("matched strata");
        t.check(cs.iter().any(|c| !c.is_satisfied()), || format!("case {k}: mutation undetected"));
    }
    t
}

fn ramified(max: u32) -> Tally {
    let mut t = Tally::new();
    let m = max.min(10);
    t.check(inclusion_exclusion_ramified(&RamifiedAtoms::default(), m), || {
        format!("identity fails below size {m}")
    });
    t
}

fn conj2(max: u32, seed: u64) -> Tally {
    let mut t = Tally::new();
    let mut g = rng(seed);
    for k in 0..2 * max {
        let gg = g.gen_range(1..=2);
        let a = CuspidalLabel::new("lift_a", gg, 1).expect("positive");
        let b = CuspidalLabel::new("lift_b", gg, 1).expect("positive");
        let rho = CuspidalLabel::new("rho", gg, 1).expect("positive");
        let collapse = ModlCollapse::new(g.gen_range(1..=3))
            .lift(a.id(), rho.clone())
            .lift(b.id(), rho);
        let pa = random_profile(&mut g, &a, max.min(7) + 1, 3);
        let pb = pa.relabel_cusp(&a, &b);
        let r = g.gen_range(1..=max.min(7));
        let ok = conj2_predicate(&coh_shriek(&pa, &a, r), &coh_shriek(&pb, &b, r), &collapse)
            && conj2_predicate(&coh_intermediate(&pa, &a, r), &coh_intermediate(&pb, &b, r), &collapse);
        t.check(ok, || format!("case {k}: lifts disagree at r={r}"));
    }
    t
}
