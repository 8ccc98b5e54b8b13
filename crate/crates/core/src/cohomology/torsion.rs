use super::profile::SpectrumProfile;
use super::tables::coh_shriek;
use crate::error::{Error, Result};
use crate::modl::{rank_at, SupercuspidalData};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum TorsionVerdict {
    /// Torsion in degree i0 of the j_! cohomology and in degree 1 - i0 of j_*.
    Torsion {
        i0_lower: i64,
        i0_upper: Option<i64>,
        lower_bound_only: bool,
        shriek_degree: i64,
        star_degree: i64,
    },
    NoCertificate { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCertificate {
    pub d: u64,
    pub cusp: String,
    pub g_minus1: u64,
    pub u_prime: i32,
    pub g_u_prime: u64,
    pub r_prime: u64,
    pub r: Option<u64>,
    pub s: u64,
    pub s_prime: u64,
    pub pivot: Option<bool>,
    pub verdict: TorsionVerdict,
}

impl TorsionCertificate {
    pub fn certified(&self) -> bool {
        matches!(self.verdict, TorsionVerdict::Torsion { .. })
    }
}

pub fn torsion_detect(d: u64, sc: &SupercuspidalData, u_prime: i32, r_prime: u64) -> Result<TorsionCertificate> {
    detect(d, sc, u_prime, r_prime, None)
}

/// As [`torsion_detect`], bounding i0 above by the top nonzero degree of the
/// j_! table of `profile` at stratum r.
pub fn torsion_detect_with_profile(
    d: u64,
    sc: &SupercuspidalData,
    u_prime: i32,
    r_prime: u64,
    profile: &SpectrumProfile,
) -> Result<TorsionCertificate> {
    detect(d, sc, u_prime, r_prime, Some(profile))
}

fn detect(
    d: u64,
    sc: &SupercuspidalData,
    u_prime: i32,
    r_prime: u64,
    profile: Option<&SpectrumProfile>,
) -> Result<TorsionCertificate> {
    if r_prime == 0 {
        return Err(Error::pre("r' must be >= 1"));
    }
    if u_prime < 0 {
        return Err(Error::pre("u' must be >= 0"));
    }
    let g = sc.g();
    let gu = rank_at(sc, u_prime);
    let mut cert = TorsionCertificate {
        d,
        cusp: sc.label().id().to_string(),
        g_minus1: g,
        u_prime,
        g_u_prime: gu,
        r_prime,
        r: None,
        s: d / g,
        s_prime: d / gu,
        pivot: None,
        verdict: TorsionVerdict::NoCertificate {
            reason: String::new(),
        },
    };
    let n = r_prime * gu;
    if n + g > d {
        cert.verdict = TorsionVerdict::NoCertificate {
            reason: format!("r' g_u' = {n} exceeds d - g_-1 = {}", d as i64 - g as i64),
        };
        return Ok(cert);
    }
    if !n.is_multiple_of(g) {
        return Err(Error::pre(format!("r' g_u' = {n} is not divisible by g_-1 = {g}")));
    }
    let r = n / g;
    let (s, sp) = (cert.s as i64, cert.s_prime as i64);
    let lower = s - r as i64;
    let pivot = lower > sp - r_prime as i64;
    cert.r = Some(r);
    cert.pivot = Some(pivot);
    if !pivot {
        cert.verdict = TorsionVerdict::NoCertificate {
            reason: "s - r <= s' - r'".into(),
        };
        return Ok(cert);
    }
    let upper = profile.and_then(|p| {
        coh_shriek(p, sc.label(), r as u32)
            .degrees
            .keys()
            .next_back()
            .map(|&i| i as i64)
            .filter(|&i| i >= lower)
    });
    cert.verdict = TorsionVerdict::Torsion {
        i0_lower: lower,
        i0_upper: upper,
        lower_bound_only: upper.is_none(),
        shriek_degree: lower,
        star_degree: 1 - lower,
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modl::FieldData;
    use crate::segments::CuspidalLabel;

    fn sc(q: u64, l: u64, eps: u64) -> SupercuspidalData {
        let f = FieldData::new(q, l).unwrap();
        SupercuspidalData::new(CuspidalLabel::new("pi", 1, 1).unwrap(), f, eps).unwrap()
    }

    #[test]
    fn certified_example() {
        // q = 2, l = 3: e_l(q) = 2, m = 2
        let c = torsion_detect(4, &sc(2, 3, 2), 0, 1).unwrap();
        assert_eq!((c.r, c.s, c.s_prime), (Some(2), 4, 2));
        assert!(c.certified());
        match c.verdict {
            TorsionVerdict::Torsion { i0_lower, star_degree, lower_bound_only, .. } => {
                assert_eq!((i0_lower, star_degree), (2, -1));
                assert!(lower_bound_only);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn supersingular_has_no_certificate() {
        let c = torsion_detect(2, &sc(2, 3, 2), 0, 1).unwrap();
        assert!(!c.certified());
    }
}
