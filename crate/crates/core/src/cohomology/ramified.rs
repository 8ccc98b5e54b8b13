//! Inclusion-exclusion over ramification sets S of a finite set S1 of places.
//!
//! For every S, the level T - S equation reads
//! n + sum_{R subset S} m_R = n' + sum_{R subset S} m'_R,
//! and the claim is n - n' = (-1)^{|S|} (m_S - m'_S).

use crate::coeff::Coeff;

/// Names of the symbolic multiplicities. The atom of a set S = {w_1, ..} is
/// the prefix followed by the sorted place indices, e.g. `m[1,3]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamifiedAtoms {
    pub n: String,
    pub n_prime: String,
    pub m_prefix: String,
    pub m_prime_prefix: String,
}

impl Default for RamifiedAtoms {
    fn default() -> Self {
        RamifiedAtoms {
            n: "n".into(),
            n_prime: "n'".into(),
            m_prefix: "m".into(),
            m_prime_prefix: "m'".into(),
        }
    }
}

impl RamifiedAtoms {
    fn set_name(prefix: &str, mask: u32) -> String {
        let places: Vec<String> = (0..32)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| (b + 1).to_string())
            .collect();
        format!("{prefix}[{}]", places.join(","))
    }

    pub fn m(&self, mask: u32) -> Coeff {
        Coeff::atom(&Self::set_name(&self.m_prefix, mask))
    }

    pub fn m_prime(&self, mask: u32) -> Coeff {
        Coeff::atom(&Self::set_name(&self.m_prime_prefix, mask))
    }

    fn delta_n(&self) -> Coeff {
        Coeff::atom(&self.n) - Coeff::atom(&self.n_prime)
    }
}

fn parity_sign(mask: u32) -> i64 {
    if mask.count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Level equation for S1 = {1..size}, with every proper subset R replaced
/// through the induction hypothesis m_R = m'_R + (-1)^{|R|}(n - n'), minus
/// the claimed conclusion (m_S1 - m'_S1) - (-1)^{|S1|}(n - n').
/// The identity holds exactly when this is zero.
pub fn ramified_identity_gap(atoms: &RamifiedAtoms, size: u32) -> Coeff {
    let full = if size == 0 { 0 } else { (1u32 << size) - 1 };
    let dn = atoms.delta_n();
    let mut lhs = dn.clone();
    let mut rhs = Coeff::zero();
    for mask in 1..=full {
        if mask == full {
            lhs = lhs + atoms.m(mask);
            rhs = rhs + atoms.m_prime(mask);
        } else {
            lhs = lhs + atoms.m_prime(mask) + dn.scale(parity_sign(mask));
            rhs = rhs + atoms.m_prime(mask);
        }
    }
    let equation = lhs - rhs;
    let claimed = if size == 0 {
        dn.clone()
    } else {
        atoms.m(full) - atoms.m_prime(full) - dn.scale(parity_sign(full))
    };
    equation - claimed
}

/// Check the identity symbolically for every |S1| <= `max_size`.
pub fn inclusion_exclusion_ramified(atoms: &RamifiedAtoms, max_size: u32) -> bool {
    (0..=max_size).all(|k| ramified_identity_gap(atoms, k).is_zero())
}
