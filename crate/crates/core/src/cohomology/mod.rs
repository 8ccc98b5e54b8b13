//! Grothendieck-group cohomology tables of Harris-Taylor sheaves and the
//! certificate engine built on them.

mod balance;
mod profile;
mod ramified;
mod strata;
mod tables;
mod torsion;

pub use balance::{
    conj2_predicate, rl_hi_balance, strong_congruence_filter, BalanceSetup, CertificateRecord,
    CongruenceConstraint, ConstraintKind, NONDEG_AUX,
};
pub use profile::{ProfileEntry, SpectrumProfile};
pub use ramified::{inclusion_exclusion_ramified, ramified_identity_gap, RamifiedAtoms};
pub use strata::{check_hij, check_se2, compose, hij_matrix, se2_matrix, StrataMatrix};
pub use tables::{
    coh_intermediate, coh_shriek, euler_via_red, global_scalar, hij_reexpansion, se2_reexpansion,
    CohomologyTable,
};
pub use torsion::{torsion_detect, torsion_detect_with_profile, TorsionCertificate, TorsionVerdict};

use std::collections::BTreeSet;

/// Degrees i with |i| < s and i not congruent to s mod 2.
pub fn dxi_support(s: u32) -> BTreeSet<i32> {
    let s = s as i32;
    (1 - s..s).filter(|i| (i - s).rem_euclid(2) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dxi_examples() {
        assert_eq!(dxi_support(1), [0].into_iter().collect());
        assert_eq!(dxi_support(2), [-1, 1].into_iter().collect());
        assert_eq!(dxi_support(3), [-2, 0, 2].into_iter().collect());
    }
}
