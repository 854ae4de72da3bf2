//! Principal congruence subgroups, elementary factorization, small matrix
//! identities in SL(2,Z) and SL(3,Z), and lifts from mod 2 to Z.

pub mod factor;
pub mod identities;
pub mod lift;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;

pub use factor::{
    elementary_factorization, factor_mod2_classes, ElementaryFactor, FactorClass, Factorization,
};
pub use identities::{
    braid_involution_solutions, braid_square, claim1_commutator_identities, cyclic_shift3,
    has_eigenvalue_minus_one, unipotent_sqrt_sl2, CommutatorCase, CommutatorReport,
};
pub use lift::{gamma2_with_column, lift_mod2, lift_row_to_sl3};

/// Whether the automorphism `m` is congruent to the identity mod `level`.
pub fn in_gamma(m: &IntMatrix, level: &BigInt) -> Result<bool> {
    if *level < BigInt::from(2) {
        return Err(Error::Precondition(format!(
            "level must be at least 2, got {level}"
        )));
    }
    m.require_automorphism()?;
    let n = m.rows();
    for i in 0..n {
        for j in 0..n {
            let target = if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            if !(&m[(i, j)] - target).is_multiple_of(level) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Levels `2..=max_level` at which `m` lies in the congruence subgroup.
pub fn gamma_levels(m: &IntMatrix, max_level: u32) -> Result<Vec<(u32, bool)>> {
    (2..=max_level)
        .map(|l| Ok((l, in_gamma(m, &BigInt::from(l))?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn membership_examples() {
        for l in 2..7 {
            assert!(in_gamma(&IntMatrix::identity(3), &b(l)).unwrap());
        }
        assert!(in_gamma(&IntMatrix::from_i64(&[&[3, 4], &[2, 3]]), &b(2)).unwrap());
        assert!(!in_gamma(&IntMatrix::from_i64(&[&[1, 1], &[0, 1]]), &b(2)).unwrap());
        assert!(in_gamma(&IntMatrix::from_i64(&[&[1, 6], &[0, 1]]), &b(3)).unwrap());
        assert!(in_gamma(&IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]), &b(2)).unwrap());
    }

    #[test]
    fn membership_errors() {
        let e = in_gamma(&IntMatrix::diagonal(&[2, 2]), &b(2)).unwrap_err();
        assert!(matches!(e, Error::NotAutomorphism { .. }));
        assert!(in_gamma(&IntMatrix::identity(2), &b(1)).is_err());
    }

    #[test]
    fn levels_of_even_transvection() {
        let t = IntMatrix::from_i64(&[&[1, 6], &[0, 1]]);
        let hits: Vec<u32> = gamma_levels(&t, 12)
            .unwrap()
            .into_iter()
            .filter_map(|(l, ok)| ok.then_some(l))
            .collect();
        assert_eq!(hits, vec![2, 3, 6]);
    }
}
