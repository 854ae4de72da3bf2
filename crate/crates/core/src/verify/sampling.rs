use num_bigint::BigInt;
use rand::Rng;

use crate::congruence::in_gamma;
use crate::exactmat::{sample_unimodular, Gf2Matrix, IntMatrix};
use crate::involution::InvolutionProfile;

/// Which involution profiles `random_profile` may return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileShape {
    /// `p = 0`.
    Diagonalizable,
    /// `p >= 1`.
    NonDiagonalizable,
    /// `p = 1` with no fixed or no negated part.
    OnePermutation,
    /// `p >= 1` and not a 1-permutation.
    NotOnePermutation,
}

pub fn random_profile<R: Rng>(rng: &mut R, n: usize, shape: ProfileShape) -> InvolutionProfile {
    let split = |rng: &mut R, rest: usize, p: usize| {
        let a = rng.gen_range(0..=rest);
        InvolutionProfile::new(a, rest - a, p)
    };
    match shape {
        ProfileShape::Diagonalizable => split(rng, n, 0),
        ProfileShape::NonDiagonalizable => {
            let p = rng.gen_range(1..=n / 2);
            split(rng, n - 2 * p, p)
        }
        ProfileShape::OnePermutation => {
            if rng.gen_bool(0.5) {
                InvolutionProfile::new(0, n - 2, 1)
            } else {
                InvolutionProfile::new(n - 2, 0, 1)
            }
        }
        ProfileShape::NotOnePermutation => loop {
            assert!(n >= 4, "no such profile below rank 4");
            let p = rng.gen_range(1..=n / 2);
            let rest = n - 2 * p;
            if p == 1 {
                if rest < 2 {
                    continue;
                }
                let a = rng.gen_range(1..rest);
                return InvolutionProfile::new(a, rest - a, 1);
            }
            return split(rng, rest, p);
        },
    }
}

/// Random unimodular matrix used to conjugate canonical representatives.
pub fn sample_conjugator<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    sample_unimodular(rng, n, n + 3, 2)
}

pub fn random_invertible_gf2<R: Rng>(rng: &mut R, n: usize) -> Gf2Matrix {
    loop {
        let rows: Vec<Vec<u8>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..2u8)).collect())
            .collect();
        let m = Gf2Matrix::from_rows(&rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Element of the level-2 congruence subgroup: a word in even elementary
/// matrices and diagonal signs, conjugated by a random unimodular matrix.
pub fn random_gamma2<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..n + 2 {
        let letter = if rng.gen_bool(0.2) {
            let signs: Vec<i64> = (0..n)
                .map(|_| if rng.gen_bool(0.5) { -1 } else { 1 })
                .collect();
            IntMatrix::diagonal(&signs)
        } else {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let c = 2 * rng.gen_range(1..=2i64) * if rng.gen_bool(0.5) { -1 } else { 1 };
            IntMatrix::elementary(n, i, j, c)
        };
        m = &m * &letter;
    }
    let u = sample_conjugator(rng, n);
    let out = u.conjugate(&m).expect("conjugator is unimodular");
    debug_assert!(in_gamma(&out, &BigInt::from(2)).unwrap_or(false));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::seeded_rng;

    #[test]
    fn profiles_have_requested_shape() {
        let mut rng = seeded_rng(3);
        for n in 4..9 {
            for _ in 0..50 {
                let p = random_profile(&mut rng, n, ProfileShape::NotOnePermutation);
                assert_eq!(p.rank(), n);
                assert!(!p.diagonalizable());
                assert_ne!(p.kind(), crate::involution::InvolutionKind::OnePermutation);
                let q = random_profile(&mut rng, n, ProfileShape::OnePermutation);
                assert_eq!(q.kind(), crate::involution::InvolutionKind::OnePermutation);
            }
        }
    }

    #[test]
    fn gamma2_samples_are_members() {
        let mut rng = seeded_rng(4);
        for _ in 0..20 {
            let m = random_gamma2(&mut rng, 4);
            assert!(in_gamma(&m, &BigInt::from(2)).unwrap());
        }
    }
}
