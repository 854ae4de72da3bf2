//! Fixed inputs shared by the benchmarks.

use glz_core::exactmat::{sample_special, sample_unimodular, seeded_rng};
use glz_core::{IntMatrix, InvolutionProfile};

/// Conjugate of the block involution with the given profile by a seeded
/// unimodular matrix.
pub fn involution(profile: InvolutionProfile, seed: u64) -> IntMatrix {
    let mut rng = seeded_rng(seed);
    let n = profile.rank();
    let u = sample_unimodular(&mut rng, n, n + 3, 2);
    u.conjugate(&profile.canonical_matrix())
        .expect("unimodular conjugator")
}

/// Determinant-one word of `len` elementary factors.
pub fn special(n: usize, len: usize, seed: u64) -> IntMatrix {
    sample_special(&mut seeded_rng(seed), n, len, 3)
}

/// Square matrix with small pseudo-random entries.
pub fn dense(n: usize, seed: u64) -> IntMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).expect("rectangular rows")
}
