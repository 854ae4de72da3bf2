use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmat::IntMatrix;

/// Deterministic RNG used everywhere a seed is accepted.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random signed permutation matrix.
pub fn random_signed_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> IntMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = IntMatrix::zeros(n, n);
    for (j, &i) in perm.iter().enumerate() {
        m[(i, j)] = BigInt::from(if rng.gen::<bool>() { 1 } else { -1 });
    }
    m
}

/// `E + c E_ij` with `i != j` and `0 < |c| <= entry_bound`.
pub fn random_elementary<R: Rng + ?Sized>(rng: &mut R, n: usize, entry_bound: u64) -> IntMatrix {
    assert!(n >= 2 && entry_bound >= 1);
    let i = rng.gen_range(0..n);
    let j = (i + rng.gen_range(1..n)) % n;
    let mag = rng.gen_range(1..=entry_bound) as i64;
    let c = if rng.gen::<bool>() { mag } else { -mag };
    IntMatrix::elementary(n, i, j, c)
}

/// Word of `word_length` letters, each an elementary transvection (3 in 4)
/// or a signed permutation (1 in 4).
pub fn sample_unimodular<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    word_length: usize,
    entry_bound: u64,
) -> IntMatrix {
    let mut acc = IntMatrix::identity(n);
    for _ in 0..word_length {
        let letter = if n >= 2 && rng.gen_range(0..4) < 3 {
            random_elementary(rng, n, entry_bound.max(1))
        } else {
            random_signed_permutation(rng, n)
        };
        acc = &acc * &letter;
    }
    acc
}

/// Seeded form of [`sample_unimodular`]; identical arguments give identical
/// matrices.
pub fn random_unimodular(n: usize, word_length: usize, entry_bound: u64, seed: u64) -> IntMatrix {
    sample_unimodular(&mut seeded_rng(seed), n, word_length, entry_bound)
}

/// Random word in elementary transvections only, so the result has det 1.
pub fn sample_special<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    word_length: usize,
    entry_bound: u64,
) -> IntMatrix {
    let mut acc = IntMatrix::identity(n);
    for _ in 0..word_length {
        acc = &acc * &random_elementary(rng, n, entry_bound);
    }
    acc
}
