//! Involutions of `Z^n`: eigen-summands, the residue invariant, canonical
//! bases, classification, and the conjugate witnesses used to separate
//! diagonalizable involutions and 1-permutations.
//!
//! Every involution splits `Z^n` into fixed vectors, negated vectors and
//! swap pairs `{b, Pb}`. The counts `(a, b, p)` form a complete conjugacy
//! invariant, and `p` equals the GF(2) rank of `P - I`.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::congruence::lift_mod2;
use crate::error::{Error, Result};
use crate::exactmat::{kernel_lattice, rank_mod2, Gf2Matrix, IntMatrix, Lattice, Vector};

/// Conjugacy invariant of an involution: `a` fixed basis vectors, `b`
/// negated ones and `p` swap pairs, so `a + b + 2p = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvolutionProfile {
    pub fixed: usize,
    pub negated: usize,
    pub pairs: usize,
}

impl InvolutionProfile {
    pub fn new(fixed: usize, negated: usize, pairs: usize) -> Self {
        InvolutionProfile {
            fixed,
            negated,
            pairs,
        }
    }

    pub fn rank(&self) -> usize {
        self.fixed + self.negated + 2 * self.pairs
    }

    pub fn diagonalizable(&self) -> bool {
        self.pairs == 0
    }

    /// Rank of the fixed sublattice; each swap pair contributes `b + Pb`.
    pub fn plus_rank(&self) -> usize {
        self.fixed + self.pairs
    }

    /// Rank of the negated sublattice; each swap pair contributes `b - Pb`.
    pub fn minus_rank(&self) -> usize {
        self.negated + self.pairs
    }

    pub fn triple(&self) -> [usize; 3] {
        [self.fixed, self.negated, self.pairs]
    }

    /// `diag(I_a, -I_b, S, ..., S)` with `S = [[0,1],[1,0]]`.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::identity(self.rank());
        for i in self.fixed..self.fixed + self.negated {
            d[(i, i)] = BigInt::from(-1);
        }
        let start = self.fixed + self.negated;
        for k in 0..self.pairs {
            let s = start + 2 * k;
            d[(s, s)] = BigInt::zero();
            d[(s + 1, s + 1)] = BigInt::zero();
            d[(s, s + 1)] = BigInt::one();
            d[(s + 1, s)] = BigInt::one();
        }
        d
    }

    pub fn kind(&self) -> InvolutionKind {
        let n = self.rank();
        if self.pairs == 0 {
            if self.fixed == n || self.negated == n {
                InvolutionKind::Central
            } else if self.negated < self.fixed {
                if self.negated == 1 {
                    InvolutionKind::Extremal
                } else {
                    InvolutionKind::GammaInvolution(self.negated)
                }
            } else {
                InvolutionKind::DiagonalizableOther
            }
        } else if self.pairs == 1 && (self.plus_rank() == 1 || self.minus_rank() == 1) {
            InvolutionKind::OnePermutation
        } else {
            InvolutionKind::NondiagonalizableOther
        }
    }
}

impl Serialize for InvolutionProfile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.triple().serialize(s)
    }
}

/// Class of an involution read off its profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvolutionKind {
    /// `I` or `-I`.
    Central,
    /// Diagonalizable with `rank A- = 1 < rank A+`.
    Extremal,
    /// Diagonalizable with `rank A- = gamma < rank A+`, `gamma >= 2`.
    GammaInvolution(usize),
    DiagonalizableOther,
    /// One swap pair, and one eigen-sublattice of rank 1.
    OnePermutation,
    NondiagonalizableOther,
}

impl InvolutionKind {
    /// `gamma` for gamma-involutions, with extremal involutions as `gamma = 1`.
    pub fn gamma(&self) -> Option<usize> {
        match self {
            InvolutionKind::Extremal => Some(1),
            InvolutionKind::GammaInvolution(g) => Some(*g),
            _ => None,
        }
    }

    pub fn is_gamma(&self, gamma: usize) -> bool {
        self.gamma() == Some(gamma)
    }

    pub fn name(&self) -> &'static str {
        match self {
            InvolutionKind::Central => "central",
            InvolutionKind::Extremal => "extremal",
            InvolutionKind::GammaInvolution(_) => "gamma_involution",
            InvolutionKind::DiagonalizableOther => "diagonalizable_other",
            InvolutionKind::OnePermutation => "one_permutation",
            InvolutionKind::NondiagonalizableOther => "nondiagonalizable_other",
        }
    }
}

impl std::fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvolutionKind::GammaInvolution(g) => write!(f, "gamma_involution({g})"),
            other => f.write_str(other.name()),
        }
    }
}

/// Unimodular `U` whose columns form a canonical basis: `U^{-1} P U` is
/// `profile.canonical_matrix()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub transform: IntMatrix,
    pub profile: InvolutionProfile,
}

impl CanonicalBasis {
    pub fn fixed_columns(&self) -> Range<usize> {
        0..self.profile.fixed
    }

    pub fn negated_columns(&self) -> Range<usize> {
        let a = self.profile.fixed;
        a..a + self.profile.negated
    }

    /// Columns `(b, Pb)` of the `k`-th swap pair.
    pub fn pair_columns(&self, k: usize) -> (usize, usize) {
        assert!(k < self.profile.pairs);
        let s = self.profile.fixed + self.profile.negated + 2 * k;
        (s, s + 1)
    }

    pub fn block_matrix(&self) -> IntMatrix {
        self.profile.canonical_matrix()
    }

    /// `U D U^{-1}` for a matrix `D` written in canonical coordinates.
    pub fn from_canonical(&self, d: &IntMatrix) -> Result<IntMatrix> {
        self.transform.conjugate(d)
    }
}

/// Returns `n` after checking that `p` is square with `p^2 = I`.
pub fn require_involution(p: &IntMatrix) -> Result<usize> {
    let n = p.order()?;
    if (p * p).is_identity() {
        Ok(n)
    } else {
        Err(Error::NotInvolution)
    }
}

/// `(A+, A-)`: the sublattices fixed and negated by `p`.
pub fn eigen_lattices(p: &IntMatrix) -> Result<(Lattice, Lattice)> {
    let n = require_involution(p)?;
    let id = IntMatrix::identity(n);
    Ok((kernel_lattice(&(p - &id)), kernel_lattice(&(p + &id))))
}

/// Number of swap pairs, computed as the GF(2) rank of `P - I`.
pub fn residue(p: &IntMatrix) -> Result<usize> {
    let n = require_involution(p)?;
    Ok(rank_mod2(&(p - &IntMatrix::identity(n))))
}

pub fn profile(p: &IntMatrix) -> Result<InvolutionProfile> {
    let (plus, minus) = eigen_lattices(p)?;
    let pairs = residue(p)?;
    if plus.rank() < pairs || minus.rank() < pairs {
        return Err(Error::Postcondition(format!(
            "residue {pairs} exceeds eigen ranks {} / {}",
            plus.rank(),
            minus.rank()
        )));
    }
    Ok(InvolutionProfile::new(
        plus.rank() - pairs,
        minus.rank() - pairs,
        pairs,
    ))
}

pub fn classify(p: &IntMatrix) -> Result<InvolutionKind> {
    Ok(profile(p)?.kind())
}

pub fn involutions_conjugate(p: &IntMatrix, q: &IntMatrix) -> Result<bool> {
    Ok(profile(p)? == profile(q)?)
}

fn halve(v: Vector) -> Vector {
    v.into_iter()
        .map(|x| {
            debug_assert!((&x % 2u32).is_zero());
            x / 2
        })
        .collect()
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Re-bases `lattice` so that its first `targets.len()` basis vectors are
/// congruent mod 2 to `targets`, whose classes must be independent mod 2.
///
/// Returns the new basis and, per target `t`, the correction `c` with
/// `t + 2c` equal to the matching basis vector.
fn align_mod2(lattice: &Lattice, targets: &[Vector]) -> Result<(Vec<Vector>, Vec<Vector>)> {
    let basis = lattice.basis();
    let r = lattice.rank();
    let coords: Vec<Vector> = targets
        .iter()
        .map(|t| {
            lattice
                .coordinates(t)
                .ok_or_else(|| Error::Postcondition("target outside eigen-sublattice".into()))
        })
        .collect::<Result<_>>()?;

    let mut chosen: Vec<Vec<bool>> = coords
        .iter()
        .map(|c| c.iter().map(|x| x.bit(0)).collect())
        .collect();
    let as_matrix = |cols: &[Vec<bool>]| {
        let mut g = Gf2Matrix::zeros(r, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &b) in col.iter().enumerate() {
                g.set(i, j, b);
            }
        }
        g
    };
    if as_matrix(&chosen).rank() != chosen.len() {
        return Err(Error::Postcondition(
            "swap-pair classes are dependent mod 2".into(),
        ));
    }
    for k in 0..r {
        if chosen.len() == r {
            break;
        }
        let mut e = vec![false; r];
        e[k] = true;
        chosen.push(e);
        if as_matrix(&chosen).rank() != chosen.len() {
            chosen.pop();
        }
    }
    let w = lift_mod2(&as_matrix(&chosen))?;
    let new_basis = basis * &w;
    let corrections = coords
        .iter()
        .enumerate()
        .map(|(i, c)| halve(basis.mul_vec(&sub(&w.column(i), c))))
        .collect();
    Ok((new_basis.columns(), corrections))
}

/// Canonical basis of an involution.
///
/// Swap-pair generators are chosen among the standard basis vectors whose
/// classes in `Z^n / (A+ + A-)` are independent, then nudged by elements of
/// `A+` and `A-` so that `v + Pv` and `v - Pv` extend to bases of the two
/// eigen-sublattices. The result is checked against the block form before
/// it is returned.
pub fn canonical_form(p: &IntMatrix) -> Result<CanonicalBasis> {
    let n = require_involution(p)?;
    let (plus, minus) = eigen_lattices(p)?;

    // The class of v in Z^n/(A+ + A-) is detected by (v + Pv) mod 2A+.
    let mut reps: Vec<Vector> = Vec::new();
    let mut classes: Vec<Vec<bool>> = Vec::new();
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let s = add(&e, &p.mul_vec(&e));
        let c = plus
            .coordinates(&s)
            .ok_or_else(|| Error::Postcondition("v + Pv outside A+".into()))?;
        let bits: Vec<bool> = c.iter().map(|x| x.bit(0)).collect();
        classes.push(bits);
        let mut g = Gf2Matrix::zeros(plus.rank(), classes.len());
        for (col, bits) in classes.iter().enumerate() {
            for (i, &b) in bits.iter().enumerate() {
                g.set(i, col, b);
            }
        }
        if g.rank() == classes.len() {
            reps.push(e);
        } else {
            classes.pop();
        }
    }
    let pairs = reps.len();

    let sums: Vec<Vector> = reps.iter().map(|v| add(v, &p.mul_vec(v))).collect();
    let (plus_basis, plus_fix) = align_mod2(&plus, &sums)?;
    for (v, c) in reps.iter_mut().zip(&plus_fix) {
        *v = add(v, c);
    }
    let diffs: Vec<Vector> = reps.iter().map(|v| sub(v, &p.mul_vec(v))).collect();
    let (minus_basis, minus_fix) = align_mod2(&minus, &diffs)?;
    for (v, c) in reps.iter_mut().zip(&minus_fix) {
        *v = add(v, c);
    }

    let profile = InvolutionProfile::new(plus.rank() - pairs, minus.rank() - pairs, pairs);
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    cols.extend(plus_basis.into_iter().skip(pairs));
    cols.extend(minus_basis.into_iter().skip(pairs));
    for v in &reps {
        cols.push(v.clone());
        cols.push(p.mul_vec(v));
    }
    let transform = IntMatrix::from_columns(n, &cols)?;

    if !transform.det()?.abs().is_one() {
        return Err(Error::Postcondition(
            "canonical basis is not unimodular".into(),
        ));
    }
    if &transform.inverse()? * &(p * &transform) != profile.canonical_matrix() {
        return Err(Error::Postcondition(
            "canonical basis does not reach block form".into(),
        ));
    }
    Ok(CanonicalBasis { transform, profile })
}

/// Conjugate `P'` of a non-diagonalizable involution with `P P'` of order 3:
/// one swap block `[[0,1],[1,0]]` is replaced by `[[1,-1],[0,-1]]` in
/// canonical coordinates.
pub fn order3_witness(p: &IntMatrix) -> Result<IntMatrix> {
    let basis = canonical_form(p)?;
    if basis.profile.diagonalizable() {
        return Err(Error::Diagonalizable);
    }
    let mut d = basis.block_matrix();
    let (s, t) = basis.pair_columns(0);
    d[(s, s)] = BigInt::one();
    d[(s, t)] = BigInt::from(-1);
    d[(t, s)] = BigInt::zero();
    d[(t, t)] = BigInt::from(-1);
    basis.from_canonical(&d)
}

/// Conjugate `P'` of a non-diagonalizable involution that is not a
/// 1-permutation, with `P P'` a 4-involution.
///
/// Four canonical basis vectors `b1..b4` get `P' b = -P b`: two swap pairs
/// when there are at least two, otherwise the single pair plus one fixed
/// and one negated vector.
pub fn four_involution_witness(p: &IntMatrix) -> Result<IntMatrix> {
    let basis = canonical_form(p)?;
    let prof = basis.profile;
    if prof.diagonalizable() {
        return Err(Error::Diagonalizable);
    }
    if prof.kind() == InvolutionKind::OnePermutation {
        return Err(Error::OnePermutation);
    }
    let n = prof.rank();
    if n < 9 {
        return Err(Error::RankTooSmall {
            needed: 9,
            found: n,
        });
    }
    let mut d = basis.block_matrix();
    let negate = |d: &mut IntMatrix, c: usize| {
        for i in 0..n {
            d[(i, c)] = -&d[(i, c)];
        }
    };
    if prof.pairs >= 2 {
        for k in 0..2 {
            let (s, t) = basis.pair_columns(k);
            negate(&mut d, s);
            negate(&mut d, t);
        }
    } else {
        let (s, t) = basis.pair_columns(0);
        negate(&mut d, s);
        negate(&mut d, t);
        negate(&mut d, basis.fixed_columns().start);
        negate(&mut d, basis.negated_columns().start);
    }
    basis.from_canonical(&d)
}

/// `n` diagonal extremal involutions `diag(1, .., -1, .., 1)`.
pub fn standard_commuting_family(n: usize) -> Result<Vec<IntMatrix>> {
    if n < 3 {
        return Err(Error::RankTooSmall {
            needed: 3,
            found: n,
        });
    }
    Ok((0..n)
        .map(|i| {
            let mut d = IntMatrix::identity(n);
            d[(i, i)] = BigInt::from(-1);
            d
        })
        .collect())
}

/// Extremal involution `I - 2 x f` negating the line `<x>` and fixing the
/// hyperplane `ker f`; requires `f(x) = 1`.
pub fn reflection(x: &[BigInt], functional: &[BigInt]) -> Result<IntMatrix> {
    let n = x.len();
    if functional.len() != n {
        return Err(Error::dims(n, functional.len()));
    }
    let fx: BigInt = x.iter().zip(functional).map(|(a, b)| a * b).sum();
    if !fx.is_one() {
        return Err(Error::Precondition(format!("f(x) = {fx}, expected 1")));
    }
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] -= BigInt::from(2) * &x[i] * &functional[j];
        }
    }
    Ok(m)
}
