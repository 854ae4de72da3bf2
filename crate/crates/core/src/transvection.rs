//! Transvections `a -> a + delta(a) x` with `x` primitive and `delta(x) = 0`.
//!
//! The invariant `m = content(delta)` classifies transvections up to
//! conjugacy. A product of two distinct extremal involutions is a
//! transvection with even `m` exactly when the two share an eigen-sublattice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::matrix::{serde_bigint, serde_vector};
use crate::exactmat::{content_and_primitive, is_primitive, IntMatrix, Lattice, Vector};
use crate::involution::{classify, eigen_lattices, InvolutionKind};

/// `M = I + x delta` with `x` primitive, `delta(x) = 0` and `m = content(delta)`.
///
/// The sign ambiguity of the factorization is fixed by making the first
/// nonzero entry of `x` positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransvectionData {
    #[serde(rename = "x", with = "serde_vector")]
    pub direction: Vector,
    #[serde(rename = "delta", with = "serde_vector")]
    pub functional: Vector,
    #[serde(with = "serde_bigint")]
    pub m: BigInt,
}

impl TransvectionData {
    pub fn matrix(&self) -> IntMatrix {
        outer_plus_identity(&self.direction, &self.functional)
    }

    /// A "2m-transvection" in the sense of an even invariant.
    pub fn is_even(&self) -> bool {
        self.m.is_even()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn outer_plus_identity(x: &[BigInt], delta: &[BigInt]) -> IntMatrix {
    let n = x.len();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += &x[i] * &delta[j];
        }
    }
    m
}

/// `I + x delta`.
pub fn make_transvection(delta: &[BigInt], x: &[BigInt]) -> Result<IntMatrix> {
    if delta.len() != x.len() {
        return Err(Error::dims(x.len(), delta.len()));
    }
    if delta.iter().all(Zero::is_zero) {
        return Err(Error::ZeroFunctional);
    }
    if !is_primitive(x) {
        return Err(Error::NotPrimitive);
    }
    if !dot(delta, x).is_zero() {
        return Err(Error::FunctionalNotVanishing);
    }
    Ok(outer_plus_identity(x, delta))
}

/// Factors `M - I = x delta` and returns the data, or `None` when `M` is
/// not a transvection.
pub fn recognize_transvection(m: &IntMatrix) -> Option<TransvectionData> {
    let n = m.order().ok()?;
    let nil = m - &IntMatrix::identity(n);
    let pivot_col = (0..n).find(|&j| (0..n).any(|i| !nil[(i, j)].is_zero()))?;
    let (_, mut x) = content_and_primitive(&nil.column(pivot_col));
    if x.iter().find(|v| !v.is_zero())?.is_negative() {
        x.iter_mut().for_each(|v| *v = -&*v);
    }
    let lead = (0..n).find(|&i| !x[i].is_zero())?;
    // Each column of M - I must be an integer multiple of x.
    let mut delta = Vec::with_capacity(n);
    for j in 0..n {
        let (q, r) = nil[(lead, j)].div_rem(&x[lead]);
        if !r.is_zero() {
            return None;
        }
        if (0..n).any(|i| nil[(i, j)] != &q * &x[i]) {
            return None;
        }
        delta.push(q);
    }
    if !dot(&delta, &x).is_zero() {
        return None;
    }
    let (m, _) = content_and_primitive(&delta);
    Some(TransvectionData {
        direction: x,
        functional: delta,
        m,
    })
}

pub fn is_even_transvection(m: &IntMatrix) -> bool {
    recognize_transvection(m).is_some_and(|t| t.is_even())
}

/// Transvections are conjugate iff their invariants agree.
pub fn transvections_conjugate(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.rows() != b.rows() {
        return Err(Error::dims(a.rows(), b.rows()));
    }
    let ta = recognize_transvection(a).ok_or(Error::NotTransvection)?;
    let tb = recognize_transvection(b).ok_or(Error::NotTransvection)?;
    Ok(ta.m == tb.m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Shared fixed hyperplane.
    Plus,
    /// Shared negated line.
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharedSubgroup {
    pub shared: Lattice,
    pub side: Side,
    #[serde(with = "serde_bigint")]
    pub product_m: BigInt,
}

fn require_distinct_extremals(p: &IntMatrix, q: &IntMatrix) -> Result<()> {
    if classify(p)? != InvolutionKind::Extremal || classify(q)? != InvolutionKind::Extremal {
        return Err(Error::NotExtremal);
    }
    if p == q {
        return Err(Error::NotDistinct);
    }
    Ok(())
}

/// The eigen-sublattice shared by two distinct extremal involutions, if any,
/// decided by canonical-lattice equality.
pub fn shared_eigen_sublattice(p: &IntMatrix, q: &IntMatrix) -> Result<Option<(Lattice, Side)>> {
    require_distinct_extremals(p, q)?;
    let (p_plus, p_minus) = eigen_lattices(p)?;
    let (q_plus, q_minus) = eigen_lattices(q)?;
    Ok(if p_plus == q_plus {
        Some((p_plus, Side::Plus))
    } else if p_minus == q_minus {
        Some((p_minus, Side::Minus))
    } else {
        None
    })
}

/// Shared eigen-sublattice of `P` and `Q` together with the invariant of the
/// transvection `QP`; `None` when they share nothing.
///
/// Both outcomes are cross-checked against the recognition of `QP`.
pub fn mutual_subgroup(p: &IntMatrix, q: &IntMatrix) -> Result<Option<SharedSubgroup>> {
    let shared = shared_eigen_sublattice(p, q)?;
    let product = recognize_transvection(&(q * p));
    match (shared, product) {
        (Some((shared, side)), Some(t)) if t.is_even() => Ok(Some(SharedSubgroup {
            shared,
            side,
            product_m: t.m,
        })),
        (Some(_), _) => Err(Error::Postcondition(
            "shared eigen-sublattice but QP is not an even transvection".into(),
        )),
        (None, Some(t)) if t.is_even() => Err(Error::Postcondition(
            "QP is an even transvection without a shared eigen-sublattice".into(),
        )),
        (None, _) => Ok(None),
    }
}

type Pair<'a> = (&'a IntMatrix, &'a IntMatrix);

fn pair_shared(pair: Pair<'_>) -> Result<(Lattice, Side)> {
    shared_eigen_sublattice(pair.0, pair.1)?
        .ok_or_else(|| Error::Precondition("pair has no mutual eigen-sublattice".into()))
}

fn check_pairs(pair1: Pair<'_>, pair2: Pair<'_>) -> Result<(Lattice, Lattice)> {
    let (l1, s1) = pair_shared(pair1)?;
    let (l2, s2) = pair_shared(pair2)?;
    if s1 != s2 {
        return Err(Error::Precondition(
            "pairs share eigen-sublattices on different sides".into(),
        ));
    }
    Ok((l1, l2))
}

/// Product test for two encoding pairs: every involution of the first pair,
/// taken with every involution of the second, is either equal to it or
/// multiplies with it to an even transvection.
pub fn shared_summand_predicate(pair1: Pair<'_>, pair2: Pair<'_>) -> Result<bool> {
    check_pairs(pair1, pair2)?;
    let lhs = [pair1.0, pair1.1];
    let rhs = [pair2.0, pair2.1];
    Ok(lhs.iter().all(|phi| {
        rhs.iter()
            .all(|psi| phi == psi || is_even_transvection(&(*phi * *psi)))
    }))
}

/// Semantic counterpart of [`shared_summand_predicate`]: compares the
/// shared sublattices directly.
pub fn same_shared_summand(pair1: Pair<'_>, pair2: Pair<'_>) -> Result<bool> {
    let (l1, l2) = check_pairs(pair1, pair2)?;
    Ok(l1 == l2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::reflection;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn make_examples() {
        assert_eq!(
            make_transvection(&v(&[0, 2, 0]), &v(&[1, 0, 0])).unwrap(),
            IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        assert_eq!(
            make_transvection(&v(&[1, 0, 0]), &v(&[0, 2, 3])).unwrap(),
            IntMatrix::from_i64(&[&[1, 0, 0], &[2, 1, 0], &[3, 0, 1]])
        );
        assert_eq!(
            make_transvection(&v(&[0, 1]), &v(&[1, 0])).unwrap(),
            IntMatrix::from_i64(&[&[1, 1], &[0, 1]])
        );
    }

    #[test]
    fn make_errors() {
        assert_eq!(
            make_transvection(&v(&[0, 1]), &v(&[2, 0])).unwrap_err(),
            Error::NotPrimitive
        );
        assert_eq!(
            make_transvection(&v(&[1, 1]), &v(&[1, 0])).unwrap_err(),
            Error::FunctionalNotVanishing
        );
        assert_eq!(
            make_transvection(&v(&[0, 0]), &v(&[1, 0])).unwrap_err(),
            Error::ZeroFunctional
        );
    }

    #[test]
    fn recognize_examples() {
        let t = recognize_transvection(&IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[0, 0, 1]]))
            .unwrap();
        assert_eq!(t.m, BigInt::from(2));
        assert!(recognize_transvection(&IntMatrix::identity(3)).is_none());
        let t = recognize_transvection(&IntMatrix::from_i64(&[&[1, 0, 0], &[2, 1, 0], &[3, 0, 1]]))
            .unwrap();
        assert_eq!(t.direction, v(&[0, 2, 3]));
        assert_eq!(t.functional, v(&[1, 0, 0]));
        assert_eq!(t.m, BigInt::from(1));
    }

    #[test]
    fn recognize_rejects_non_transvections() {
        // Rank 2.
        assert!(recognize_transvection(&IntMatrix::from_i64(&[
            &[1, 1, 0],
            &[0, 1, 1],
            &[0, 0, 1]
        ]))
        .is_none());
        // Rank 1 but not unipotent.
        assert!(recognize_transvection(&IntMatrix::diagonal(&[-1, 1])).is_none());
        // Involution.
        assert!(recognize_transvection(&IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).is_none());
        assert!(recognize_transvection(&IntMatrix::zeros(2, 3)).is_none());
    }

    #[test]
    fn conjugacy_examples() {
        let a = IntMatrix::elementary(2, 0, 1, 2);
        let b = IntMatrix::elementary(2, 1, 0, 2);
        assert!(transvections_conjugate(&a, &b).unwrap());
        assert!(!transvections_conjugate(&IntMatrix::elementary(2, 0, 1, 1), &a).unwrap());
        assert_eq!(
            transvections_conjugate(&a, &IntMatrix::identity(2)).unwrap_err(),
            Error::NotTransvection
        );
    }

    #[test]
    fn mutual_subgroup_shared_hyperplane() {
        let p = IntMatrix::diagonal(&[-1, 1, 1]);
        let q = reflection(&v(&[1, 2, 0]), &v(&[1, 0, 0])).unwrap();
        let s = mutual_subgroup(&p, &q).unwrap().unwrap();
        assert_eq!(s.side, Side::Plus);
        assert_eq!(
            s.shared,
            Lattice::from_vectors(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap()
        );
        assert_eq!(s.product_m, BigInt::from(4));
        assert_eq!(
            &q * &p,
            IntMatrix::from_i64(&[&[1, 0, 0], &[4, 1, 0], &[0, 0, 1]])
        );
    }

    #[test]
    fn mutual_subgroup_shared_line() {
        // Same negated line <e1>, hyperplanes x1 = 0 and x1 + 3 x2 = 0.
        let p = reflection(&v(&[1, 0, 0]), &v(&[1, 0, 0])).unwrap();
        let q = reflection(&v(&[1, 0, 0]), &v(&[1, 3, 0])).unwrap();
        let s = mutual_subgroup(&p, &q).unwrap().unwrap();
        assert_eq!(s.side, Side::Minus);
        assert_eq!(
            s.shared,
            Lattice::from_vectors(3, &[v(&[1, 0, 0])]).unwrap()
        );
        // QP sends e2 to e2 - 6 e1.
        assert_eq!(s.product_m, BigInt::from(6));
    }

    #[test]
    fn mutual_subgroup_none() {
        let p = IntMatrix::diagonal(&[-1, 1, 1]);
        let q = IntMatrix::diagonal(&[1, -1, 1]);
        assert!(mutual_subgroup(&p, &q).unwrap().is_none());
        assert!(recognize_transvection(&(&q * &p)).is_none());
    }

    #[test]
    fn mutual_subgroup_preconditions() {
        let p = IntMatrix::diagonal(&[-1, 1, 1]);
        assert_eq!(mutual_subgroup(&p, &p).unwrap_err(), Error::NotDistinct);
        let swap3 = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(mutual_subgroup(&p, &swap3).unwrap_err(), Error::NotExtremal);
    }

    #[test]
    fn predicate_examples() {
        let phi1 = IntMatrix::diagonal(&[-1, 1, 1]);
        let phi2 = reflection(&v(&[1, 2, 0]), &v(&[1, 0, 0])).unwrap();
        let psi1 = reflection(&v(&[1, 0, 5]), &v(&[1, 0, 0])).unwrap();
        let psi2 = reflection(&v(&[1, -1, 1]), &v(&[1, 0, 0])).unwrap();
        assert!(shared_summand_predicate((&phi1, &phi2), (&phi1, &phi2)).unwrap());
        assert!(shared_summand_predicate((&phi1, &phi2), (&psi1, &psi2)).unwrap());
        assert!(same_shared_summand((&phi1, &phi2), (&psi1, &psi2)).unwrap());

        // <e2, e3> against <e1, e3>.
        let chi1 = IntMatrix::diagonal(&[1, -1, 1]);
        let chi2 = reflection(&v(&[3, 1, 0]), &v(&[0, 1, 0])).unwrap();
        assert!(!shared_summand_predicate((&phi1, &phi2), (&chi1, &chi2)).unwrap());
        assert!(!same_shared_summand((&phi1, &phi2), (&chi1, &chi2)).unwrap());
    }
}
