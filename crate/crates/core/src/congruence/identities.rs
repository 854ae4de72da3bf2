use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::transvection::{recognize_transvection, transvections_conjugate};

fn sort_lex(mut ms: Vec<IntMatrix>) -> Vec<IntMatrix> {
    ms.sort_by(|a, b| a.entries().cmp(b.entries()));
    ms.dedup();
    ms
}

fn require_2x2(t: &IntMatrix) -> Result<()> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: "2x2".into(),
            found: format!("{}x{}", t.rows(), t.cols()),
        });
    }
    Ok(())
}

/// All `X` in SL(2,Z) with `X^2 = T`, sorted by entries.
///
/// `T = I + N` with `N^2 = 0`. A square root is `+-(I + N/2)`, which needs
/// `N` even; the remaining trace-zero candidates square to `-I`.
pub fn unipotent_sqrt_sl2(t: &IntMatrix) -> Result<Vec<IntMatrix>> {
    require_2x2(t)?;
    let id = IntMatrix::identity(2);
    let nil = t - &id;
    if !(&nil * &nil).is_zero() || t.det()? != BigInt::from(1) {
        return Err(Error::NotUnipotent);
    }
    if nil.entries().iter().any(|x| x.is_odd()) {
        return Ok(Vec::new());
    }
    let half = IntMatrix::from_rows(
        &nil.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x / 2).collect())
            .collect::<Vec<Vec<BigInt>>>(),
    )?;
    let x = &id + &half;
    Ok(sort_lex(vec![-&x, x]))
}

fn swap2() -> IntMatrix {
    IntMatrix::from_i64(&[&[0, 1], &[1, 0]])
}

fn braid_holds(r: &IntMatrix, s: &IntMatrix) -> bool {
    &(s * r) * s == &(r * s) * r
}

/// Trace-zero, determinant `-1` matrices `R != S` with `SRS = RSR` for the
/// swap `S`, sorted by entries.
///
/// Writing `R = [[a,b],[c,-a]]`, the braid relation forces `a = 0` or
/// `b + c + 1 = 0`. With `a = 0` the determinant gives `bc = 1`, leaving
/// `S` and `-S`. Otherwise `a^2 = b^2 + b + 1` lies strictly between
/// consecutive squares unless `b` is `0` or `-1`.
pub fn braid_involution_solutions() -> Vec<IntMatrix> {
    let s = swap2();
    let mut candidates = vec![
        IntMatrix::from_i64(&[&[0, 1], &[1, 0]]),
        IntMatrix::from_i64(&[&[0, -1], &[-1, 0]]),
    ];
    for b in [0i64, -1] {
        let c = -1 - b;
        for a in [1i64, -1] {
            candidates.push(IntMatrix::from_i64(&[&[a, b], &[c, -a]]));
        }
    }
    let sols = candidates
        .into_iter()
        .filter(|r| *r != s && r.det().map(|d| d == BigInt::from(-1)).unwrap_or(false))
        .filter(|r| r.trace().is_zero() && braid_holds(r, &s))
        .collect();
    sort_lex(sols)
}

/// `(diag(1,-1) R)^2`.
pub fn braid_square(r: &IntMatrix) -> IntMatrix {
    let p = &IntMatrix::diagonal(&[1, -1]) * r;
    &p * &p
}

/// Cyclic permutation `e1 -> e2 -> e3 -> e1`.
pub fn cyclic_shift3() -> IntMatrix {
    IntMatrix::permutation(&[1, 2, 0])
}

/// `det(M + I) = 0`.
pub fn has_eigenvalue_minus_one(m: &IntMatrix) -> Result<bool> {
    let id = IntMatrix::identity(m.order()?);
    Ok((m + &id).det()?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorCase {
    pub sigma: IntMatrix,
    pub sigma_conjugate: IntMatrix,
    pub commutator: IntMatrix,
    pub expected: IntMatrix,
    pub matches: bool,
    pub sigma_has_minus_one: bool,
    pub commutator_has_minus_one: bool,
    pub commutator_conjugate_to_sigma: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorReport {
    pub shift: IntMatrix,
    pub cases: Vec<CommutatorCase>,
    /// `[I + E12, I + E23] = I + E13`.
    pub steinberg: bool,
    /// Only the unipotent case lacks eigenvalue `-1`; no commutator has it.
    pub discrimination: bool,
    pub all_hold: bool,
}

/// Commutators `[s, p s p^{-1}]` for the four sign variants of the two
/// generating matrices, with `p` the cyclic shift.
pub fn claim1_commutator_identities() -> Result<CommutatorReport> {
    let shift = cyclic_shift3();
    let first = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    let second = IntMatrix::from_i64(&[&[-1, -1, 0], &[0, -1, 0], &[0, 0, 1]]);
    let expected_first = IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
    let expected_second = IntMatrix::from_i64(&[&[1, 2, -3], &[0, 1, -2], &[0, 0, 1]]);

    let sigmas = [
        (first.clone(), &expected_first),
        (-&first, &expected_first),
        (second.clone(), &expected_second),
        (-&second, &expected_second),
    ];
    let mut cases = Vec::new();
    for (sigma, expected) in sigmas {
        let sigma_conjugate = shift.conjugate(&sigma)?;
        let commutator = IntMatrix::commutator(&sigma, &sigma_conjugate)?;
        let conj = recognize_transvection(&sigma).is_some()
            && transvections_conjugate(&sigma, &commutator)?;
        cases.push(CommutatorCase {
            matches: commutator == *expected,
            sigma_has_minus_one: has_eigenvalue_minus_one(&sigma)?,
            commutator_has_minus_one: has_eigenvalue_minus_one(&commutator)?,
            commutator_conjugate_to_sigma: conj,
            expected: expected.clone(),
            sigma,
            sigma_conjugate,
            commutator,
        });
    }

    let e12 = IntMatrix::elementary(3, 0, 1, 1);
    let e23 = IntMatrix::elementary(3, 1, 2, 1);
    let steinberg = IntMatrix::commutator(&e12, &e23)? == IntMatrix::elementary(3, 0, 2, 1);

    let discrimination = !cases[0].sigma_has_minus_one
        && cases[0].commutator_conjugate_to_sigma
        && cases[1..]
            .iter()
            .all(|c| c.sigma_has_minus_one && !c.commutator_conjugate_to_sigma)
        && cases.iter().all(|c| !c.commutator_has_minus_one);
    let all_hold = steinberg && discrimination && cases.iter().all(|c| c.matches);
    Ok(CommutatorReport {
        shift,
        cases,
        steinberg,
        discrimination,
        all_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_examples() {
        let t = IntMatrix::from_i64(&[&[1, 2], &[0, 1]]);
        let x = IntMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(unipotent_sqrt_sl2(&t).unwrap(), vec![-&x, x]);
        let id = IntMatrix::identity(2);
        assert_eq!(unipotent_sqrt_sl2(&id).unwrap(), vec![-&id, id.clone()]);
        let odd = IntMatrix::from_i64(&[&[1, 3], &[0, 1]]);
        assert!(unipotent_sqrt_sl2(&odd).unwrap().is_empty());
        let bad = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(unipotent_sqrt_sl2(&bad), Err(Error::NotUnipotent));
    }

    #[test]
    fn sqrt_brute_force_small() {
        // oracle: search a box, solving d from the determinant
        for k in -3i64..=3 {
            let t = IntMatrix::from_i64(&[&[1, 2 * k], &[0, 1]]);
            let mut found = Vec::new();
            for a in -6i64..=6 {
                for b in -6i64..=6 {
                    for c in -6i64..=6 {
                        for d in -6i64..=6 {
                            if a * d - b * c != 1 {
                                continue;
                            }
                            let x = IntMatrix::from_i64(&[&[a, b], &[c, d]]);
                            if &x * &x == t {
                                found.push(x);
                            }
                        }
                    }
                }
            }
            assert_eq!(sort_lex(found), unipotent_sqrt_sl2(&t).unwrap());
        }
    }

    #[test]
    fn braid_solutions_match_listed() {
        let expected = sort_lex(vec![
            IntMatrix::from_i64(&[&[1, 0], &[-1, -1]]),
            IntMatrix::from_i64(&[&[-1, 0], &[-1, 1]]),
            IntMatrix::from_i64(&[&[1, -1], &[0, -1]]),
            IntMatrix::from_i64(&[&[-1, -1], &[0, 1]]),
        ]);
        assert_eq!(braid_involution_solutions(), expected);
    }

    #[test]
    fn braid_squares_are_even_transvections() {
        let r = IntMatrix::from_i64(&[&[1, 0], &[-1, -1]]);
        assert_eq!(braid_square(&r), IntMatrix::from_i64(&[&[1, 0], &[2, 1]]));
        for r in braid_involution_solutions() {
            let t = recognize_transvection(&braid_square(&r)).unwrap();
            assert_eq!(t.m, BigInt::from(2));
        }
    }

    #[test]
    fn commutator_report() {
        let rep = claim1_commutator_identities().unwrap();
        assert!(rep.steinberg);
        assert!(rep.discrimination);
        assert!(rep.all_hold);
        assert_eq!(
            rep.cases[0].commutator,
            IntMatrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]])
        );
        assert_eq!(
            rep.cases[2].commutator,
            IntMatrix::from_i64(&[&[1, 2, -3], &[0, 1, -2], &[0, 0, 1]])
        );
    }
}
