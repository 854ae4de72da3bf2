use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{complete_to_basis, content_and_primitive, Gf2Matrix, IntMatrix};

/// `[[a,b,0],[c,d,0],[0,0,1]]` with determinant one, `b` even and `d` odd,
/// so the result is congruent to the identity mod 2.
///
/// Among the admissible `d` (a class mod `2c`) the one with
/// `d * sign(a)` in `[0, 2|c|)` is returned.
pub fn lift_row_to_sl3(a: &BigInt, c: &BigInt) -> Result<IntMatrix> {
    if a.is_even() || c.is_odd() {
        return Err(Error::Parity(format!(
            "need a odd and c even, got a = {a}, c = {c}"
        )));
    }
    let eg = a.extended_gcd(c);
    if !eg.gcd.is_one() {
        return Err(Error::NotCoprime {
            a: a.to_string(),
            c: c.to_string(),
            gcd: eg.gcd.to_string(),
        });
    }
    let (b, d) = if c.is_zero() {
        // a = +-1
        (BigInt::zero(), a.clone())
    } else {
        // a x + c y = 1, so (d, b) = (x, -y) solves a d - b c = 1
        let mut d = eg.x;
        let mut b = -eg.y;
        if b.is_odd() {
            d += c;
            b += a;
        }
        let s = a.signum();
        let modulus = 2 * c.abs();
        let signed = &d * &s;
        let t = (signed.mod_floor(&modulus) - &signed) / (2 * c * &s);
        d += 2 * c * &t;
        b += 2 * a * &t;
        (b, d)
    };
    let z = BigInt::zero;
    let m = IntMatrix::from_rows(&[
        vec![a.clone(), b, z()],
        vec![c.clone(), d, z()],
        vec![z(), z(), BigInt::one()],
    ])?;
    debug_assert!(m.det()?.is_one());
    Ok(m)
}

/// Integer matrix of determinant one reducing to `mbar` mod 2.
///
/// `mbar` is reduced to the identity using only `row_i += row_j`; each of
/// those steps lifts to `E + E_ij`.
pub fn lift_mod2(mbar: &Gf2Matrix) -> Result<IntMatrix> {
    let n = mbar.rows();
    if n != mbar.cols() || !mbar.is_invertible() {
        return Err(Error::SingularMod2);
    }
    let mut work = mbar.clone();
    let mut ops = Vec::new();
    let mut apply = |w: &mut Gf2Matrix, i: usize, j: usize| {
        w.add_row(i, j);
        ops.push((i, j));
    };
    for j in 0..n {
        if !work.get(j, j) {
            let p = (j + 1..n)
                .find(|&r| work.get(r, j))
                .expect("invertible matrix has a pivot");
            apply(&mut work, j, p);
        }
        for r in 0..n {
            if r != j && work.get(r, j) {
                apply(&mut work, r, j);
            }
        }
    }
    debug_assert!(work.is_identity());
    // L_k ... L_1 mbar = I and every L is an involution mod 2.
    let mut m = IntMatrix::identity(n);
    for (i, j) in ops {
        for r in 0..n {
            let t = m[(r, i)].clone();
            m[(r, j)] += t;
        }
    }
    Ok(m)
}

/// A matrix congruent to the identity mod 2 whose column `j` is `v`.
///
/// Needs `v` primitive with `v_j` odd and every other entry even. The
/// coordinates off `j` are `s * u` with `u` primitive; in a basis starting
/// `e_j, u` the map is the 2x2 block of `lift_row_to_sl3(v_j, s)`.
pub fn gamma2_with_column(v: &[BigInt], j: usize) -> Result<IntMatrix> {
    let n = v.len();
    if j >= n {
        return Err(Error::Precondition(format!(
            "column {j} out of range for rank {n}"
        )));
    }
    if v[j].is_even() || v.iter().enumerate().any(|(i, x)| i != j && x.is_odd()) {
        return Err(Error::Parity(
            "column must be congruent to a unit vector mod 2".into(),
        ));
    }
    let rest: Vec<BigInt> = (0..n).filter(|&i| i != j).map(|i| v[i].clone()).collect();
    let (s, u) = content_and_primitive(&rest);
    if s.is_zero() {
        return match &v[j] {
            x if x.is_one() => Ok(IntMatrix::identity(n)),
            x if (-x).is_one() => Ok(IntMatrix::identity(n).scale(&BigInt::from(-1))),
            _ => Err(Error::NotPrimitive),
        };
    }
    let block = lift_row_to_sl3(&v[j], &s).map_err(|e| match e {
        Error::NotCoprime { .. } => Error::NotPrimitive,
        other => other,
    })?;
    let inner = complete_to_basis(&u)?;
    // basis change: column 0 -> e_j, column k >= 1 -> inner column k-1 placed off j
    let mut w = IntMatrix::zeros(n, n);
    w[(j, 0)] = BigInt::one();
    for k in 0..n - 1 {
        for (r, row) in (0..n).filter(|&i| i != j).enumerate() {
            w[(row, k + 1)] = inner[(r, k)].clone();
        }
    }
    let mut local = IntMatrix::identity(n);
    for r in 0..2 {
        for c in 0..2 {
            local[(r, c)] = block[(r, c)].clone();
        }
    }
    let rho = w.conjugate(&local)?;
    if rho.column(j) != v {
        return Err(Error::Postcondition(
            "constructed map misses the target column".into(),
        ));
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::in_gamma;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn row_lift_examples() {
        assert_eq!(
            lift_row_to_sl3(&b(3), &b(2)).unwrap(),
            IntMatrix::from_i64(&[&[3, 4, 0], &[2, 3, 0], &[0, 0, 1]])
        );
        assert!(lift_row_to_sl3(&b(1), &b(0)).unwrap().is_identity());
        assert_eq!(
            lift_row_to_sl3(&b(-1), &b(2)).unwrap(),
            IntMatrix::from_i64(&[&[-1, 0, 0], &[2, -1, 0], &[0, 0, 1]])
        );
    }

    #[test]
    fn row_lift_oracle_search() {
        // every admissible (b, d) with small entries; ours must be among them
        for a in [-7i64, -3, -1, 1, 5, 9] {
            for c in [-6i64, -4, -2, 2, 4, 8] {
                if num_integer::gcd(a, c) != 1 {
                    continue;
                }
                let m = lift_row_to_sl3(&b(a), &b(c)).unwrap();
                let (bb, dd) = (m[(0, 1)].clone(), m[(1, 1)].clone());
                assert_eq!(b(a) * &dd - &bb * b(c), b(1));
                assert!(bb.is_even() && dd.is_odd());
                assert!(in_gamma(&m, &b(2)).unwrap());
            }
        }
    }

    #[test]
    fn row_lift_errors() {
        assert!(matches!(
            lift_row_to_sl3(&b(2), &b(2)),
            Err(Error::Parity(_))
        ));
        assert!(matches!(
            lift_row_to_sl3(&b(3), &b(6)),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            lift_row_to_sl3(&b(3), &b(0)),
            Err(Error::NotCoprime { .. })
        ));
    }

    #[test]
    fn mod2_lift_swap() {
        let swap = Gf2Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            lift_mod2(&swap).unwrap(),
            IntMatrix::from_i64(&[&[2, 3], &[1, 2]])
        );
        assert!(lift_mod2(&Gf2Matrix::identity(4)).unwrap().is_identity());
        let sing = Gf2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(lift_mod2(&sing), Err(Error::SingularMod2));
    }

    #[test]
    fn mod2_lift_gl3_exhaustive() {
        let mut count = 0;
        for code in 0..(1u64 << 9) {
            let g = Gf2Matrix::from_code(3, 3, code);
            if !g.is_invertible() {
                continue;
            }
            count += 1;
            let m = lift_mod2(&g).unwrap();
            assert!(m.det().unwrap().is_one());
            assert_eq!(m.to_gf2(), g);
        }
        assert_eq!(count, 168);
    }

    #[test]
    fn column_realization() {
        let v: Vec<BigInt> = [4, 3, -6].iter().map(|&x| b(x)).collect();
        let rho = gamma2_with_column(&v, 1).unwrap();
        assert_eq!(rho.column(1), v);
        assert!(in_gamma(&rho, &b(2)).unwrap());
        let minus: Vec<BigInt> = [0, -1].iter().map(|&x| b(x)).collect();
        let rho = gamma2_with_column(&minus, 1).unwrap();
        assert_eq!(rho.column(1), minus);
        assert!(gamma2_with_column(&[b(1), b(1)], 0).is_err());
    }
}
