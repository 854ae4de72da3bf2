use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmat::gf2::Gf2Matrix;

/// Integer column vector.
pub type Vector = Vec<BigInt>;

/// Dense matrix of arbitrary-precision integers, stored row-major.
///
/// Square matrices model endomorphisms of `Z^n` acting on column vectors;
/// rectangular ones show up as lattice bases (one generator per column).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. All rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dims(
                    format!("{cols} entries in every row"),
                    format!("{} entries in row {i}", row.len()),
                ));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Shorthand for literals in code and tests. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&owned).expect("ragged matrix literal")
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::dims(rows, col.len()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &d) in entries.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        m
    }

    /// `I + c * E_ij`.
    pub fn elementary(n: usize, i: usize, j: usize, c: impl Into<BigInt>) -> Self {
        let mut m = Self::identity(n);
        m[(i, j)] += c.into();
        m
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m[(i, j)] = BigInt::one();
        }
        m
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix; errors otherwise.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[BigInt]) -> Vector {
        assert_eq!(v.len(), self.rows, "vector-matrix dimension mismatch");
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * &self[(i, j)]).sum())
            .collect()
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::dims(
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let n = self.order().expect("pow of non-square matrix");
        let mut base = self.clone();
        let mut acc = Self::identity(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.order()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut a = self.to_rows();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for i in rank + 1..m {
                for j in col + 1..n {
                    let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                    a[i][j] = v / &prev;
                }
                a[i][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Checks `|det| = 1`, returning the determinant.
    pub fn require_automorphism(&self) -> Result<BigInt> {
        let d = self.det()?;
        if d.abs().is_one() {
            Ok(d)
        } else {
            Err(Error::NotAutomorphism { det: d.to_string() })
        }
    }

    /// Inverse of a unimodular matrix, computed by exact row reduction.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let n = self.order()?;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            // Euclid on column `col` below the diagonal.
            loop {
                let pivot = (col..n)
                    .filter(|&r| !a[r][col].is_zero())
                    .min_by(|&r, &s| a[r][col].abs().cmp(&a[s][col].abs()));
                let Some(p) = pivot else {
                    return Err(Error::NotAutomorphism {
                        det: "0".to_string(),
                    });
                };
                a.swap(col, p);
                inv.swap(col, p);
                let mut done = true;
                for r in col + 1..n {
                    if a[r][col].is_zero() {
                        continue;
                    }
                    let q = a[r][col].div_floor(&a[col][col]);
                    row_sub(&mut a, r, col, &q);
                    row_sub(&mut inv, r, col, &q);
                    if !a[r][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if !a[col][col].abs().is_one() {
                let d = self.det()?;
                return Err(Error::NotAutomorphism { det: d.to_string() });
            }
            if a[col][col].is_negative() {
                for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                    *x = -&*x;
                }
            }
        }
        for col in (0..n).rev() {
            for r in 0..col {
                let q = a[r][col].clone();
                if !q.is_zero() {
                    row_sub(&mut a, r, col, &q);
                    row_sub(&mut inv, r, col, &q);
                }
            }
        }
        Self::from_rows(&inv)
    }

    /// `self * other * self^{-1}`.
    pub fn conjugate(&self, other: &IntMatrix) -> Result<IntMatrix> {
        let inv = self.inverse()?;
        Ok(&(self * other) * &inv)
    }

    pub fn commutes_with(&self, other: &IntMatrix) -> bool {
        self * other == other * self
    }

    /// Group commutator `a b a^{-1} b^{-1}`.
    pub fn commutator(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
        Ok(&(&(a * b) * &a.inverse()?) * &b.inverse()?)
    }

    pub fn reduce_mod(&self, m: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.mod_floor(m)).collect(),
        }
    }

    pub fn to_gf2(&self) -> Gf2Matrix {
        let two = BigInt::from(2);
        let mut g = Gf2Matrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                g.set(i, j, !self[(i, j)].is_multiple_of(&two));
            }
        }
        g
    }

    /// Square sub-block `[start, start + len)` on both axes.
    pub fn principal_block(&self, start: usize, len: usize) -> IntMatrix {
        let mut b = Self::zeros(len, len);
        for i in 0..len {
            for j in 0..len {
                b[(i, j)] = self[(start + i, start + j)].clone();
            }
        }
        b
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.data.iter().map(Signed::abs).max().unwrap_or_default()
    }
}

fn row_sub(a: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (lo, hi) = a.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// JSON integer that stays lossless: a number while it fits in 64 bits,
/// a decimal string beyond that.
pub(crate) mod json_int {
    use super::*;
    use num_traits::ToPrimitive;
    use serde::de::Error as _;

    pub fn to_value(x: &BigInt) -> serde_json::Value {
        match x.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::String(x.to_string()),
        }
    }

    pub fn from_value(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
        match v {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(BigInt::from(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(BigInt::from(u))
                } else {
                    Err(format!("non-integer number {n}"))
                }
            }
            serde_json::Value::String(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|_| format!("invalid integer string {s:?}")),
            other => Err(format!("expected integer, found {other}")),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        from_value(&v).map_err(D::Error::custom)
    }
}

pub use json_int::{from_value as bigint_from_json, to_value as bigint_to_json};

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(json_int::to_value).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(json_int::from_value)
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        IntMatrix::from_rows(&parsed).map_err(D::Error::custom)
    }
}

/// Serde adapter for a single `BigInt` field.
pub mod serde_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        json_int::to_value(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        json_int::deserialize(d)
    }
}

/// Serde adapter for `Vec<BigInt>`.
pub mod serde_vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let vals: Vec<serde_json::Value> = v.iter().map(json_int::to_value).collect();
        vals.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vector, D::Error> {
        use serde::de::Error as _;
        let vals: Vec<serde_json::Value> = Vec::deserialize(d)?;
        vals.iter()
            .map(json_int::from_value)
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small() {
        assert_eq!(
            IntMatrix::from_i64(&[&[3, 4], &[2, 3]]).det().unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(),
            BigInt::from(-1)
        );
        let m = IntMatrix::from_i64(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det().unwrap(), BigInt::from(0));
        let m = IntMatrix::from_i64(&[&[0, 2, 1], &[1, 3, 2], &[4, 1, 1]]);
        // 0 - 2(1-8) + 1(1-12) = 3
        assert_eq!(m.det().unwrap(), BigInt::from(3));
    }

    #[test]
    fn rank_over_q() {
        assert_eq!(IntMatrix::from_i64(&[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(IntMatrix::from_i64(&[&[2, 4], &[1, 2]]).rank(), 1);
        assert_eq!(IntMatrix::from_i64(&[&[0, 0, 1], &[0, 1, 0]]).rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn inverse_of_unimodular() {
        let m = IntMatrix::from_i64(&[&[2, 3], &[1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, IntMatrix::from_i64(&[&[2, -3], &[-1, 2]]));
        let m = IntMatrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, -1, 0]]);
        assert!((&m * &m.inverse().unwrap()).is_identity());
        assert!(IntMatrix::diagonal(&[2, 1]).inverse().is_err());
    }

    #[test]
    fn pow_and_elementary() {
        let e = IntMatrix::elementary(2, 0, 1, 1);
        assert_eq!(e.pow(5), IntMatrix::from_i64(&[&[1, 5], &[0, 1]]));
        assert!(e.pow(0).is_identity());
    }

    #[test]
    fn json_roundtrip_preserves_large_entries() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let mut m = IntMatrix::identity(2);
        m[(0, 1)] = big.clone();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[[1,\"123456789012345678901234567890\"],[0,1]]");
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
