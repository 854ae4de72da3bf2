use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmat::IntMatrix;

/// Dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Rows of 0/1 (any integer, reduced mod 2).
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged GF(2) matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x & 1 == 1);
            }
        }
        m
    }

    /// Matrix with the bits of `code` filled in row-major order, low bit first.
    /// Enumerating `code` over `0..2^(rows*cols)` visits every matrix once.
    pub fn from_code(rows: usize, cols: usize, code: u64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for k in 0..rows * cols {
            m.bits[k] = (code >> k) & 1 == 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.cols + j] = v;
    }

    /// `row[target] += row[source]`.
    pub fn add_row(&mut self, target: usize, source: usize) {
        for j in 0..self.cols {
            let s = self.get(source, j);
            if s {
                let t = self.get(target, j);
                self.set(target, j, !t);
            }
        }
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "GF(2) product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for j in 0..other.cols {
                        if other.get(k, j) {
                            let v = out.get(i, j);
                            out.set(i, j, !v);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&r| a.get(r, col)) else {
                continue;
            };
            a.swap_rows(rank, p);
            for r in 0..a.rows {
                if r != rank && a.get(r, col) {
                    a.add_row(r, rank);
                }
            }
            rank += 1;
            if rank == a.rows {
                break;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.bits.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_int(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = if self.get(i, j) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                };
            }
        }
        m
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| u8::from(self.get(i, j))).collect())
            .collect()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(Gf2Matrix::identity(4).rank(), 4);
        assert_eq!(Gf2Matrix::from_rows(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        assert_eq!(
            Gf2Matrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).rank(),
            2
        );
    }

    #[test]
    fn invertible_count_gl2_gl3() {
        let count = |n: usize| {
            (0..1u64 << (n * n))
                .filter(|&c| Gf2Matrix::from_code(n, n, c).is_invertible())
                .count()
        };
        // (2^n - 1)(2^n - 2)...(2^n - 2^(n-1))
        assert_eq!(count(2), 3 * 2);
        assert_eq!(count(3), 7 * 6 * 4);
    }
}
