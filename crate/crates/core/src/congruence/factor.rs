use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmat::matrix::bigint_to_json;
use crate::exactmat::IntMatrix;

/// `E + c E_ij` with `i != j` (0-based here, 1-based in JSON).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryFactor {
    pub row: usize,
    pub col: usize,
    pub c: BigInt,
}

impl ElementaryFactor {
    pub fn new(row: usize, col: usize, c: impl Into<BigInt>) -> Self {
        assert_ne!(row, col, "elementary factor needs distinct indices");
        ElementaryFactor {
            row,
            col,
            c: c.into(),
        }
    }

    pub fn matrix(&self, n: usize) -> IntMatrix {
        IntMatrix::elementary(n, self.row, self.col, self.c.clone())
    }

    pub fn inverse(&self) -> Self {
        ElementaryFactor::new(self.row, self.col, -&self.c)
    }
}

impl Serialize for ElementaryFactor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "i": self.row + 1,
            "j": self.col + 1,
            "c": bigint_to_json(&self.c),
        })
        .serialize(s)
    }
}

/// Ordered product of elementary factors, read left to right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub n: usize,
    pub factors: Vec<ElementaryFactor>,
}

impl Factorization {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> IntMatrix {
        let mut acc = IntMatrix::identity(self.n);
        for f in &self.factors {
            // right-multiplying by E + cE_ij adds c * column i to column j
            for r in 0..self.n {
                let t = &f.c * &acc[(r, f.row)];
                acc[(r, f.col)] += t;
            }
        }
        acc
    }
}

struct RowReducer {
    a: Vec<Vec<BigInt>>,
    // row ops in application order: row[i] += c * row[j]
    ops: Vec<ElementaryFactor>,
}

impl RowReducer {
    fn add(&mut self, i: usize, j: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let src = self.a[j].clone();
        for (x, y) in self.a[i].iter_mut().zip(&src) {
            *x += &c * y;
        }
        self.ops.push(ElementaryFactor::new(i, j, c));
    }
}

/// Writes a determinant-one matrix as a product of elementary transvections.
///
/// Euclidean row reduction to a diagonal of signs; pairs of `-1` entries
/// are cleared with `([[0,-1],[1,0]])^2 = -I`, each rotation spelled as
/// three elementary factors. The length is whatever falls out; no bound is
/// promised.
pub fn elementary_factorization(m: &IntMatrix) -> Result<Factorization> {
    let n = m.order()?;
    let det = m.det()?;
    if !det.is_one() {
        return Err(Error::DeterminantNotOne {
            det: det.to_string(),
        });
    }
    let mut red = RowReducer {
        a: m.to_rows(),
        ops: Vec::new(),
    };
    for j in 0..n {
        let pivot_row = loop {
            let rows: Vec<usize> = (j..n).filter(|&r| !red.a[r][j].is_zero()).collect();
            let s = *rows
                .iter()
                .min_by(|&&x, &&y| red.a[x][j].abs().cmp(&red.a[y][j].abs()))
                .expect("determinant one keeps every column nonzero below the diagonal");
            if rows.len() == 1 {
                break s;
            }
            for &r in &rows {
                if r != s {
                    let q = red.a[r][j].div_floor(&red.a[s][j]);
                    red.add(r, s, -q);
                }
            }
        };
        if pivot_row != j {
            red.add(j, pivot_row, BigInt::one());
            red.add(pivot_row, j, BigInt::from(-1));
        }
        let pivot = red.a[j][j].clone();
        debug_assert!(pivot.abs().is_one());
        for r in 0..n {
            if r != j && !red.a[r][j].is_zero() {
                let q = &red.a[r][j] * &pivot;
                red.add(r, j, -q);
            }
        }
    }
    let negative: Vec<usize> = (0..n).filter(|&i| red.a[i][i].is_negative()).collect();
    for pair in negative.chunks(2) {
        let [i, k] = pair else {
            unreachable!("determinant one has an even number of -1 entries")
        };
        for _ in 0..2 {
            red.add(*k, *i, BigInt::one());
            red.add(*i, *k, BigInt::from(-1));
            red.add(*k, *i, BigInt::one());
        }
    }
    debug_assert!((0..n).all(|i| (0..n).all(|j| red.a[i][j] == BigInt::from(i64::from(i == j)))));

    // L_k ... L_1 M = I, so M = L_1^{-1} ... L_k^{-1}.
    let factors = red.ops.iter().map(ElementaryFactor::inverse).collect();
    let fact = Factorization { n, factors };
    if fact.product() != *m {
        return Err(Error::Postcondition(
            "factorization does not reconstruct input".into(),
        ));
    }
    Ok(fact)
}

/// Mod-2 class of one factor: trivial iff `c` is even, in which case the
/// factor is the square of `E + (c/2) E_ij`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorClass {
    pub trivial_mod2: bool,
    pub square_root: Option<ElementaryFactor>,
}

pub fn factor_mod2_classes(f: &Factorization) -> Vec<FactorClass> {
    f.factors
        .iter()
        .map(|e| {
            let trivial = e.c.is_even();
            FactorClass {
                trivial_mod2: trivial,
                square_root: trivial.then(|| ElementaryFactor::new(e.row, e.col, &e.c / 2)),
            }
        })
        .collect()
}
