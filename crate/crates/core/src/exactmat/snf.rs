use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactmat::IntMatrix;

/// `left * A * right = diag(diagonal)` with `left`, `right` unimodular and
/// each diagonal entry dividing the next.
#[derive(Debug, Clone)]
pub struct Smith {
    pub left: IntMatrix,
    pub left_inv: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: Vec<BigInt>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    // row[i] -= q * row[j]
    fn row_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                *x -= q * y;
            }
        }
        // inverse gets col[j] += q * col[i]
        for row in self.u_inv.iter_mut() {
            let t = q * &row[i];
            row[j] += t;
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in self.u_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn row_negate(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = -&row[i];
        }
    }

    // col[i] -= q * col[j]
    fn col_sub(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = q * &row[j];
                row[i] -= t;
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.to_rows(),
        u: IntMatrix::identity(m).to_rows(),
        u_inv: IntMatrix::identity(m).to_rows(),
        v: IntMatrix::identity(n).to_rows(),
    };
    let mut diagonal = Vec::new();
    for t in 0..m.min(n) {
        let smallest = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !w.a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| w.a[i][j].abs().cmp(&w.a[k][l].abs()));
        let Some((pi, pj)) = smallest else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_sub(i, t, &q);
                dirty |= !w.a[i][t].is_zero();
            }
            if dirty {
                let p = (t..m)
                    .filter(|&i| !w.a[i][t].is_zero())
                    .min_by(|&i, &k| w.a[i][t].abs().cmp(&w.a[k][t].abs()))
                    .expect("pivot column is nonzero");
                w.row_swap(t, p);
                continue;
            }
            for j in t + 1..n {
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_sub(j, t, &q);
                dirty |= !w.a[t][j].is_zero();
            }
            if dirty {
                let p = (t..n)
                    .filter(|&j| !w.a[t][j].is_zero())
                    .min_by(|&j, &k| w.a[t][j].abs().cmp(&w.a[t][k].abs()))
                    .expect("pivot row is nonzero");
                w.col_swap(t, p);
                continue;
            }
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.a[i][j].is_multiple_of(&pivot)));
            match bad {
                // Fold the offending row into the pivot row and go again.
                Some(i) => w.row_sub(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.row_negate(t);
        }
        diagonal.push(w.a[t][t].clone());
    }
    Smith {
        left: IntMatrix::from_rows(&w.u).expect("square"),
        left_inv: IntMatrix::from_rows(&w.u_inv).expect("square"),
        right: IntMatrix::from_rows(&w.v).expect("square"),
        diagonal,
    }
}
