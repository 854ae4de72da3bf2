use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmat::matrix::{serde_vector, IntMatrix, Vector};
use crate::exactmat::snf::smith_normal_form;

/// Column-style Hermite normal form `H = A V` with `V` unimodular.
///
/// The first `rank` columns of `form` are the canonical basis; the rest are
/// zero, so the matching columns of `transform` span `ker A`.
#[derive(Debug, Clone)]
pub struct ColumnHermite {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    pub rank: usize,
    /// Row holding the leading (positive) entry of each basis column.
    pub pivots: Vec<usize>,
}

fn col_sub(cols: &mut [Vector], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (t, s) = if target < source {
        let (lo, hi) = cols.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = cols.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s) {
        *x -= q * y;
    }
}

/// Column Hermite form: pivots move strictly down, each pivot is positive,
/// and entries left of a pivot are reduced into `[0, pivot)`.
pub fn column_hermite(a: &IntMatrix) -> ColumnHermite {
    let (m, k) = (a.rows(), a.cols());
    let mut h = a.columns();
    let mut v = IntMatrix::identity(k).columns();
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..m {
        if c == k {
            break;
        }
        let mut found = false;
        loop {
            let best = (c..k)
                .filter(|&j| !h[j][i].is_zero())
                .min_by(|&x, &y| h[x][i].abs().cmp(&h[y][i].abs()));
            let Some(p) = best else { break };
            found = true;
            h.swap(c, p);
            v.swap(c, p);
            let mut clean = true;
            for j in c + 1..k {
                if h[j][i].is_zero() {
                    continue;
                }
                let q = h[j][i].div_floor(&h[c][i]);
                col_sub(&mut h, j, c, &q);
                col_sub(&mut v, j, c, &q);
                clean &= h[j][i].is_zero();
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[c][i].is_negative() {
            for x in h[c].iter_mut().chain(v[c].iter_mut()) {
                *x = -&*x;
            }
        }
        for j in 0..c {
            let q = h[j][i].div_floor(&h[c][i]);
            col_sub(&mut h, j, c, &q);
            col_sub(&mut v, j, c, &q);
        }
        pivots.push(i);
        c += 1;
    }
    ColumnHermite {
        form: IntMatrix::from_columns(m, &h).expect("column lengths are uniform"),
        transform: IntMatrix::from_columns(k, &v).expect("column lengths are uniform"),
        rank: c,
        pivots,
    }
}

/// Sublattice of `Z^n`, stored in canonical column-Hermite form so that
/// equal sublattices have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl Lattice {
    /// Lattice spanned by the columns of `generators` (zero columns allowed).
    pub fn from_generators(generators: &IntMatrix) -> Lattice {
        let ch = column_hermite(generators);
        let cols: Vec<Vector> = (0..ch.rank).map(|j| ch.form.column(j)).collect();
        Lattice {
            ambient: generators.rows(),
            basis: IntMatrix::from_columns(generators.rows(), &cols).expect("uniform columns"),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: &[Vector]) -> Result<Lattice> {
        Ok(Self::from_generators(&IntMatrix::from_columns(
            ambient, vectors,
        )?))
    }

    pub fn zero(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: IntMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Lattice {
        Lattice {
            ambient,
            basis: IntMatrix::identity(ambient),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// `n x k` basis matrix, one generator per column.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.columns()
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v` is not in
    /// the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vector> {
        if v.len() != self.ambient {
            return None;
        }
        let mut rest = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for j in 0..self.rank() {
            let pivot_row = (0..self.ambient)
                .find(|&i| !self.basis[(i, j)].is_zero())
                .expect("basis columns are nonzero");
            if rest[..pivot_row].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[pivot_row].div_rem(&self.basis[(pivot_row, j)]);
            if !r.is_zero() {
                return None;
            }
            for (i, x) in rest.iter_mut().enumerate().skip(pivot_row) {
                *x -= &q * &self.basis[(i, j)];
            }
            coeffs.push(q);
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Image of the lattice under a linear map.
    pub fn image(&self, map: &IntMatrix) -> Result<Lattice> {
        if map.cols() != self.ambient {
            return Err(Error::dims(self.ambient, map.cols()));
        }
        Ok(Lattice::from_generators(&map.checked_mul(&self.basis)?))
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::dims(self.ambient, other.ambient));
        }
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors());
        Lattice::from_vectors(self.ambient, &cols)
    }

    /// Smallest sublattice with torsion-free quotient containing `self`,
    /// read off the left transform of the Smith normal form of the basis.
    pub fn saturate(&self) -> Lattice {
        if self.rank() == 0 {
            return self.clone();
        }
        let snf = smith_normal_form(&self.basis);
        let cols: Vec<Vector> = (0..self.rank()).map(|j| snf.left_inv.column(j)).collect();
        Lattice::from_vectors(self.ambient, &cols).expect("uniform columns")
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate() == *self
    }
}

impl Serialize for Lattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Col<'a>(#[serde(with = "serde_vector")] &'a Vector);
        #[derive(Serialize)]
        struct Repr<'a> {
            ambient_rank: usize,
            rank: usize,
            basis: Vec<Col<'a>>,
        }
        let cols = self.basis_vectors();
        Repr {
            ambient_rank: self.ambient,
            rank: self.rank(),
            basis: cols.iter().map(Col).collect(),
        }
        .serialize(s)
    }
}

/// Canonical lattice spanned by the columns of `cols`.
pub fn hnf(cols: &IntMatrix) -> Lattice {
    Lattice::from_generators(cols)
}

/// `{v : M v = 0}`; always saturated since it is cut out by a unimodular
/// change of coordinates.
pub fn kernel_lattice(m: &IntMatrix) -> Lattice {
    let ch = column_hermite(m);
    let k = m.cols();
    let cols: Vec<Vector> = (ch.rank..k).map(|j| ch.transform.column(j)).collect();
    Lattice::from_vectors(k, &cols).expect("uniform columns")
}

/// Index `[Z^n : L1 + L2]` of an internal direct sum with full total rank.
pub fn summand_index(l1: &Lattice, l2: &Lattice) -> Result<BigInt> {
    let n = l1.ambient_rank();
    if l2.ambient_rank() != n {
        return Err(Error::dims(n, l2.ambient_rank()));
    }
    if l1.rank() + l2.rank() != n {
        return Err(Error::Precondition(format!(
            "ranks {} + {} do not add up to {n}",
            l1.rank(),
            l2.rank()
        )));
    }
    let mut cols = l1.basis_vectors();
    cols.extend(l2.basis_vectors());
    let det = IntMatrix::from_columns(n, &cols)?.det()?;
    if det.is_zero() {
        return Err(Error::Precondition(
            "lattices intersect nontrivially".to_string(),
        ));
    }
    Ok(det.abs())
}

/// Splits `v = content * primitive`; the zero vector has content 0.
pub fn content_and_primitive(v: &[BigInt]) -> (BigInt, Vector) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return (g, v.to_vec());
    }
    let p = v.iter().map(|x| x / &g).collect();
    (g, p)
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content_and_primitive(v).0 == BigInt::from(1)
}

/// Unimodular matrix whose first column is the primitive vector `v`.
pub fn complete_to_basis(v: &[BigInt]) -> Result<IntMatrix> {
    if !is_primitive(v) {
        return Err(Error::NotPrimitive);
    }
    let row = IntMatrix::from_rows(&[v.to_vec()])?;
    // v^T W = e_1^T, so the first column of (W^T)^{-1} is v.
    let ch = column_hermite(&row);
    ch.transform.transpose().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn line(xs: &[i64]) -> Lattice {
        Lattice::from_vectors(xs.len(), &[v(xs)]).unwrap()
    }

    #[test]
    fn hnf_examples() {
        let l = hnf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(l.basis(), &IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));

        let l = hnf(&IntMatrix::from_i64(&[&[1, 1], &[0, 0]]));
        assert_eq!(l, line(&[1, 0]));

        let l = hnf(&IntMatrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(l.rank(), 1);
        assert_eq!(l, line(&[2, 1]));
    }

    #[test]
    fn hnf_rejects_nothing_on_zero_columns() {
        let l = hnf(&IntMatrix::zeros(3, 2));
        assert_eq!(l, Lattice::zero(3));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_lattice(&IntMatrix::zeros(3, 3)), Lattice::full(3));
        assert_eq!(
            kernel_lattice(&IntMatrix::from_i64(&[&[0, 0], &[-1, -2]])),
            line(&[-2, 1])
        );
        assert_eq!(
            kernel_lattice(&IntMatrix::from_i64(&[&[2, 0], &[-1, 0]])),
            line(&[0, 1])
        );
    }

    #[test]
    fn summand_index_examples() {
        assert_eq!(
            summand_index(&line(&[1, 0]), &line(&[0, 1])).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            summand_index(&line(&[-2, 1]), &line(&[0, 1])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            summand_index(&line(&[1, 1]), &line(&[1, -1])).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn summand_index_precondition_errors() {
        let e = summand_index(&line(&[1, 1]), &line(&[2, 2])).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
        let e = summand_index(&line(&[1, 1, 0]), &line(&[0, 1, 0])).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
    }

    #[test]
    fn content_examples() {
        assert_eq!(
            content_and_primitive(&v(&[0, 2, 3])),
            (BigInt::from(1), v(&[0, 2, 3]))
        );
        assert_eq!(
            content_and_primitive(&v(&[4, 6])),
            (BigInt::from(2), v(&[2, 3]))
        );
        assert_eq!(
            content_and_primitive(&v(&[0, 0])),
            (BigInt::from(0), v(&[0, 0]))
        );
        assert_eq!(
            content_and_primitive(&v(&[-4, 6])),
            (BigInt::from(2), v(&[-2, 3]))
        );
    }

    #[test]
    fn saturation() {
        let l = line(&[2, 4]);
        assert!(!l.is_saturated());
        assert_eq!(l.saturate(), line(&[1, 2]));
        let plane = Lattice::from_vectors(3, &[v(&[2, 0, 0]), v(&[0, 3, 3])]).unwrap();
        let sat = plane.saturate();
        assert_eq!(
            sat,
            Lattice::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 1])]).unwrap()
        );
    }

    #[test]
    fn coordinates_and_membership() {
        let l = Lattice::from_vectors(3, &[v(&[2, 1, 0]), v(&[0, 3, 1])]).unwrap();
        let x = v(&[4, 5, 1]);
        let c = l.coordinates(&x).unwrap();
        assert_eq!(l.basis().mul_vec(&c), x);
        assert!(!l.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn completion_has_first_column() {
        let u = complete_to_basis(&v(&[3, 5, 7])).unwrap();
        assert_eq!(u.column(0), v(&[3, 5, 7]));
        assert!(u.det().unwrap().abs() == BigInt::from(1));
        assert_eq!(
            complete_to_basis(&v(&[2, 4])).unwrap_err(),
            Error::NotPrimitive
        );
    }
}
