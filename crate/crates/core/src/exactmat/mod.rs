//! Exact integer and mod-2 linear algebra: matrices over `Z`, canonical
//! lattices, Smith form, GF(2) matrices, element orders and seeded sampling
//! of unimodular matrices.

pub mod gf2;
pub mod lattice;
pub mod matrix;
pub mod random;
pub mod snf;

use serde::Serialize;

pub use gf2::Gf2Matrix;
pub use lattice::{
    column_hermite, complete_to_basis, content_and_primitive, hnf, is_primitive, kernel_lattice,
    summand_index, ColumnHermite, Lattice,
};
pub use matrix::{bigint_from_json, bigint_to_json, IntMatrix, Vector};
pub use random::{random_unimodular, sample_special, sample_unimodular, seeded_rng};
pub use snf::{smith_normal_form, Smith};

/// Result of a bounded order search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementOrder {
    Finite(u64),
    ExceedsBound,
}

impl ElementOrder {
    pub fn value(self) -> Option<u64> {
        match self {
            ElementOrder::Finite(k) => Some(k),
            ElementOrder::ExceedsBound => None,
        }
    }
}

/// Rank over GF(2) of `m` reduced mod 2.
pub fn rank_mod2(m: &IntMatrix) -> usize {
    m.to_gf2().rank()
}

/// Least `k <= bound` with `m^k = I`.
pub fn element_order(m: &IntMatrix, bound: u64) -> ElementOrder {
    if !m.is_square() {
        return ElementOrder::ExceedsBound;
    }
    let mut acc = m.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return ElementOrder::Finite(k);
        }
        acc = &acc * m;
    }
    ElementOrder::ExceedsBound
}
