//! Exact computations in GL(n,Z): lattices and normal forms, involution
//! canonical forms, transvections, congruence subgroups and seeded
//! verification suites.

pub mod congruence;
pub mod error;
pub mod exactmat;
pub mod involution;
pub mod transvection;
pub mod verify;

pub use congruence::{ElementaryFactor, Factorization};
pub use error::{Error, Result};
pub use exactmat::{ElementOrder, Gf2Matrix, IntMatrix, Lattice, Vector};
pub use involution::{CanonicalBasis, InvolutionKind, InvolutionProfile};
pub use transvection::TransvectionData;
pub use verify::{run_suite, Suite, SuiteReport};
