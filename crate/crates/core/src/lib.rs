pub mod chromatic;
pub mod chromatic_bases;
pub mod error;
pub mod graphs;
pub mod limits;
pub mod ncsym;
pub mod partitions;
pub mod verify;

mod cache;

pub use error::{Error, Result};
pub use ncsym::{Basis, NcSymElement, Rational, SymBasis, SymElement};
pub use partitions::{IntegerPartition, Permutation, SetPartition};
