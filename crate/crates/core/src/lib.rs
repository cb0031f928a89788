//! Finite semifields of small prime-power order through their standard
//! bases: exact GF(p) linear algebra, 3-cubes and their transforms, semifield
//! invariants, isotopy classification and backtracking search.

pub mod algebra;
pub mod classify;
pub mod cube;
pub mod error;
pub mod fixtures;
pub mod gf;
pub mod search;

pub use error::{Error, Result};
