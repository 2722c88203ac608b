//! Exact-arithmetic computational algebra for Cayley-Dickson algebras over ℚ:
//! octonion arithmetic, quadratic-form invariants, explicit automorphisms and
//! derivations of the exceptional group of an octonion algebra, étale-algebra
//! invariants, and validation of maximal-torus data triples.

pub mod arith;
pub mod cd;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod quadform;

pub use error::{Error, Result};
