//! Binary quadratic forms, their composition, and the lattice / cube
//! models of composition over the integers.
//!
//! Everything is exact: coefficients are [`num_bigint::BigInt`].

pub mod arith;
pub mod cache;
pub mod compose;
pub mod cube;
pub mod error;
pub mod forms;
pub mod intmat;
pub mod json;
pub mod lattice;
pub mod mat2;
pub mod seifert;

pub use error::{Error, Result};
pub use forms::{Form, FormClass, Unimodular};
pub use mat2::Mat2;
