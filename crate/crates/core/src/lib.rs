//! Exact-arithmetic engine for the ZW-calculus extended with the tick
//! generator, interpreted as Hermiticity-preserving superoperators.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod matrix;
pub mod normalform;
pub mod qinfo;
pub mod random;
pub mod rules;
pub mod scalar;
pub mod semantics;
pub mod tensor;
pub mod wiring;

pub use diagram::{Diagram, Generator, Kind};
pub use error::{Error, Result};
pub use matrix::{Matrix, Psd};
pub use scalar::Scalar;
