//! Polynomial GL_n-modules over GF(p): costandard modules, simples, decomposition numbers.

pub mod decomp;
pub mod engine;
pub mod module;
pub mod nabla;
pub mod simple;

pub use decomp::{decomposition_numbers, DecompTable};
pub use engine::{Engine, Guards};
