//! Exact computations over positively weighted `Z`-graded polynomial rings:
//! truncations `S>=e`, minimal free resolutions via Schreyer frames, the
//! associated graded module `gr_m(M)` over the standard-graded companion ring,
//! and three independent certificates that a truncation is a nonstandard
//! Koszul module.

pub mod assoc_graded;
pub mod betti;
pub mod cli;
pub mod complex;
pub mod construction;
pub mod error;
pub mod field;
pub mod gb;
pub mod graded_module;
pub mod koszul_check;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod truncation;

pub use betti::BettiTable;
pub use complex::GradedFreeComplex;
pub use error::{Error, Result};
pub use field::PrimeField;
pub use graded_module::ExplicitGradedModule;
pub use module::{FreeElement, FreeModule, FreeModuleSpec};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::RingSpec;
