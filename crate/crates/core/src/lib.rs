//! Exact algebra for symmetrizable quantum groups realized through quivers
//! with admissible automorphisms.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`]: Laurent polynomials over cyclotomic integers, rational
//!   functions in `v^{1/d}`, quantum integers and `v^{-1}`-adic expansions.
//! * [`cartan`]: symmetrizable generalized Cartan matrices and weights.
//! * [`quiver`]: quivers with admissible automorphisms and framings.
//! * [`module`]: integrable highest-weight modules `L(λ)` with exact
//!   generator matrices and relation checks.
//! * [`forms`]: contravariant forms and almost-orthogonality.
//! * [`tensor`] and [`rmatrix`]: coproduct modules, the quasi-R-matrix,
//!   braidings and the Yang–Baxter equation.
//! * [`crystal`]: monomial crystals, tensor products, orbit folding.
//! * [`oracle`]: Freudenthal and Weyl-dimension oracles, independent of the
//!   module code.

pub mod acceptance;
pub mod arith;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod quiver;
pub mod report;
pub mod rmatrix;
pub mod tensor;

pub use error::{Error, Result};
