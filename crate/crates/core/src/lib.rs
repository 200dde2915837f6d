//! Multiplicative (product) calculus.
//!
//! * [`expr`]: expression language used for every scalar field.
//! * [`scalar`]: product derivative, geometric and Volterra product
//!   integrals, and complex-valued geometric means of sign-changing functions.
//! * [`forms`]: product forms, their ⊕/⊙ vector-space operations, the product
//!   wedge and the q differential.
//! * [`geometry`]: simplices, chains, boundaries and pullbacks.
//! * [`quad`]: Gauss–Legendre quadrature on intervals and standard simplices.
//! * [`stokes`]: product integrals over chains and the Stokes verifier.
//! * [`cli`]: the JSON envelope and command implementations behind the
//!   `prodcalc` binary.

pub mod cli;
pub mod error;
pub mod expr;
pub mod forms;
pub mod geometry;
pub mod quad;
pub mod scalar;
pub mod stokes;

pub use error::{Error, ParseDiagnostic, Result};
pub use expr::Expr;
pub use quad::QuadratureRule;
pub use scalar::{ComplexScalar, Interval, SignProfile};
