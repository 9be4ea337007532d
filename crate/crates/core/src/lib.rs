//! Exact computer algebra for compatible Lie algebras: pairs of Lie brackets
//! on one space whose every linear combination is again a Lie bracket.

pub mod algebra;
pub mod cli;
pub mod cohomology;
pub mod constraints;
pub mod derivations;
pub mod error;
pub mod extensions;
pub mod families;
pub mod filiform;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result, Which};
pub use scalar::{Assignment, Monomial, Poly, Rational, Scalar};
