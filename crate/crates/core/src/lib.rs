//! Exact multi-index regularity structures for scalar semi-linear singular SPDEs.
//!
//! The crate builds, from an [`EquationSpec`], the populated multi-indices,
//! the derivation algebra acting on them, its enveloping algebra and the
//! exponential maps attached to characters, and finally the symbolic model
//! and renormalized equations.

pub mod character;
pub mod check;
pub mod deriv;
pub mod enumerate;
pub mod envelope;
pub mod error;
pub mod grading;
pub mod hom;
pub mod index;
pub mod nonlin;
pub mod renorm;
pub mod ring;
pub mod spec;
pub mod symbolic;
pub mod tree;

pub use error::{Error, Result};
pub use hom::Homogeneity;
pub use index::{CoordSymbol, DerivativeWord, KWord, Label, MultiIndex};
pub use spec::{builtin_spec, EquationSpec};

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;
