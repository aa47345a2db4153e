//! Exact linear algebra over finite fields and modular representations of the
//! Heisenberg Lie algebra `h(n)`.

pub mod canonical;
pub mod classify;
pub mod error;
pub mod field;
pub mod heisenberg;
pub mod json;
pub mod matrix;
pub mod module_theory;
pub mod poly;
pub mod subspace;

pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, FieldElem};
pub use heisenberg::{HeisenbergAlgebra, InvariantTuple, ModuleParams, Representation};
pub use matrix::Matrix;
pub use poly::Poly;
pub use subspace::SubspaceBasis;
