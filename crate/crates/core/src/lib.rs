//! Exact computations with Mackey, Green and Tambara functors over cyclic
//! groups built from Galois field extensions.

pub mod algebra;
pub mod atoms;
pub mod boxprod;
pub mod display;
pub mod error;
pub mod etale;
pub mod extension;
pub mod field;
pub mod green;
pub mod lattice;
pub mod linalg;
pub mod mackey;
pub mod modules;
pub mod oracles;
pub mod poly;
pub mod presented;
pub mod random;

pub use error::{Error, Result};
pub use field::{field_arith, ArithOp, Field, FieldKind, FieldScalar, Scalar};
