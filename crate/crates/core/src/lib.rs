//! Exact computation in Leavitt path algebras of finite graphs.
//!
//! The crate covers the normal-form basis of `L(E)` and its multiplication,
//! extended branching systems and extended representation graphs, the three
//! canonical families of connected representation graphs, and the module
//! actions they induce (including submodule closures and hom spaces at finite
//! truncation depth).
//!
//! ```
//! use leavitt::{algebra::AlgebraElement, examples, field::Rational};
//!
//! let amb = examples::r2("d");
//! let x = AlgebraElement::<Rational>::parse(&amb, "d.d*", true).unwrap();
//! assert_eq!(x.to_string(), "v - e.e*");
//! ```

pub mod algebra;
pub mod basis;
pub mod branching;
pub mod canonical;
pub mod error;
pub mod examples;
pub mod field;
pub mod graph;
pub mod io;
pub mod modules;

pub use error::{Error, Result};
