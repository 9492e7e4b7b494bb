//! Enriched matrices over finite commutative quantales.
//!
//! The crate realizes the double category of quantale-valued matrices and the
//! structures that live in it: enriched categories (monads) and cocategories
//! (comonads), their modules and comodules, convolution structures built from
//! the internal hom, and the universal measuring cocategory and comodule
//! together with the tensors that exhibit categories as enriched in
//! cocategories and modules as enriched in comodules. Every universal
//! property is checkable by exhaustive enumeration on small carriers.

pub mod cat;
pub mod cli;
pub mod conv;
pub mod error;
pub mod finset;
pub mod lawcheck;
pub mod module;
pub mod quantale;
pub mod report;
pub mod sweedler;
pub mod vmat;
pub mod workspace;

pub use error::{Error, Result};
pub use finset::{FinFn, FinSet, FunctionSpace};
pub use quantale::{BuiltinKind, Elem, Quantale};
pub use report::Report;
pub use vmat::{Cell2, Limits, VMatrix};
