//! Finitely presented graded algebras over `F_p` and `Q`.
//!
//! The crate models algebras given by graded generators and homogeneous
//! relations, with two independent routes to their graded dimensions: a
//! rewriting system producing canonical basis words degree by degree, and an
//! exact linear-algebra oracle that row-reduces each degree slice of the
//! relation ideal. Agreement of the two routes certifies the basis. On top
//! of that sit Hopf-style coproducts with dual pairings and cup products,
//! and integer power series for Poincare-type bookkeeping.

pub mod element;
pub mod error;
pub mod hopf;
pub mod oracle;
pub mod presentation;
pub mod rewrite;
pub mod scalar;
pub mod series;
pub mod word;

pub use element::{Degree, Element};
pub use error::{AlgError, Result};
pub use scalar::{FieldTag, Scalar};
pub use word::{GeneratorTable, Word};
