//! Exact computations with three-generator geometric quadratic algebras.
//!
//! The crate builds the standard algebras `A(E, σ)` together with their point
//! varieties, twists them by graded automorphisms and twisting systems, and
//! decides the automorphism groups `Z(E,σ) ⊂ M(E,σ) ⊂ N(E,σ)` that govern
//! which twists are realized by automorphisms. All arithmetic is exact, over
//! user-declared towers of number fields.

pub mod catalog;
pub mod classify;
pub mod curve;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
mod parse;
pub mod poly;
pub mod quadalg;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldTower};
pub use linalg::{Matrix3, ProjMap, ProjPoint};
pub use poly::Poly;
