//! Effect algebras and effect monoids.
//!
//! [`model`] defines the contract every model implements, [`models`] the
//! concrete instances, [`calculus`] the derived operations and [`decompose`]
//! the idempotent analysis. [`expr`] is a small term language over any model.

pub mod calculus;
pub mod check;
pub mod decompose;
pub mod expr;
mod error;
pub mod finite;
pub mod laws;
pub mod model;
pub mod models;
pub mod morphism;
pub mod scalar;

pub use check::{check_effect_algebra, check_effect_monoid, AxiomReport, CheckMode, Violation};
pub use error::{Error, Result};
pub use finite::{load_structure, save_structure, FiniteAlgebra, FiniteMonoid, FiniteStructure};
pub use model::{EffectAlgebra, EffectMonoid};
pub use models::{Cx, Interval, Interval32, RationalCx, RationalInterval};
