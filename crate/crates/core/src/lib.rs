//! Exact mod-2 homological algebra over the Steenrod algebra.

pub mod algebra;
pub mod error;
pub mod f2;
pub mod fiber;
pub mod module;
pub mod les;
pub mod resolution;

pub use algebra::{AlgebraElement, Basis, SteenrodAlgebra};
pub use error::{Error, Result};
pub use f2::{BitMatrix, BitVec};
pub use module::{FreeModule, GradedModule, Module, ModuleHom};
