//! Exact modular data, commutative separable algebras and modular invariants
//! for Drinfeld doubles of finite groups.

pub mod algebras;
pub mod characters;
pub mod cyclotomic;
pub mod cohomology;
pub mod dw;
pub mod error;
pub mod exec;
pub mod group;
pub mod matrix;
pub mod modular;
pub mod products;
pub mod zmod;

pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup};
