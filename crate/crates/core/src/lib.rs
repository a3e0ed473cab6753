//! Creative telescoping for D-finite functions using integral bases.
//!
//! The crate works in the module `A = K(x)[∂x]/⟨L⟩` over `K = ℚ(t)`. Given a
//! global integral basis and a local integral basis at infinity, it performs
//! Hermite reduction, polynomial reduction and the telescoper search built on
//! top of them.

pub mod algebra;
pub mod basis;
pub mod error;
pub mod hermite;
pub mod ore;
pub mod polyred;
pub mod problem;
pub mod telescope;

pub use error::{Error, Result};
