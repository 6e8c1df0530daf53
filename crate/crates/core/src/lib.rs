//! Heat kernels on discrete tori and the weighted trigonometric sum
//! identities they imply.

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;
pub mod exec;
pub mod graph;
pub mod heat;
pub mod intmat;
pub mod lattice;
pub mod suite;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
