//! Exact commutative algebra for projected del Pezzo surfaces and the nodal
//! complete intersections that contain them.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod delpezzo;
pub mod error;
pub mod groebner;
pub mod idealops;
pub mod invariants;
pub mod linalg;
pub mod numerology;
pub mod polyring;

pub use error::{Error, Result};
