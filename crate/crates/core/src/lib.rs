#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod graph;
pub mod json;
pub mod lattice;
pub mod monoid;
pub mod polyhedra;
pub mod subdivision;
pub mod tropical;

pub use error::{Error, Result};
pub use graph::{small_multigraphs, Cut, Edge, TropicalGraph};
pub use monoid::{divisors, Level, Root, SharpMonoid};
pub use polyhedra::{Fan, RationalCone};
pub use tropical::{BasicModel, PlFunction, RealFamily, TropicalCurve};
