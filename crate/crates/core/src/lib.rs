//! Computational workbench for quandles.
//!
//! * [`quandle`]: finite quandles as operation tables, group-derived
//!   constructions, isomorphism and automorphism search, enumeration and
//!   the coset realization of homogeneous quandles.
//! * [`topology`]: finite topological spaces and topological quandles on them.
//! * [`affine`]: exact isomorphism decisions for Alexander quandles on the
//!   line, the circle and diagonal `R^n`, with checkable certificates.
//! * [`poly`]: bivariate polynomial solutions of the self-distributivity
//!   equation.
//! * [`geom`]: floating-point sphere, Grassmannian and rotation quandles.
//! * [`coloring`]: quandle coloring counts of braid closures.

pub mod affine;
pub mod coloring;
pub mod error;
pub mod geom;
pub mod poly;
pub mod quandle;
pub mod topology;

pub use error::{Error, ErrorKind, Result};
pub use quandle::{FiniteQuandle, GroupAutomorphism, GroupTable, Perm, PermGroup};
pub use topology::{FiniteSpace, TopQuandle};
