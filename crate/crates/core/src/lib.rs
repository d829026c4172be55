//! Exact Hall-algebra computations for Dynkin quivers over finite fields.
//!
//! The crate counts filtrations of quiver representations and of two-periodic projective
//! complexes over F_q, assembles the Ringel–Hall and Bridgeland Hall algebras from those counts,
//! and checks the quantum-group relations, canonical-basis properties and embedding coefficients
//! exactly, either at a fixed prime q or generically after interpolating in q.
//!
//! Start with [`quiver::DynkinQuiver`] and [`quiver::RepCategory`]; the algebras live in
//! [`hall`], the complexes in [`complex`], and the generic layer in [`generic`].

pub mod coeff;
pub mod complex;
pub mod error;
pub mod generic;
pub mod gf;
pub mod hall;
pub mod io;
pub mod quiver;

pub use error::{Error, Result};
