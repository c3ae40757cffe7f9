//! Support τ-tilting enumeration for bound quiver algebras over prime
//! fields, together with the two-part Schur-algebra combinatorics used to
//! classify τ-tilting finiteness of Schur algebras.
//!
//! Layering, bottom to top:
//! - [`field_linalg`]: F_p arithmetic and dense linear algebra.
//! - [`quiver_algebra`]: quivers, relations, exact bases of `FQ/I`, and
//!   algebra operations (center, Cartan matrix, quotients, opposite).
//! - [`modules_rep`]: right modules as representations, Hom, τ,
//!   decomposition and g-vectors.
//! - [`mutation`]: left mutation and Hasse-quiver enumeration.
//! - [`quiver_screens`]: finiteness screens from quiver shape alone.
//! - [`schur`]: partitions, cores, Young characters, Schur quivers,
//!   the named-algebra catalog and the classification engine.
//! - [`cli`]: the `sttilt` command-line front end.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod field_linalg;
pub mod modules_rep;
pub mod mutation;
pub mod quiver_algebra;
pub mod quiver_screens;
pub mod schur;

pub use error::{Error, Result};
