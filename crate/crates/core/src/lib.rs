//! Exact combinatorics of integral hyperplane arrangements.
//!
//! The crate builds intersection posets of arrangements over `Q` with exact
//! integer arithmetic and uses them to decide supersolvability, certify
//! freeness, find flag-accurate flags and compute characteristic
//! quasi-polynomials by counting points over `Z/qZ`. The [`families`] and
//! [`digraph`] modules construct the type A and type B deformations of
//! Coxeter arrangements (Shi, Ish, their common descendants, weighted and
//! deleted digraph arrangements) on which these tools are exercised.

pub mod arrangement;
pub mod derivations;
pub mod digraph;
pub mod error;
pub mod exactgeom;
pub mod families;
pub mod freeness;
pub mod poly;
pub mod poset;
pub mod quasipoly;
pub mod scan;

pub use arrangement::{Arrangement, Hyperplane};
pub use error::{Error, Result};
pub use poset::{Flat, IntPolynomial};
