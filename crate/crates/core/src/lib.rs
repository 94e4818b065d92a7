//! Exact computations around binomial edge ideals of graphs.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`] - sparse multivariate polynomials over the rationals,
//!   monomial orders and multigradings;
//! * [`groebner`] - Buchberger engine, normal forms, ideal and radical
//!   membership, plus an independent Macaulay-matrix membership oracle;
//! * [`graph`] - simple graphs, components under vertex deletion, vertex
//!   connectivity and recognition of the special graph families;
//! * [`edgeideal`] - the binomial edge ideal of a graph, its standard
//!   multigradings, minimal supports and minimal primes;
//! * [`complex`] - the simplicial complex attached to a binomial ideal,
//!   matching invariants and spanning checks;
//! * [`bounds`] - the rank engine: assembles every bound, generates the
//!   explicit radical-generation certificates and verifies them.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals,
//! with an optional prime-field mode for the Groebner-heavy checks.

pub mod bounds;
pub mod complex;
pub mod edgeideal;
pub mod error;
pub mod graph;
pub mod groebner;
pub mod poly;

pub use error::{Error, Result};
