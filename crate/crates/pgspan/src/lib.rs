//! Greedy spanner construction and verification toolkit.
//!
//! The crate builds `t`-spanners with the sequential greedy rule (one
//! unspanned edge at a time) and its parallel variant (whole matchings of
//! unspanned edges per round), records matching-round certificates, and
//! verifies everything independently: stretch, certificate validity, girth,
//! degeneracy, exact arboricity via Nash-Williams, and the length-constrained
//! cut quantities used to study the parallel variant at toy scale.
//!
//! Core math is generic over a [`scalar::Scalar`]; exact rationals are the
//! default instantiation (see the aliases below), floats only appear in the
//! approximate routing solver.

pub mod analysis;
pub mod cuts;
pub mod error;
pub mod expdemand;
pub mod generate;
pub mod graph;
pub mod greedy;
pub mod io;
pub mod lp;
pub mod maxflow;
pub mod oracle;
pub mod paths;
pub mod pg;
pub mod radical;
pub mod routing;
pub mod scalar;
pub mod search;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default exact length/value scalar.
pub type Rat = num_rational::Rational64;
/// Wide exact scalar for solver internals and oracles.
pub type BigRat = num_rational::BigRational;
/// Graph with exact rational lengths (unit lengths are just `1`).
pub type RatGraph = graph::Graph<Rat>;
/// Demand with exact rational values.
pub type RatDemand = cuts::Demand<Rat>;
/// Flow with wide exact values (routing rechecks happen here).
pub type BigFlow = cuts::Flow<BigRat>;
