//! Wasserstein-1 distances between stationary measures of iterated function
//! systems (IFS) on the unit interval.
//!
//! An IFS `f = (f_1, ..., f_k)` of monotone contractions of `[0,1]` together
//! with a probability vector `p` determines a unique stationary measure
//! `mu` with `mu(A) = sum_i p_i mu(f_i^{-1} A)`. When the images are disjoint
//! the cumulative distribution function of `mu` is a Cantor staircase:
//! constant on the gaps, singular on the attractor.
//!
//! This crate computes `W_1` between two such measures along several
//! independent routes and cross-checks them:
//!
//! * [`cdf::Staircase`] — certified piecewise enclosures of the CDF, refined
//!   adaptively by cell mass;
//! * [`transport::w1_numeric`] — exact integration of `|F - G|` over mutual
//!   gaps plus certified bounds over cells;
//! * [`transport::StrategyRegistry`] — a family of closed-form evaluators,
//!   each guarded by the hypotheses it needs;
//! * [`sampler`] — a seeded chaos-game Monte Carlo oracle.
//!
//! The [`symbolic`] module provides the exact-rational machinery behind the
//! alternating word order, its ordered levels, and the crossing-equation
//! search that pins down where two staircases can agree.

pub mod cdf;
pub mod error;
pub mod ifs;
pub mod rational;
pub mod sampler;
pub mod symbolic;
pub mod transport;

pub use cdf::{Staircase, ValueInterval};
pub use error::{Error, HypothesisViolation, Result};
pub use ifs::{ContractionMap, Dominance, IfSystem, ValidationReport, WeightVector, Word};
pub use rational::Rational;
pub use transport::{ClosedForm, StrategyRegistry, W1Report};
