//! Exact-arithmetic toolkit for the Fréchet class of trivariate Bernoulli
//! distributions with a common mean `p`.
//!
//! The class is a convex polytope inside the simplex of pmfs over `{0,1}^d`.
//! This crate builds its extremal points in closed form, recovers the same
//! points with a brute-force vertex enumeration, and studies the dependence
//! structure of the class: pairwise correlations, Σ-countermonotonicity,
//! convex order of the component sum, and the Shapley allocation of the
//! variance of the sum.
//!
//! Every value is an exact rational. Atoms of `{0,1}^d` are indexed in
//! reverse-lexicographic order: index `k` encodes `x_i = (k >> (i - 1)) & 1`,
//! so for `d = 3` the order is `000, 100, 010, 110, 001, 101, 011, 111`.
//! Coordinates and players are 0-based throughout the API.

pub mod algebra;
pub mod dependence;
mod error;
pub mod games;
pub mod io;
pub mod linalg;
pub mod pmf;
pub mod polytope;
pub mod rational;
pub mod simplex;

pub use error::{Error, Result};
pub use pmf::{BernoulliPmf, MarginParam, SumPmf};
pub use rational::Rational;
