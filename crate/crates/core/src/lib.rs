//! Minkowski gauges of balanced and starlike domains, their m-th
//! decomposition gauges `h^(m)(X) = inf { sum h(X_j) : X_1 + ... + X_m = X }`,
//! and the gauge of the convex hull, with certified numerical bounds.
//!
//! For a balanced domain in `C^n` the decomposition gauge reaches the hull
//! gauge at `m = 2n - 1`; for the domain `D_n` (see [`gauges`]) it does not at
//! `m = 2n - 2`. The [`counterexample`] module certifies both facts at
//! `n = 2` and gathers heuristic evidence at `n = 3`.

pub mod bnb;
pub mod cli;
pub mod convexify;
pub mod counterexample;
pub mod decompose;
pub mod error;
pub mod exhaust;
pub mod gauges;
pub mod lp;
pub mod rng;
pub mod search;
pub mod vector;

pub use error::{Error, Result};
pub use gauges::{eval_gauge, GaugeSpec, Homogeneity, LipschitzEstimate};
pub use vector::{Mode, Vector};
