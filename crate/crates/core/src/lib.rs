//! Exact word geometry and random walks on two families of hyperbolic groups:
//! free groups `F_k` and free products of finite cyclic groups.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats, configuration and parallel execution
//! live in the `hypwalk` companion crate.
//!
//! Module map:
//!
//! - [`group`]: letters, reduced words, the word metric, balls, axes, and the
//!   Stallings core graph for subgroups of free groups.
//! - [`geometry`]: Gromov products, paths, exact quasi-geodesic measurement,
//!   Morse and broken-geodesic constants, central segments, matching search,
//!   four-point hyperbolicity.
//! - [`walk`]: step distributions, seeded walks, drift, Bernoulli estimates.
//! - [`freeness`]: mixed words over `S ∪ {x_1..x_k}`, relation search, the
//!   quasi-geodesic constant chain, free-product certificates, and profiles.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod freeness;
pub mod geometry;
pub mod group;
pub mod rational;
pub mod walk;

pub use error::{Error, Result};
pub use group::{GroupKind, GroupModel, Letter, Word};
pub use rational::Rational;
