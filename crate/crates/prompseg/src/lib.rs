//! # prompseg
//!
//! Unsupervised trajectory segmentation fused with probabilistic movement
//! primitives. The crate generates perturbed synthetic trajectories,
//! segments them without labels, learns basis-function weight vectors by
//! Moore-Penrose pseudoinverse, conditions weights on context variables
//! through Gaussian processes, and reconstructs or adapts trajectories with
//! quantified error.
//!
//! Everything is deterministic: stochastic steps take an explicit seed and
//! the same seed always reproduces the same bytes.
//!
//! ## Module map
//!
//! - [`numerics`] — seeded PRNG, dense matrices, SVD/pseudoinverse,
//!   symmetric eigendecomposition, k-means.
//! - [`trajgen`] — sinusoid + noise + obstacle-window trajectory synthesis.
//! - [`basis`] — Gaussian basis matrices over time grids.
//! - [`segment`] — significant-peak and spectral segmentation.
//! - [`promp`] — weight learning, reconstruction, segmented models, online
//!   adaptation, error metrics.
//! - [`gp`] — Gaussian-process conditioning of weights on contexts.
//! - [`pipeline`] / [`adaptation`] — the end-to-end experiments.
//! - [`cli`] — the `prompseg` command-line front end.
//!
//! ## Quick start
//!
//! ```
//! use prompseg::basis::{gaussian_basis_matrix, BasisConfig};
//! use prompseg::promp::{learn_weights, mse};
//! use prompseg::trajgen::{generate_dynamic_trajectory, TrajectoryConfig};
//!
//! let cfg = TrajectoryConfig::default();
//! let traj = generate_dynamic_trajectory(&cfg, 7)?;
//! let basis = BasisConfig::for_span(cfg.t_start, cfg.t_end, 10)?;
//! let phi = gaussian_basis_matrix(&traj.t, &basis)?;
//! let weights = learn_weights(&phi, &traj.y)?;
//! let reconstruction = phi.matvec(&weights);
//! let err = mse(&traj.y, &reconstruction)?;
//! assert!(err.is_finite());
//! # Ok::<(), prompseg::Error>(())
//! ```
//!
//! The `examples/` directory has one runnable program per capability; start
//! with `cargo run --example learn_and_reconstruct`.

// Index-based loops mirror the linear-algebra notation they implement.
#![allow(clippy::needless_range_loop)]
// Validations use `!(x > 0.0)` so NaN fails them; `x <= 0.0` would let NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adaptation;
pub mod basis;
pub mod cli;
pub mod csv;
pub mod error;
pub mod gp;
pub mod numerics;
pub mod pipeline;
pub mod promp;
pub mod segment;
pub mod svg;
pub mod trajgen;

pub use error::{Error, Result};
