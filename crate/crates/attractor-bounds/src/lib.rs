//! Sharp upper bounds on the attractor dimension of the Dirichlet complex
//! Ginzburg–Landau equation, the spectral inequalities they rest on, and a
//! pseudospectral simulator that checks both numerically.
//!
//! The crate has four computational layers:
//!
//! * [`geometry`] — box/ball domains with exact volume and moment of inertia,
//!   plus the equal-volume-ball lower bound for the inertia.
//! * [`spectrum`] — exact Dirichlet eigenvalues of boxes and the Li–Yau,
//!   Melas, and doubled-spectrum lower bounds on eigenvalue sums, with a
//!   verification harness.
//! * [`bounds`] — the trivial/nontrivial regime classifier and the dimension
//!   bound d* = (B/A)^{n/(n+2)} with all of its constants, alongside the
//!   Melas-free baseline it improves on.
//! * [`sim`] — a sine-pseudospectral CGL solver with tangent-space
//!   propagation, trace diagnostics, and the δ time-average estimator.
//!
//! The `attractor-bounds` binary wires JSON configs to these layers (see
//! [`cli`]); the `examples/` directory holds one runnable entry point per
//! capability.

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod geometry;
pub mod sim;
pub mod spectrum;

pub use bounds::{CGLParams, DimensionReport, Regime};
pub use error::{Error, Result};
pub use geometry::Domain;
pub use sim::{SimConfig, Simulation};
pub use spectrum::{MethodConstants, Spectrum};
