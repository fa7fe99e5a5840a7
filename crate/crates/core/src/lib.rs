//! Cavity-optomechanics modeling toolkit for whispering-gallery-mode (WGM)
//! microresonators.
//!
//! The crate evaluates the closed-form physics of a driven optical microcavity
//! parametrically coupled to a mechanical mode: radiation-pressure steady
//! states and bistability, dynamical backaction (optical spring and damping),
//! quantum/thermal/technical displacement-noise budgets, sideband-cooling
//! limits, sphere elastodynamics and dissipation models, and optomechanically
//! induced transparency. A deterministic time-domain integrator provides an
//! independent cross-check of the linearized results.

pub mod constants;
pub mod error;
pub mod math;
pub mod model;
pub mod cavity;
pub mod statics;
pub mod dynba;
pub mod noisemeter;
pub mod cooling;
pub mod mechanics;
pub mod timedomain;
pub mod par;

pub use error::{Error, Result};

pub use num_complex;
