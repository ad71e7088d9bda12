//! Deterministic lane-keeping laboratory.
//!
//! A library for studying pure-pursuit lane keeping on a 1:10-scale vehicle:
//!
//! - [`track`]: parametric closed test track with arc-length queries,
//!   projection, lookahead-point search and ground-truth lookahead heading
//!   error (LHE).
//! - [`vehicle`]: kinematic bicycle model in global and path coordinates,
//!   steering actuator with dead time plus first-order lag, inner velocity
//!   loop.
//! - [`controllers`]: the PP steering law, the PP-D law with filtered
//!   derivative action, and the PP-VR velocity reference generator.
//! - [`stability`]: delay-free Routh conditions and the Walton-Marshall
//!   direct method for the straight-scenario closed loop, with parameter
//!   sweeps and derivative-gain tuning.
//! - [`estimator`]: an LHE sensor model (ideal or noisy camera-rate) and a
//!   pose-sampling dataset generator producing labelled (pose, LHE) records.
//! - [`harness`]: closed-loop scenario orchestration, metrics and
//!   configuration comparison.
//!
//! All angles are radians, lengths metres, headings wrapped to `(-pi, pi]`
//! and measured counterclockwise-positive. Lateral quantities (`e_y`, the
//! LHE `alpha`, the steering angle `delta`) are positive to the left.

pub mod controllers;
pub mod error;
pub mod estimator;
pub mod harness;
pub mod stability;
pub mod track;
pub mod vehicle;

pub use error::{Error, Result};
pub use track::{Lane, LocalError, PathPoint, PoseG, TrackParams, TrackPath};
pub use vehicle::{ActuatorState, VehicleParams, VehicleStateG};

/// Wrap an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut w = a.rem_euclid(two_pi);
    if w > std::f64::consts::PI {
        w -= two_pi;
    }
    w
}
