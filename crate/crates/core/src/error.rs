use thiserror::Error;

/// Errors produced by the lane-keeping laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// A track or scenario parameter violates one of its inequality
    /// constraints. The message names the violated inequality.
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),

    /// A pose lies farther from the path than the projection capture radius.
    #[error("pose is {distance:.4} m from the path, beyond the capture radius {capture_radius:.4} m")]
    OffTrack { distance: f64, capture_radius: f64 },

    /// The lookahead circle intersects the path at fewer than two points.
    #[error("lookahead circle of radius {l_d} m meets the path at {found} point(s); need at least 2")]
    NoLookahead { l_d: f64, found: usize },

    /// `|e_y| > L_d` makes the lookahead lateral error undefined.
    #[error("|e_y| = {e_y} exceeds the lookahead distance {l_d} (negative radicand)")]
    LleDomain { e_y: f64, l_d: f64 },

    /// The vehicle sits at the local center of curvature of the path.
    #[error("path-coordinate singularity: |rho_s - e_y| = {0:.3e} m")]
    CurvatureSingularity(f64),

    /// The actuator command queue does not reach back to `t - tau_d`.
    #[error("actuator queue underrun: no command history at t = {0:.6} s")]
    QueueUnderrun(f64),

    /// A timestamp did not increase between successive samples.
    #[error("non-increasing timestamp: {t} after {last}")]
    NonMonotoneTime { t: f64, last: f64 },

    /// `d(s)` and `n(s)` of a quasi-polynomial share a root.
    #[error("d(s) and n(s) are not coprime (normalized resultant {0:.3e})")]
    NotCoprime(f64),

    /// `n(j omega*)` vanishes at a candidate crossing frequency.
    #[error("degenerate crossing: |n(j omega*)| = {0:.3e} at omega* = {1:.6}")]
    DegenerateCrossing(f64, f64),

    /// No gain in the searched range yields a delay-stable loop.
    #[error("no feasible derivative gain: closed loop unstable over the whole range")]
    NoFeasibleGain,

    /// An operation received an empty input where data is required.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A scenario or comparison configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
