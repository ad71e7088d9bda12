//! Parametric closed test track: construction, arc-length queries, pose
//! projection, lookahead-point search and ground-truth lookahead heading
//! error (LHE).
//!
//! The track is the six-piece loop used on the laboratory floor: a large
//! semicircle at the bottom, two long straights up the sides, two small
//! quarter arcs and a short straight across the top. As parameterized the
//! loop is traversed clockwise (all turns to the right); use
//! [`TrackPath::reversed`] for counterclockwise runs.
//!
//! Conventions: headings counterclockwise-positive, wrapped to `(-pi, pi]`;
//! lateral error `e_y` and the LHE `alpha` positive to the path's / the
//! vehicle's left; signed curvature positive for left turns.

use crate::error::{Error, Result};
use crate::wrap_angle;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default capture radius for [`TrackPath::project`]: larger than any
/// credible excursion on a 0.37 m lane, so divergence is caught early.
pub const DEFAULT_CAPTURE_RADIUS: f64 = 1.0;

/// Parameters of the parametric test track.
///
/// Serialized field names follow the track drawing: `L` is the straight
/// length, `R_c` / `r_c` the large / small centerline radii. The lane-edge
/// radii are derived (`R_i = R_c - w/2`, and so on), never stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackParams {
    /// Abscissa of the track's axis of symmetry (m).
    pub x_c: f64,
    /// Margin from the edge of the fabric (m).
    pub m: f64,
    /// Lane width (m).
    pub w: f64,
    /// Length of the straight sections (m).
    #[serde(rename = "L")]
    pub straight_len: f64,
    /// Large radius of the lane centerline (m).
    #[serde(rename = "R_c")]
    pub big_radius: f64,
    /// Small radius of the lane centerline (m).
    #[serde(rename = "r_c")]
    pub small_radius: f64,
}

impl TrackParams {
    /// The laboratory track from the track-parameter table.
    pub fn laboratory() -> Self {
        Self {
            x_c: 1.5,
            m: 0.25,
            w: 0.37,
            straight_len: 2.0,
            big_radius: 1.04,
            small_radius: 0.65,
        }
    }

    /// Internal / external large radii `(R_i, R_e)`.
    pub fn big_lane_radii(&self) -> (f64, f64) {
        (self.big_radius - self.w / 2.0, self.big_radius + self.w / 2.0)
    }

    /// Internal / external small radii `(r_i, r_e)`.
    pub fn small_lane_radii(&self) -> (f64, f64) {
        (self.small_radius - self.w / 2.0, self.small_radius + self.w / 2.0)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            (self.x_c, "x_c > 0"),
            (self.m, "m > 0"),
            (self.w, "w > 0"),
            (self.straight_len, "L > 0"),
            (self.big_radius, "R_c > 0"),
            (self.small_radius, "r_c > 0"),
        ];
        for (v, name) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::ConstraintViolation(name.into()));
            }
        }
        if !(self.small_radius < self.big_radius) {
            return Err(Error::ConstraintViolation("r_c < R_c".into()));
        }
        if !(self.w < 2.0 * self.small_radius) {
            return Err(Error::ConstraintViolation("w < 2*r_c".into()));
        }
        Ok(())
    }
}

/// Which lane of the track to build the path for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lane {
    Centerline,
    InnerLane,
    OuterLane,
}

/// Global pose of the rear axle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoseG {
    pub x: f64,
    pub y: f64,
    /// Heading (rad), wrapped to `(-pi, pi]`.
    pub psi: f64,
}

impl PoseG {
    pub fn new(x: f64, y: f64, psi: f64) -> Self {
        Self { x, y, psi: wrap_angle(psi) }
    }
}

/// Path-frame errors of a pose: station `s`, signed lateral error `e_y`
/// (positive to the path's left) and heading error `e_psi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalError {
    pub s: f64,
    pub e_y: f64,
    pub e_psi: f64,
}

/// A point of the path at station `s`: position, road heading, signed
/// curvature and radius of curvature (infinite on straight sections).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathPoint {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    /// Road heading (rad).
    pub psi_s: f64,
    /// Signed curvature (1/m), zero on segments.
    pub kappa_s: f64,
    /// Signed radius of curvature (m); `kappa_s * rho_s = 1` on arcs,
    /// infinite on segments.
    pub rho_s: f64,
}

/// Geometry of one track section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectionGeometry {
    /// Circular arc traversed from `theta_start` to `theta_end` around
    /// `center`; the sign of `theta_end - theta_start` gives the turn
    /// direction (positive = counterclockwise = left turn).
    Arc {
        center: [f64; 2],
        radius: f64,
        theta_start: f64,
        theta_end: f64,
    },
    /// Straight segment from `start` to `end`.
    Segment { start: [f64; 2], end: [f64; 2] },
}

/// One contiguous piece of the path with its arc-length range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Section {
    pub s_start: f64,
    pub s_end: f64,
    pub geometry: SectionGeometry,
    /// Signed curvature of the section (0 on segments).
    pub curvature: f64,
}

impl Section {
    pub fn len(&self) -> f64 {
        self.s_end - self.s_start
    }

    fn start_point(&self) -> [f64; 2] {
        match self.geometry {
            SectionGeometry::Arc { center, radius, theta_start, .. } => [
                center[0] + radius * theta_start.cos(),
                center[1] + radius * theta_start.sin(),
            ],
            SectionGeometry::Segment { start, .. } => start,
        }
    }

    fn end_point(&self) -> [f64; 2] {
        match self.geometry {
            SectionGeometry::Arc { center, radius, theta_end, .. } => [
                center[0] + radius * theta_end.cos(),
                center[1] + radius * theta_end.sin(),
            ],
            SectionGeometry::Segment { end, .. } => end,
        }
    }

    fn heading_at_local(&self, u: f64) -> f64 {
        match self.geometry {
            SectionGeometry::Arc { radius, theta_start, theta_end, .. } => {
                let dir = (theta_end - theta_start).signum();
                let theta = theta_start + dir * u / radius;
                wrap_angle(theta + dir * PI / 2.0)
            }
            SectionGeometry::Segment { start, end } => {
                (end[1] - start[1]).atan2(end[0] - start[0])
            }
        }
    }

    fn point_at_local(&self, u: f64) -> (f64, f64) {
        match self.geometry {
            SectionGeometry::Arc { center, radius, theta_start, theta_end } => {
                let dir = (theta_end - theta_start).signum();
                let theta = theta_start + dir * u / radius;
                (center[0] + radius * theta.cos(), center[1] + radius * theta.sin())
            }
            SectionGeometry::Segment { start, end } => {
                let len = self.len();
                let t = if len > 0.0 { u / len } else { 0.0 };
                (start[0] + t * (end[0] - start[0]), start[1] + t * (end[1] - start[1]))
            }
        }
    }
}

/// A closed, C1-continuous path made of arcs and segments, parameterized by
/// arc length. Immutable after construction; all queries are pure.
#[derive(Debug, Clone, PartialEq)]
pub struct TrackPath {
    sections: Vec<Section>,
    total_length: f64,
    closed: bool,
}

const JOINT_TOL: f64 = 1e-9;

impl TrackPath {
    /// Assemble a path from sections, checking contiguity in arc length,
    /// positional and tangent continuity, and closure.
    pub fn from_sections(sections: Vec<Section>, closed: bool) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::EmptyInput("track must have at least one section".into()));
        }
        for pair in sections.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            if (a.s_end - b.s_start).abs() > JOINT_TOL {
                return Err(Error::ConstraintViolation(
                    "sections contiguous in arc length".into(),
                ));
            }
            let pa = a.end_point();
            let pb = b.start_point();
            if (pa[0] - pb[0]).hypot(pa[1] - pb[1]) > JOINT_TOL {
                return Err(Error::ConstraintViolation("positional continuity".into()));
            }
            let ha = a.heading_at_local(a.len());
            let hb = b.heading_at_local(0.0);
            if wrap_angle(ha - hb).abs() > JOINT_TOL {
                return Err(Error::ConstraintViolation("tangent continuity".into()));
            }
        }
        if closed {
            let last = sections.last().unwrap();
            let first = &sections[0];
            let pa = last.end_point();
            let pb = first.start_point();
            if (pa[0] - pb[0]).hypot(pa[1] - pb[1]) > JOINT_TOL {
                return Err(Error::ConstraintViolation("closed track endpoint".into()));
            }
            let ha = last.heading_at_local(last.len());
            let hb = first.heading_at_local(0.0);
            if wrap_angle(ha - hb).abs() > JOINT_TOL {
                return Err(Error::ConstraintViolation("closed track tangent".into()));
            }
        }
        let total_length = sections.last().unwrap().s_end - sections[0].s_start;
        Ok(Self { sections, total_length, closed })
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn total_length(&self) -> f64 {
        self.total_length
    }

    pub fn closed(&self) -> bool {
        self.closed
    }

    /// Same centerline traversed in the opposite direction. Headings flip by
    /// pi, curvatures change sign, stations are remapped to `L - s`.
    pub fn reversed(&self) -> TrackPath {
        let total = self.total_length;
        let mut sections: Vec<Section> = self
            .sections
            .iter()
            .rev()
            .map(|sec| {
                let geometry = match sec.geometry {
                    SectionGeometry::Arc { center, radius, theta_start, theta_end } => {
                        SectionGeometry::Arc {
                            center,
                            radius,
                            theta_start: theta_end,
                            theta_end: theta_start,
                        }
                    }
                    SectionGeometry::Segment { start, end } => {
                        SectionGeometry::Segment { start: end, end: start }
                    }
                };
                Section {
                    s_start: total - sec.s_end,
                    s_end: total - sec.s_start,
                    geometry,
                    curvature: -sec.curvature,
                }
            })
            .collect();
        // normalize accumulated rounding in the remapped stations
        let mut s = 0.0;
        for sec in &mut sections {
            let len = sec.s_end - sec.s_start;
            sec.s_start = s;
            sec.s_end = s + len;
            s += len;
        }
        TrackPath { sections, total_length: total, closed: self.closed }
    }

    fn wrap_s(&self, s: f64) -> f64 {
        let w = s.rem_euclid(self.total_length);
        if w.is_nan() {
            0.0
        } else {
            w
        }
    }

    fn section_index_at(&self, s: f64) -> usize {
        // partition_point: first section with s_end > s
        let idx = self.sections.partition_point(|sec| sec.s_end <= s);
        idx.min(self.sections.len() - 1)
    }

    /// Evaluate the path at station `s` (interpreted modulo the total
    /// length). Exact analytic evaluation of the containing section.
    pub fn point_at(&self, s: f64) -> PathPoint {
        let sw = self.wrap_s(s);
        let sec = &self.sections[self.section_index_at(sw)];
        let u = sw - sec.s_start;
        let (x, y) = sec.point_at_local(u);
        let psi_s = sec.heading_at_local(u);
        let kappa_s = sec.curvature;
        let rho_s = if kappa_s == 0.0 { f64::INFINITY } else { 1.0 / kappa_s };
        PathPoint { s: sw, x, y, psi_s, kappa_s, rho_s }
    }

    /// Project a pose onto the path with the default capture radius.
    pub fn project(&self, pose: &PoseG) -> Result<LocalError> {
        self.project_within(pose, DEFAULT_CAPTURE_RADIUS)
    }

    /// Project a pose onto the path: the station minimizing Euclidean
    /// distance, the signed lateral error (positive left) and the wrapped
    /// heading error. Per-section analytic projection, global minimum taken.
    pub fn project_within(&self, pose: &PoseG, capture_radius: f64) -> Result<LocalError> {
        let p = [pose.x, pose.y];
        let mut best: Option<(f64, f64)> = None; // (d2, s)
        for sec in &self.sections {
            let (d2, u) = match sec.geometry {
                SectionGeometry::Segment { start, end } => {
                    let len = sec.len();
                    let ux = (end[0] - start[0]) / len;
                    let uy = (end[1] - start[1]) / len;
                    let t = ((p[0] - start[0]) * ux + (p[1] - start[1]) * uy).clamp(0.0, len);
                    let fx = start[0] + t * ux;
                    let fy = start[1] + t * uy;
                    ((p[0] - fx).powi(2) + (p[1] - fy).powi(2), t)
                }
                SectionGeometry::Arc { center, radius, theta_start, theta_end } => {
                    let dir = (theta_end - theta_start).signum();
                    let span = (theta_end - theta_start).abs();
                    let phi = (p[1] - center[1]).atan2(p[0] - center[0]);
                    let swept = (dir * (phi - theta_start)).rem_euclid(2.0 * PI);
                    if swept <= span {
                        let rr = (p[0] - center[0]).hypot(p[1] - center[1]);
                        ((rr - radius).powi(2), swept * radius)
                    } else {
                        // outside the angular range: closer endpoint wins
                        let a = sec.start_point();
                        let b = sec.end_point();
                        let da = (p[0] - a[0]).powi(2) + (p[1] - a[1]).powi(2);
                        let db = (p[0] - b[0]).powi(2) + (p[1] - b[1]).powi(2);
                        if da <= db {
                            (da, 0.0)
                        } else {
                            (db, sec.len())
                        }
                    }
                }
            };
            let s = sec.s_start + u;
            if best.map_or(true, |(bd2, _)| d2 < bd2) {
                best = Some((d2, s));
            }
        }
        let (d2, s) = best.unwrap();
        let distance = d2.sqrt();
        if distance > capture_radius {
            return Err(Error::OffTrack { distance, capture_radius });
        }
        let q = self.point_at(s);
        let nx = -q.psi_s.sin();
        let ny = q.psi_s.cos();
        let e_y = nx * (p[0] - q.x) + ny * (p[1] - q.y);
        let e_psi = wrap_angle(pose.psi - q.psi_s);
        Ok(LocalError { s: self.wrap_s(s), e_y, e_psi })
    }

    /// All intersections of the circle of radius `l_d` around `center` with
    /// the path, as stations. Closed-form per section.
    fn circle_intersections(&self, center: [f64; 2], l_d: f64) -> Vec<f64> {
        let mut out = Vec::new();
        let tol = 1e-12;
        for sec in &self.sections {
            match sec.geometry {
                SectionGeometry::Segment { start, end } => {
                    let len = sec.len();
                    let ux = (end[0] - start[0]) / len;
                    let uy = (end[1] - start[1]) / len;
                    let rx = start[0] - center[0];
                    let ry = start[1] - center[1];
                    // |r + t u|^2 = l_d^2
                    let b = rx * ux + ry * uy;
                    let c = rx * rx + ry * ry - l_d * l_d;
                    let disc = b * b - c;
                    if disc >= 0.0 {
                        let sq = disc.sqrt();
                        for t in [-b - sq, -b + sq] {
                            if t >= -tol && t <= len + tol {
                                out.push(sec.s_start + t.clamp(0.0, len));
                            }
                        }
                    }
                }
                SectionGeometry::Arc { center: ac, radius, theta_start, theta_end } => {
                    let dx = center[0] - ac[0];
                    let dy = center[1] - ac[1];
                    let d = dx.hypot(dy);
                    if d < tol {
                        continue; // concentric: either no or infinitely many
                    }
                    // circle-circle intersection
                    let a = (d * d + radius * radius - l_d * l_d) / (2.0 * d);
                    let h2 = radius * radius - a * a;
                    if h2 < -tol * radius {
                        continue;
                    }
                    let h = h2.max(0.0).sqrt();
                    let bx = ac[0] + a * dx / d;
                    let by = ac[1] + a * dy / d;
                    let candidates = [
                        [bx + h * (-dy / d), by + h * (dx / d)],
                        [bx - h * (-dy / d), by - h * (dx / d)],
                    ];
                    let dir = (theta_end - theta_start).signum();
                    let span = (theta_end - theta_start).abs();
                    let ang_tol = tol.max(1e-12 / radius);
                    for (i, q) in candidates.iter().enumerate() {
                        if i == 1 && h <= tol {
                            break; // tangential: single intersection
                        }
                        let phi = (q[1] - ac[1]).atan2(q[0] - ac[0]);
                        let mut swept = (dir * (phi - theta_start)).rem_euclid(2.0 * PI);
                        if swept > span {
                            // accept joints within tolerance
                            if swept - span < ang_tol {
                                swept = span;
                            } else if 2.0 * PI - swept < ang_tol {
                                swept = 0.0;
                            } else {
                                continue;
                            }
                        }
                        out.push(sec.s_start + swept * radius);
                    }
                }
            }
        }
        out
    }

    /// The lookahead point: among intersections of the `l_d` circle around
    /// the rear axle with the path, the one with the greatest forward
    /// arc-length progress from `s_hint` (within half a track length, which
    /// disambiguates "furthest" on a closed track).
    ///
    /// Requires at least two intersections, mirroring the geometric
    /// assumption `|D| >= 2` of the lookahead construction.
    pub fn lookahead_point(&self, rear: &PoseG, l_d: f64, s_hint: f64) -> Result<PathPoint> {
        let hits = self.circle_intersections([rear.x, rear.y], l_d);
        if hits.len() < 2 {
            return Err(Error::NoLookahead { l_d, found: hits.len() });
        }
        let half = self.total_length / 2.0;
        let mut best: Option<(f64, f64)> = None; // (progress, s)
        for &s in &hits {
            let progress = (s - s_hint).rem_euclid(self.total_length);
            if progress <= half && best.map_or(true, |(bp, _)| progress > bp) {
                best = Some((progress, s));
            }
        }
        match best {
            Some((_, s)) => Ok(self.point_at(s)),
            None => Err(Error::NoLookahead { l_d, found: 0 }),
        }
    }

    /// Ground-truth global LHE: bearing of the lookahead point from the rear
    /// axle, relative to the vehicle heading. Positive when the point lies to
    /// the vehicle's left; wrapped to `(-pi, pi]`.
    pub fn lhe_global(&self, rear: &PoseG, l_d: f64, s_hint: f64) -> Result<f64> {
        let p = self.lookahead_point(rear, l_d, s_hint)?;
        Ok(wrap_angle((p.y - rear.y).atan2(p.x - rear.x) - rear.psi))
    }
}

/// Lookahead lateral error on a straight, in the closed-form convention of
/// the straight-scenario output map:
///
/// `e_d = e_y cos(e_psi) + sqrt(L_d^2 - e_y^2) sin(e_psi)`
///
/// Here `e_y` and `e_psi` are measured positive toward the lookahead point's
/// side, i.e. opposite to this crate's left-positive [`LocalError`] signs:
/// `arcsin(lle_straight(-e_y, -e_psi, l_d) / l_d)` reproduces
/// [`TrackPath::lhe_global`] on a straight. `lle_straight` is odd in
/// `(e_y, e_psi)`.
pub fn lle_straight(e_y: f64, e_psi: f64, l_d: f64) -> Result<f64> {
    if e_y.abs() > l_d {
        return Err(Error::LleDomain { e_y, l_d });
    }
    Ok(e_y * e_psi.cos() + (l_d * l_d - e_y * e_y).sqrt() * e_psi.sin())
}

/// Build the six-piece closed laboratory track `r_12 ... r_61` for the
/// chosen lane. Lane variants substitute the inner/outer radii for the
/// centerline radii; the arc centers stay fixed, so the lanes are parallel
/// offsets of the centerline.
///
/// As parameterized the loop runs clockwise starting at the right end of the
/// large arc, heading -y.
pub fn build_test_track(params: &TrackParams, lane: Lane) -> Result<TrackPath> {
    params.validate()?;
    let (big_r, small_r) = match lane {
        Lane::Centerline => (params.big_radius, params.small_radius),
        Lane::InnerLane => (params.big_lane_radii().0, params.small_lane_radii().0),
        Lane::OuterLane => (params.big_lane_radii().1, params.small_lane_radii().1),
    };
    let x_c = params.x_c;
    let y_big = params.m + params.big_radius; // center height of the big arc
    let y_top = y_big + params.straight_len; // center height of the small arcs
    let mut sections = Vec::with_capacity(6);
    let mut s = 0.0;
    let mut push = |geometry: SectionGeometry, len: f64, curvature: f64, sections: &mut Vec<Section>| {
        sections.push(Section { s_start: s, s_end: s + len, geometry, curvature });
        s += len;
    };

    // r_12: large bottom arc, theta 0 -> -pi (clockwise)
    push(
        SectionGeometry::Arc {
            center: [x_c, y_big],
            radius: big_r,
            theta_start: 0.0,
            theta_end: -PI,
        },
        PI * big_r,
        -1.0 / big_r,
        &mut sections,
    );
    // r_23: left straight, up
    push(
        SectionGeometry::Segment {
            start: [x_c - big_r, y_big],
            end: [x_c - big_r, y_top],
        },
        params.straight_len,
        0.0,
        &mut sections,
    );
    // r_34: left small quarter arc, theta -pi -> -3pi/2 (clockwise)
    push(
        SectionGeometry::Arc {
            center: [x_c - big_r + small_r, y_top],
            radius: small_r,
            theta_start: -PI,
            theta_end: -1.5 * PI,
        },
        0.5 * PI * small_r,
        -1.0 / small_r,
        &mut sections,
    );
    // r_45: top straight, rightward
    push(
        SectionGeometry::Segment {
            start: [x_c - big_r + small_r, y_top + small_r],
            end: [x_c + big_r - small_r, y_top + small_r],
        },
        2.0 * (big_r - small_r),
        0.0,
        &mut sections,
    );
    // r_56: right small quarter arc, theta -3pi/2 -> -2pi (clockwise)
    push(
        SectionGeometry::Arc {
            center: [x_c + big_r - small_r, y_top],
            radius: small_r,
            theta_start: -1.5 * PI,
            theta_end: -2.0 * PI,
        },
        0.5 * PI * small_r,
        -1.0 / small_r,
        &mut sections,
    );
    // r_61: right straight, down
    push(
        SectionGeometry::Segment {
            start: [x_c + big_r, y_top],
            end: [x_c + big_r, y_big],
        },
        params.straight_len,
        0.0,
        &mut sections,
    );

    TrackPath::from_sections(sections, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn lab_track() -> TrackPath {
        build_test_track(&TrackParams::laboratory(), Lane::Centerline).unwrap()
    }

    /// Independent arc-length oracle: adaptive Simpson quadrature of
    /// ||dr/dtheta|| over the six parametric pieces of the track drawing.
    fn quadrature_length(p: &TrackParams) -> f64 {
        fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> f64 {
            let h = (b - a) / n as f64;
            let mut acc = f(a) + f(b);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * f(a + i as f64 * h);
            }
            acc * h / 3.0
        }
        fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
            let mut n = 64;
            let mut prev = simpson(f, a, b, n);
            loop {
                n *= 2;
                let cur = simpson(f, a, b, n);
                if (cur - prev).abs() < 1e-10 || n > 1 << 20 {
                    return cur;
                }
                prev = cur;
            }
        }
        let (big_r, small_r) = (p.big_radius, p.small_radius);
        let straight = |x0: f64, y0: f64, x1: f64, y1: f64| {
            // r(lambda) linear: |dr/dlambda| constant
            adaptive(&|_l: f64| ((x1 - x0) as f64).hypot(y1 - y0), 0.0, 1.0)
        };
        let arc = |r: f64, t0: f64, t1: f64| adaptive(&|_t: f64| r, t0.min(t1), t0.max(t1));
        let y_big = p.m + p.big_radius;
        let y_top = y_big + p.straight_len;
        arc(big_r, 0.0, -PI)
            + straight(p.x_c - big_r, y_big, p.x_c - big_r, y_top)
            + arc(small_r, -PI, -1.5 * PI)
            + straight(p.x_c - big_r + small_r, y_top + small_r, p.x_c + big_r - small_r, y_top + small_r)
            + arc(small_r, -1.5 * PI, -2.0 * PI)
            + straight(p.x_c + big_r, y_top, p.x_c + big_r, y_big)
    }

    #[test]
    fn lab_track_is_valid_six_piece_loop() {
        let t = lab_track();
        assert_eq!(t.sections().len(), 6);
        assert!(t.closed());
    }

    #[test]
    fn total_length_matches_quadrature_oracle() {
        let p = TrackParams::laboratory();
        let t = lab_track();
        let oracle = quadrature_length(&p);
        assert_abs_diff_eq!(t.total_length(), oracle, epsilon = 1e-6);
    }

    #[test]
    fn invalid_radius_ordering_rejected() {
        let mut p = TrackParams::laboratory();
        p.small_radius = p.big_radius + 0.1;
        let err = build_test_track(&p, Lane::Centerline).unwrap_err();
        assert!(err.to_string().contains("r_c < R_c"));
    }

    #[test]
    fn point_at_start_and_closure() {
        let t = lab_track();
        let p0 = t.point_at(0.0);
        assert_abs_diff_eq!(p0.x, 1.5 + 1.04, epsilon = 1e-12);
        assert_abs_diff_eq!(p0.y, 0.25 + 1.04, epsilon = 1e-12);
        assert_abs_diff_eq!(p0.kappa_s.abs(), 1.0 / 1.04, epsilon = 1e-12);
        let pl = t.point_at(t.total_length());
        assert_abs_diff_eq!(pl.x, p0.x, epsilon = 1e-9);
        assert_abs_diff_eq!(pl.y, p0.y, epsilon = 1e-9);
        assert_abs_diff_eq!(pl.psi_s, p0.psi_s, epsilon = 1e-9);
    }

    #[test]
    fn point_on_straight_has_zero_curvature() {
        let t = lab_track();
        // middle of the left straight (second section)
        let s = PI * 1.04 + 1.0;
        let p = t.point_at(s);
        assert_eq!(p.kappa_s, 0.0);
        assert!(p.rho_s.is_infinite());
        assert_abs_diff_eq!(p.psi_s, PI / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn project_on_path_identity() {
        let t = lab_track();
        for i in 0..200 {
            let s = t.total_length() * i as f64 / 200.0;
            let q = t.point_at(s);
            let le = t.project(&PoseG::new(q.x, q.y, q.psi_s)).unwrap();
            let ds = (le.s - s).rem_euclid(t.total_length());
            let ds = ds.min(t.total_length() - ds);
            assert!(ds < 1e-9, "s={s} -> {}", le.s);
            assert!(le.e_y.abs() < 1e-9);
            assert!(le.e_psi.abs() < 1e-9);
        }
    }

    #[test]
    fn project_pure_lateral_offset() {
        let t = lab_track();
        let s = PI * 1.04 + 1.0; // mid left straight, heading +pi/2
        let q = t.point_at(s);
        // 0.1 m to the path's left: left of +pi/2 heading is -x
        let pose = PoseG::new(q.x - 0.1, q.y, q.psi_s);
        let le = t.project(&pose).unwrap();
        assert_abs_diff_eq!(le.e_y, 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(le.e_psi, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn project_off_track_error() {
        let t = lab_track();
        let err = t.project(&PoseG::new(100.0, 100.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::OffTrack { .. }));
    }

    #[test]
    fn project_matches_dense_sampling_oracle() {
        let t = lab_track();
        let mut rng = rand_pcg(42);
        let n = 1_000_000usize;
        for _ in 0..20 {
            let s0 = next_f64(&mut rng) * t.total_length();
            let q = t.point_at(s0);
            let off = (next_f64(&mut rng) - 0.5) * 0.6;
            let pose = PoseG::new(
                q.x - q.psi_s.sin() * off,
                q.y + q.psi_s.cos() * off,
                q.psi_s + (next_f64(&mut rng) - 0.5),
            );
            let le = t.project(&pose).unwrap();
            // dense brute force over 10^6 stations
            let mut best = (f64::INFINITY, 0.0);
            for i in 0..n {
                let s = t.total_length() * i as f64 / n as f64;
                let p = t.point_at(s);
                let d2 = (p.x - pose.x).powi(2) + (p.y - pose.y).powi(2);
                if d2 < best.0 {
                    best = (d2, s);
                }
            }
            let ds = (le.s - best.1).rem_euclid(t.total_length());
            let ds = ds.min(t.total_length() - ds);
            assert!(ds < 1e-4, "analytic s={} oracle s={}", le.s, best.1);
        }
    }

    // tiny deterministic generator for test poses
    fn rand_pcg(seed: u64) -> u64 {
        seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407)
    }
    fn next_f64(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*state >> 11) as f64) / ((1u64 << 53) as f64)
    }

    #[test]
    fn lookahead_collinear_on_straight() {
        let t = lab_track();
        let s = PI * 1.04 + 0.5;
        let q = t.point_at(s);
        let p = t.lookahead_point(&PoseG::new(q.x, q.y, q.psi_s), 0.5, s).unwrap();
        let ds = (p.s - s).rem_euclid(t.total_length());
        assert_abs_diff_eq!(ds, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn lookahead_lateral_offset_closed_form() {
        let t = lab_track();
        let s = PI * 1.04 + 0.5;
        let q = t.point_at(s);
        // 0.25 m to the left of the straight
        let pose = PoseG::new(q.x - 0.25, q.y, q.psi_s);
        let p = t.lookahead_point(&pose, 0.5, s).unwrap();
        let expect = (0.5f64 * 0.5 - 0.25 * 0.25).sqrt(); // 0.4330
        let ds = (p.s - s).rem_euclid(t.total_length());
        assert_abs_diff_eq!(ds, expect, epsilon = 1e-9);
        let d = (p.x - pose.x).hypot(p.y - pose.y);
        assert_abs_diff_eq!(d, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn lookahead_matches_dense_oracle() {
        let t = lab_track();
        let mut rng = rand_pcg(7);
        for _ in 0..10 {
            let s0 = next_f64(&mut rng) * t.total_length();
            let q = t.point_at(s0);
            let off = (next_f64(&mut rng) - 0.5) * 0.3;
            let pose = PoseG::new(
                q.x - q.psi_s.sin() * off,
                q.y + q.psi_s.cos() * off,
                q.psi_s,
            );
            let l_d = 0.4 + 0.3 * next_f64(&mut rng);
            let p = t.lookahead_point(&pose, l_d, s0).unwrap();
            // dense bracketing of |dist - l_d| sign changes, forward half only
            let n = 1_000_000usize;
            let half = t.total_length() / 2.0;
            let mut best_s = f64::NAN;
            let mut prev: Option<(f64, f64)> = None;
            let mut best_prog = -1.0;
            for i in 0..=n {
                let prog = half * i as f64 / n as f64;
                let s = (s0 + prog) % t.total_length();
                let pt = t.point_at(s);
                let g = (pt.x - pose.x).hypot(pt.y - pose.y) - l_d;
                if let Some((pp, pg)) = prev {
                    if pg == 0.0 || pg.signum() != g.signum() {
                        // linear root estimate inside the bracket
                        let frac = if (g - pg).abs() > 0.0 { -pg / (g - pg) } else { 0.0 };
                        let root_prog = pp + frac * (prog - pp);
                        if root_prog > best_prog {
                            best_prog = root_prog;
                            best_s = (s0 + root_prog) % t.total_length();
                        }
                    }
                }
                prev = Some((prog, g));
            }
            let ds = (p.s - best_s).rem_euclid(t.total_length());
            let ds = ds.min(t.total_length() - ds);
            assert!(ds < 1e-4, "analytic {} vs oracle {}", p.s, best_s);
        }
    }

    #[test]
    fn lhe_zero_on_centered_straight() {
        let t = lab_track();
        let s = PI * 1.04 + 0.5;
        let q = t.point_at(s);
        let a = t.lhe_global(&PoseG::new(q.x, q.y, q.psi_s), 0.5, s).unwrap();
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lhe_lateral_offset_closed_form() {
        let t = lab_track();
        let s = PI * 1.04 + 0.5;
        let q = t.point_at(s);
        // vehicle 0.25 m left of the path: lookahead point lies to its right
        let pose = PoseG::new(q.x - 0.25, q.y, q.psi_s);
        let a = t.lhe_global(&pose, 0.5, s).unwrap();
        assert_abs_diff_eq!(a, -(0.25f64 / 0.5).asin(), epsilon = 1e-9);
        // and equals the straight-scenario closed form fed with mirrored signs
        let e_d = lle_straight(0.25, 0.0, 0.5).unwrap();
        assert_abs_diff_eq!(a, -(e_d / 0.5).asin(), epsilon = 1e-9);
    }

    #[test]
    fn lhe_mirror_antisymmetry() {
        let t = lab_track();
        let s = PI * 1.04 + 0.5;
        let q = t.point_at(s);
        for off in [0.05, 0.1, 0.2] {
            let left = PoseG::new(q.x - off, q.y, q.psi_s);
            let right = PoseG::new(q.x + off, q.y, q.psi_s);
            let al = t.lhe_global(&left, 0.5, s).unwrap();
            let ar = t.lhe_global(&right, 0.5, s).unwrap();
            assert_abs_diff_eq!(al, -ar, epsilon = 1e-12);
        }
    }

    #[test]
    fn lle_examples() {
        assert_eq!(lle_straight(0.0, 0.0, 0.5).unwrap(), 0.0);
        assert_abs_diff_eq!(lle_straight(0.25, 0.0, 0.5).unwrap(), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(
            lle_straight(0.0, 0.1, 0.5).unwrap(),
            0.5 * 0.1f64.sin(),
            epsilon = 1e-12
        );
        assert!(matches!(
            lle_straight(0.6, 0.0, 0.5),
            Err(Error::LleDomain { .. })
        ));
    }

    #[test]
    fn lle_alpha_consistency_on_straight() {
        // arcsin(lle(-e_y, -e_psi)/L_d) must reproduce lhe_global on straights
        let t = lab_track();
        let s = PI * 1.04 + 1.0;
        let mut rng = rand_pcg(3);
        for _ in 0..500 {
            let e_y = (next_f64(&mut rng) - 0.5) * 0.5;
            let e_psi = (next_f64(&mut rng) - 0.5) * 0.8;
            let l_d = 0.5;
            let q = t.point_at(s);
            let pose = PoseG::new(
                q.x - q.psi_s.sin() * e_y,
                q.y + q.psi_s.cos() * e_y,
                q.psi_s + e_psi,
            );
            let a_global = t.lhe_global(&pose, l_d, s).unwrap();
            let e_d = lle_straight(-e_y, -e_psi, l_d).unwrap();
            let a_straight = (e_d / l_d).asin();
            assert!(
                (a_global - a_straight).abs() < 1e-9,
                "e_y={e_y} e_psi={e_psi}: {a_global} vs {a_straight}"
            );
        }
    }

    #[test]
    fn lane_variants_are_parallel_offsets() {
        let p = TrackParams::laboratory();
        let c = build_test_track(&p, Lane::Centerline).unwrap();
        let inner = build_test_track(&p, Lane::InnerLane).unwrap();
        let outer = build_test_track(&p, Lane::OuterLane).unwrap();
        // arcs shrink/grow by w/2, straights keep their length
        assert_abs_diff_eq!(
            inner.total_length(),
            c.total_length() - 2.0 * PI * p.w / 2.0,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            outer.total_length(),
            c.total_length() + 2.0 * PI * p.w / 2.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn reversed_track_round_trip() {
        let t = lab_track();
        let r = t.reversed();
        assert_abs_diff_eq!(r.total_length(), t.total_length(), epsilon = 1e-12);
        for i in 0..50 {
            let s = t.total_length() * i as f64 / 50.0;
            let a = t.point_at(s);
            let b = r.point_at(t.total_length() - s);
            assert_abs_diff_eq!(a.x, b.x, epsilon = 1e-9);
            assert_abs_diff_eq!(a.y, b.y, epsilon = 1e-9);
            assert_abs_diff_eq!(wrap_angle(a.psi_s - b.psi_s).abs(), PI, epsilon = 1e-9);
            assert_abs_diff_eq!(a.kappa_s, -b.kappa_s, epsilon = 1e-12);
        }
    }
}
