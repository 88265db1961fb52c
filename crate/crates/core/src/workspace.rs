//! Graspable-region approximation from measured poses.
//!
//! Measured span/depth pairs are joined piecewise-linearly. Span doubles as
//! the actuation coordinate: a pose fraction of 0 is the closed pose and 1 the
//! open pose.

use alloc::vec::Vec;
use core::fmt;

use crate::model::{HandProfile, ObjectShape, ObjectSpec, PowerCylindricalSet, PowerSphericalSet, PrecisionSet, SectionLine};
use crate::sizing::{self, SizingError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveSource {
    Measured,
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("a curve needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("span at point {index} does not increase")]
    NotStrictlyIncreasing { index: usize },
    #[error("point {index} has a negative or non-finite coordinate")]
    InvalidPoint { index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum WorkspaceError {
    #[error("span {span} mm outside curve range [{min}, {max}] mm")]
    OutOfRange { span: f64, min: f64, max: f64 },
    #[error("object shape {found:?} cannot be tested against this grasp (expected {expected:?})")]
    WrongShape {
        expected: ObjectShape,
        found: ObjectShape,
    },
    #[error("grasp set has no poses")]
    EmptySet,
}

/// Span/depth pairs sorted by strictly increasing span.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanDepthCurve {
    points: Vec<(f64, f64)>,
    source: CurveSource,
}

impl SpanDepthCurve {
    pub fn new(points: Vec<(f64, f64)>, source: CurveSource) -> Result<Self, CurveError> {
        if points.len() < 3 {
            return Err(CurveError::TooFewPoints(points.len()));
        }
        for (index, &(s, d)) in points.iter().enumerate() {
            if !(s.is_finite() && d.is_finite() && s >= 0.0 && d >= 0.0) {
                return Err(CurveError::InvalidPoint { index });
            }
            if index > 0 && !(s > points[index - 1].0) {
                return Err(CurveError::NotStrictlyIncreasing { index });
            }
        }
        Ok(SpanDepthCurve { points, source })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn source(&self) -> CurveSource {
        self.source
    }

    /// `(min span, max span)`
    pub fn span_range(&self) -> (f64, f64) {
        (self.points[0].0, self.points[self.points.len() - 1].0)
    }
}

/// Sorts a precision set's samples into a measured curve.
pub fn build_precision_curve(set: &PrecisionSet) -> Result<SpanDepthCurve, CurveError> {
    let mut points: Vec<(f64, f64)> = set
        .samples
        .iter()
        .map(|s| (s.span.mm(), s.depth.mm()))
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    SpanDepthCurve::new(points, CurveSource::Measured)
}

/// Piecewise-linear depth at `span`; exact at the knots.
pub fn interpolate_depth(curve: &SpanDepthCurve, span: f64) -> Result<f64, WorkspaceError> {
    let pts = curve.points();
    let (min, max) = curve.span_range();
    if !(span >= min && span <= max) {
        return Err(WorkspaceError::OutOfRange { span, min, max });
    }
    // first knot with span >= query
    let hi = pts.partition_point(|p| p.0 < span);
    let (s1, d1) = pts[hi];
    if s1 == span || hi == 0 {
        return Ok(d1);
    }
    let (s0, d0) = pts[hi - 1];
    let t = (span - s0) / (s1 - s0);
    Ok(d0 + t * (d1 - d0))
}

/// Trapezoid-rule area under a polyline of `(span, depth)` points, in mm².
/// Fewer than two points enclose nothing.
pub fn trapezoid_area(points: &[(f64, f64)]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
        .sum()
}

/// Area under the curve between its smallest and largest span, in mm².
pub fn graspable_area(curve: &SpanDepthCurve) -> f64 {
    trapezoid_area(curve.points())
}

/// The check that decided a fit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitingConstraint {
    /// Every check passed.
    None,
    /// The object is outside the span the hand can reach.
    Span,
    /// The object height fails the width gate.
    Width,
    /// The span line is too shallow for the object.
    Depth,
}

impl LimitingConstraint {
    pub fn as_str(self) -> &'static str {
        match self {
            LimitingConstraint::None => "none",
            LimitingConstraint::Span => "span",
            LimitingConstraint::Width => "width",
            LimitingConstraint::Depth => "depth",
        }
    }
}

impl fmt::Display for LimitingConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub fits: bool,
    /// Where contact happens while closing, 0 = closed pose, 1 = open pose.
    /// Present iff `fits`.
    pub pose_fraction: Option<f64>,
    pub limiting_constraint: LimitingConstraint,
}

impl FitResult {
    fn fit(fraction: f64) -> Self {
        FitResult {
            fits: true,
            pose_fraction: Some(fraction),
            limiting_constraint: LimitingConstraint::None,
        }
    }

    fn miss(constraint: LimitingConstraint) -> Self {
        FitResult {
            fits: false,
            pose_fraction: None,
            limiting_constraint: constraint,
        }
    }
}

/// Precision fit: the grasp diameter lies within `[m, M]` and the object
/// height passes the width gate. Span is checked first.
pub fn fits_precision(profile: &HandProfile, object: &ObjectSpec) -> Result<FitResult, SizingError> {
    let (m, big_m) = sizing::precision_span_range(profile)?;
    let d = object.grasp_diameter.mm();
    if !(d >= m && d <= big_m) {
        return Ok(FitResult::miss(LimitingConstraint::Span));
    }
    if !sizing::height_ok(profile, object) {
        return Ok(FitResult::miss(LimitingConstraint::Width));
    }
    Ok(FitResult::fit((d - m) / (big_m - m)))
}

// Poses in open -> closed order with a per-pose capacity and ordering span.
// Finds the most closed pose whose capacity still holds `diameter` and
// interpolates the contact point towards the next (failing) pose.
fn closing_fraction(ordering_spans: &[f64], capacities: &[f64], diameter: f64) -> Option<f64> {
    let fitting = (0..capacities.len()).rev().find(|&i| capacities[i] >= diameter)?;
    let open = ordering_spans.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let closed = ordering_spans.iter().copied().fold(f64::INFINITY, f64::min);
    let range = open - closed;
    let contact_span = match (capacities.get(fitting + 1), ordering_spans.get(fitting + 1)) {
        (Some(&next_cap), Some(&next_span)) if capacities[fitting] > next_cap => {
            let t = (diameter - next_cap) / (capacities[fitting] - next_cap);
            next_span + t * (ordering_spans[fitting] - next_span)
        }
        _ => ordering_spans[fitting],
    };
    if fitting + 1 == capacities.len() || !(range > 0.0) {
        return Some(0.0);
    }
    Some(((contact_span - closed) / range).clamp(0.0, 1.0))
}

/// Conservative cylindrical power fit.
///
/// A pose holds a cylinder of diameter `D` when `D` is no larger than any of
/// the three section spans and no larger than the span line depth. The fit
/// exists when some pose holds the cylinder.
pub fn fits_power_cylindrical(
    set: &PowerCylindricalSet,
    object: &ObjectSpec,
) -> Result<FitResult, WorkspaceError> {
    if object.shape != ObjectShape::Cylinder {
        return Err(WorkspaceError::WrongShape {
            expected: ObjectShape::Cylinder,
            found: object.shape,
        });
    }
    if set.poses.is_empty() {
        return Err(WorkspaceError::EmptySet);
    }
    let d = object.grasp_diameter.mm();
    let mut spans = Vec::with_capacity(set.poses.len());
    let mut capacities = Vec::with_capacity(set.poses.len());
    let mut span_ok = false;
    for pose in &set.poses {
        let min_span = pose.sections.iter().map(|s| s.span).min();
        let line = pose.section(SectionLine::SpanLine);
        let (Some(min_span), Some(line)) = (min_span, line) else {
            continue;
        };
        span_ok |= d <= min_span.mm();
        spans.push(line.span.mm());
        capacities.push(min_span.min(line.depth).mm());
    }
    Ok(match closing_fraction(&spans, &capacities, d) {
        Some(f) => FitResult::fit(f),
        None if span_ok => FitResult::miss(LimitingConstraint::Depth),
        None => FitResult::miss(LimitingConstraint::Span),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalFit {
    pub fit: FitResult,
    /// Some pose both holds the sphere and keeps it from slipping out past
    /// the distal contacts.
    pub enclosed: bool,
}

/// Spherical power fit: the sphere must pass through the widest diameter of
/// some pose. It is enclosed when, at such a pose, it is also no smaller than
/// the distal diameter.
pub fn fits_power_spherical(
    set: &PowerSphericalSet,
    object: &ObjectSpec,
) -> Result<SphericalFit, WorkspaceError> {
    if object.shape != ObjectShape::Sphere {
        return Err(WorkspaceError::WrongShape {
            expected: ObjectShape::Sphere,
            found: object.shape,
        });
    }
    if set.poses.is_empty() {
        return Err(WorkspaceError::EmptySet);
    }
    let d = object.grasp_diameter;
    let widest: Vec<f64> = set.poses.iter().map(|p| p.section.widest_diameter.mm()).collect();
    let fit = match closing_fraction(&widest, &widest, d.mm()) {
        Some(f) => FitResult::fit(f),
        None => FitResult::miss(LimitingConstraint::Span),
    };
    let enclosed = set
        .poses
        .iter()
        .any(|p| d <= p.section.widest_diameter && d >= p.section.distal_diameter);
    Ok(SphericalFit { fit, enclosed })
}
