//! Measurement records.
//!
//! Types here hold data exactly as recorded. Nothing is checked on
//! construction; [`crate::validate_profile`] decides whether a record follows
//! the measurement protocol. [`PrecisionSet::canonical`] is the one
//! constructor that orders samples for callers that build sets
//! programmatically.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::units::Length;

/// Minimum and maximum width of the hand.
///
/// `min_width` is the height of the shortest object the opposing fingers can
/// reach from the table; `max_width` is the height of the hand resting on
/// the table. `object_height_unbounded` marks hands that can grasp objects of
/// any height (the `+` suffix on a recorded maximum width). It never changes
/// `max_width` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WidthRange {
    pub min_width: Length,
    pub max_width: Length,
    pub object_height_unbounded: bool,
}

/// Position of a pose within a measured set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PoseLabel {
    /// Largest span.
    Open,
    /// One of the poses between open and closed, numbered from 1.
    Intermediate(u32),
    /// Smallest span.
    Closed,
}

impl PoseLabel {
    fn rank(self) -> (u8, u32) {
        match self {
            PoseLabel::Open => (0, 0),
            PoseLabel::Intermediate(i) => (1, i),
            PoseLabel::Closed => (2, 0),
        }
    }
}

impl Ord for PoseLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

impl PartialOrd for PoseLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PoseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoseLabel::Open => f.write_str("open"),
            PoseLabel::Intermediate(i) => write!(f, "intermediate-{i}"),
            PoseLabel::Closed => f.write_str("closed"),
        }
    }
}

/// A span/depth pair measured at one pose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoseSample {
    pub pose: PoseLabel,
    pub span: Length,
    pub depth: Length,
}

/// Where on the distal link a precision contact is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContactChoice {
    DistalMidpoint,
    Fingertip,
}

/// Precision grasp measurements, ordered from the open pose to the closed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionSet {
    pub contact_choice: ContactChoice,
    pub samples: Vec<PoseSample>,
}

/// Why [`PrecisionSet::canonical`] could not order a set of samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OrderingError {
    #[error("two samples share span {span} mm")]
    SpanTie { span: Length },
    #[error("sample with span {span} mm is labelled {found}, expected {expected}")]
    LabelMismatch {
        span: Length,
        found: PoseLabel,
        expected: &'static str,
    },
}

impl PrecisionSet {
    /// Orders samples by decreasing span and checks that labels agree with
    /// that order. The result does not depend on the order of `samples`.
    pub fn canonical(
        contact_choice: ContactChoice,
        mut samples: Vec<PoseSample>,
    ) -> Result<Self, OrderingError> {
        samples.sort_by(|a, b| {
            b.span
                .cmp(&a.span)
                .then(a.pose.cmp(&b.pose))
                .then(a.depth.cmp(&b.depth))
        });
        if let Some(w) = samples.windows(2).find(|w| w[0].span == w[1].span) {
            return Err(OrderingError::SpanTie { span: w[0].span });
        }
        let last = samples.len().saturating_sub(1);
        let mut prev_index = 0;
        for (i, s) in samples.iter().enumerate() {
            let expected = if i == 0 {
                "open"
            } else if i == last {
                "closed"
            } else {
                "intermediate"
            };
            let ok = match (expected, s.pose) {
                ("open", PoseLabel::Open) | ("closed", PoseLabel::Closed) => true,
                ("intermediate", PoseLabel::Intermediate(n)) if n > prev_index => {
                    prev_index = n;
                    true
                }
                _ => false,
            };
            if !ok {
                return Err(OrderingError::LabelMismatch {
                    span: s.span,
                    found: s.pose,
                    expected,
                });
            }
        }
        Ok(PrecisionSet {
            contact_choice,
            samples,
        })
    }

    /// Smallest and largest recorded span, `(m, M)`. On a validated set these
    /// are the closed and open poses.
    pub fn span_range(&self) -> Option<(Length, Length)> {
        let min = self.samples.iter().map(|s| s.span).min()?;
        let max = self.samples.iter().map(|s| s.span).max()?;
        Some((min, max))
    }
}

/// Measurement line of a cylindrical power grasp, from the palm outward.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectionLine {
    Inner,
    Mid,
    SpanLine,
}

impl SectionLine {
    pub const ALL: [SectionLine; 3] = [SectionLine::Inner, SectionLine::Mid, SectionLine::SpanLine];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CylindricalSection {
    pub line: SectionLine,
    pub span: Length,
    /// Distance of this line from the palm plane.
    pub depth: Length,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylindricalPose {
    pub pose: PoseLabel,
    pub sections: Vec<CylindricalSection>,
}

impl CylindricalPose {
    pub fn section(&self, line: SectionLine) -> Option<&CylindricalSection> {
        self.sections.iter().find(|s| s.line == line)
    }

    /// Diameter of the largest circle the conservative fit test accepts at
    /// this pose: the smallest section span, capped by the span line depth.
    pub fn inscribed_capacity(&self) -> Option<Length> {
        let min_span = self.sections.iter().map(|s| s.span).min()?;
        let span_line = self.section(SectionLine::SpanLine)?;
        Some(min_span.min(span_line.depth))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerCylindricalSet {
    pub poses: Vec<CylindricalPose>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphericalSection {
    pub base_diameter: Length,
    pub widest_diameter: Length,
    pub distal_diameter: Length,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphericalPose {
    pub pose: PoseLabel,
    pub section: SphericalSection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSphericalSet {
    pub poses: Vec<SphericalPose>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MeasurementMethod {
    #[default]
    Physical,
    CadModel,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub measurer: String,
    pub method: MeasurementMethod,
    pub photo_refs: Vec<String>,
}

/// The complete measurement record of one hand configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HandProfile {
    pub name: String,
    /// Free-form finger arrangement, e.g. `cylindrical` or `spherical`.
    pub configuration: String,
    /// Separation of the distal ends with the hand opened as far as it goes,
    /// ignoring whether anything could be grasped.
    pub absolute_max_span: Length,
    pub width: WidthRange,
    pub precision: Option<PrecisionSet>,
    pub power_cylindrical: Option<PowerCylindricalSet>,
    pub power_spherical: Option<PowerSphericalSet>,
    pub provenance: Provenance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectShape {
    Cylinder,
    Sphere,
    Box,
}

/// A benchmark object reduced to a primitive.
///
/// `grasp_diameter` is measured at the most likely grasp point. The file
/// parser rejects non-positive dimensions; in-memory values are not checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectSpec {
    pub name: String,
    pub id: Option<String>,
    pub shape: ObjectShape,
    pub grasp_diameter: Length,
    pub height: Length,
}
