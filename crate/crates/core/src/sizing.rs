//! Object size relative to a hand.
//!
//! An object dimension `d` is expressed as a fraction of the hand's precision
//! span range `[m, M]`: `(d - m) / (M - m)`. Fractions up to 0.30 are small,
//! from 0.70 up to 1.0 large, and anything strictly between is medium.

use core::fmt;

use crate::model::{HandProfile, ObjectSpec};

/// Upper bound (inclusive) of the small class.
pub const SMALL_MAX: f64 = 0.30;
/// Lower bound (inclusive) of the large class.
pub const LARGE_MIN: f64 = 0.70;

/// Representative fractions for small, medium and large objects.
pub const DEFAULT_SMALL: f64 = 0.25;
pub const DEFAULT_MEDIUM: f64 = 0.50;
pub const DEFAULT_LARGE: f64 = 0.75;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraspKind {
    Precision,
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum SizingError {
    #[error("profile has no precision set")]
    MissingGraspSet,
    #[error("precision span range is degenerate (m = M = {span} mm)")]
    DegenerateSpanRange { span: f64 },
    #[error("object dimension {0} mm must be positive")]
    NonPositiveDimension(f64),
    #[error("fraction {0} must not be negative")]
    NegativeFraction(f64),
}

/// An object dimension expressed against a hand's span range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RelativeSize {
    /// `(d - m) / (M - m)`; below 0 or above 1 when the object falls outside
    /// the span range.
    pub fraction: f64,
    /// `m`
    pub hand_min_span: f64,
    /// `M`
    pub hand_max_span: f64,
}

impl RelativeSize {
    pub fn new(min_span: f64, max_span: f64, object_dim: f64) -> Result<Self, SizingError> {
        check_range(min_span, max_span)?;
        if !(object_dim > 0.0) {
            return Err(SizingError::NonPositiveDimension(object_dim));
        }
        Ok(RelativeSize {
            fraction: (object_dim - min_span) / (max_span - min_span),
            hand_min_span: min_span,
            hand_max_span: max_span,
        })
    }

    pub fn class(&self) -> SizeClass {
        SizeClass::of_fraction(self.fraction)
    }
}

/// Inverse of [`RelativeSize::new`]: the dimension at `fraction` of `[m, M]`.
pub fn dimension_at(min_span: f64, max_span: f64, fraction: f64) -> Result<f64, SizingError> {
    check_range(min_span, max_span)?;
    if fraction < 0.0 {
        return Err(SizingError::NegativeFraction(fraction));
    }
    Ok(min_span + fraction * (max_span - min_span))
}

fn check_range(min_span: f64, max_span: f64) -> Result<(), SizingError> {
    if max_span > min_span {
        Ok(())
    } else {
        Err(SizingError::DegenerateSpanRange { span: min_span })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SizeClass {
    TooSmall,
    Small,
    Medium,
    Large,
    TooLarge,
}

impl SizeClass {
    pub const ALL: [SizeClass; 5] = [
        SizeClass::TooSmall,
        SizeClass::Small,
        SizeClass::Medium,
        SizeClass::Large,
        SizeClass::TooLarge,
    ];

    pub fn of_fraction(fraction: f64) -> Self {
        if fraction < 0.0 {
            SizeClass::TooSmall
        } else if fraction <= SMALL_MAX {
            SizeClass::Small
        } else if fraction < LARGE_MIN {
            SizeClass::Medium
        } else if fraction <= 1.0 {
            SizeClass::Large
        } else {
            SizeClass::TooLarge
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SizeClass::TooSmall => "TooSmall",
            SizeClass::Small => "Small",
            SizeClass::Medium => "Medium",
            SizeClass::Large => "Large",
            SizeClass::TooLarge => "TooLarge",
        }
    }
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// Precision span range `(m, M)` of a profile in millimetres.
pub fn precision_span_range(profile: &HandProfile) -> Result<(f64, f64), SizingError> {
    let (min, max) = profile
        .precision
        .as_ref()
        .and_then(|p| p.span_range())
        .ok_or(SizingError::MissingGraspSet)?;
    let (m, big_m) = (min.mm(), max.mm());
    check_range(m, big_m)?;
    Ok((m, big_m))
}

pub fn relative_size(
    profile: &HandProfile,
    grasp: GraspKind,
    object_dim: f64,
) -> Result<RelativeSize, SizingError> {
    match grasp {
        GraspKind::Precision => {
            let (m, big_m) = precision_span_range(profile)?;
            RelativeSize::new(m, big_m, object_dim)
        }
    }
}

pub fn classify(r: &RelativeSize) -> SizeClass {
    r.class()
}

pub fn object_dimension_for(profile: &HandProfile, fraction: f64) -> Result<f64, SizingError> {
    let (m, big_m) = precision_span_range(profile)?;
    dimension_at(m, big_m, fraction)
}

/// Size class of an object plus the width gate on its height. The two are
/// reported separately: an object can be a perfectly sized `Medium` and
/// still be too short for the opposing fingers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ObjectSizing {
    pub relative: RelativeSize,
    pub size: SizeClass,
    pub height_ok: bool,
}

pub fn classify_object(profile: &HandProfile, object: &ObjectSpec) -> Result<ObjectSizing, SizingError> {
    let relative = relative_size(profile, GraspKind::Precision, object.grasp_diameter.mm())?;
    Ok(ObjectSizing {
        relative,
        size: relative.class(),
        height_ok: height_ok(profile, object),
    })
}

pub(crate) fn height_ok(profile: &HandProfile, object: &ObjectSpec) -> bool {
    let w = &profile.width;
    object.height >= w.min_width && (w.object_height_unbounded || object.height <= w.max_width)
}
