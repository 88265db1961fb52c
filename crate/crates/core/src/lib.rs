//! Hand workspace measurements for grasp benchmarking.
//!
//! The crate models the measurement record of a robot hand (one-time span and
//! width measurements, precision and power grasp pose sets), checks a record
//! against the measurement protocol, normalizes object sizes against a hand's
//! precision span range, approximates the graspable span/depth region, and
//! provides a planar two-finger kinematic oracle that derives the same
//! quantities from a simplified hand model.
//!
//! Everything here is pure computation over immutable values. File formats,
//! rendering and the command line live in the `grasp-gauge` crate.
//!
//! Conventions: all lengths are millimetres, all angles are degrees. *Span*
//! runs between the opposing fingers, *depth* points out of the palm and
//! *width* runs along the height of the grasped object.

#![no_std]
// `!(a > b)` is used on purpose so NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod angle;
pub mod kinematics;
pub mod model;
pub mod sizing;
pub mod units;
pub mod validate;
pub mod workspace;

pub use kinematics::{
    absolute_max_span, compare_profiles, derive_power_sections, derive_precision_curve,
    derive_precision_poses, forward_kinematics, power_valid, precision_valid, ContactFrame,
    CurveComparison, DerivedPose, FingerJoints, FingerSpec, JointConfig, JointLimits,
    KinematicsError, PlanarHandModel,
};
pub use model::{
    ContactChoice, CylindricalPose, CylindricalSection, HandProfile, MeasurementMethod,
    ObjectShape, ObjectSpec, PoseLabel, PoseSample, PowerCylindricalSet, PowerSphericalSet,
    PrecisionSet, Provenance, SectionLine, SphericalPose, SphericalSection, WidthRange,
};
pub use sizing::{
    classify, classify_object, object_dimension_for, precision_span_range, relative_size, GraspKind, ObjectSizing,
    RelativeSize, SizeClass, SizingError,
};
pub use units::Length;
pub use validate::{validate_profile, Issue, IssueCode, Severity, ValidationReport};
pub use workspace::{
    build_precision_curve, fits_power_cylindrical, fits_power_spherical, fits_precision,
    graspable_area, interpolate_depth, trapezoid_area, CurveError, CurveSource, FitResult,
    LimitingConstraint, SpanDepthCurve, SphericalFit, WorkspaceError,
};
