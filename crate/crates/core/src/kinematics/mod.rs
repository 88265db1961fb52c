//! Planar two-finger kinematic oracle.
//!
//! Two opposing fingers stand on the palm plane (depth 0) at
//! `left_base_x < right_base_x`. Each finger is a proximal and a distal
//! link with revolute joints, plus an optional prismatic slide of the base
//! towards the hand centre (parallel-jaw grippers).
//!
//! Angles are expressed in each finger's own mirrored frame so a left and a
//! right finger with equal joint values are mirror images:
//!
//! * `proximal` is measured from the palm plane on the finger's outer side;
//!   90° points straight out of the palm, smaller values lean outwards.
//! * `distal` is the flexion relative to the proximal link; positive values
//!   curl the fingertip towards the opposing finger.
//! * `slide` moves the finger base towards the centre, in millimetres.

mod compare;
mod power;
mod search;

pub use compare::{compare_profiles, CurveComparison};
pub use power::derive_power_sections;
pub use search::{absolute_max_span, derive_precision_curve, derive_precision_poses, DerivedPose};

use crate::angle::{atan2_deg, direction_gap, sin_cos_deg};
use crate::model::ContactChoice;

/// Largest angle between a precision contact face and the palm normal.
pub const PRECISION_MAX_FACE_ANGLE: f64 = 30.0;
/// Largest depth mismatch between the two precision contacts.
pub const PRECISION_DEPTH_TOLERANCE: f64 = 0.5;
/// Smallest angle between a power contact's distal link and the span line.
pub const POWER_MIN_SPANLINE_ANGLE: f64 = 80.0;
/// Joint-limit slack for configurations that were computed, not typed in.
const LIMIT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum KinematicsError {
    #[error("invalid hand model: {0}")]
    InvalidModel(&'static str),
    #[error("{joint} = {value} is outside its limits [{min}, {max}]")]
    JointLimitViolation {
        joint: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("no joint configuration on the search grid satisfies the precision grasp constraints")]
    NoValidConfiguration,
    #[error("derived poses do not have distinct spans; use a finer grid or fewer poses")]
    DegeneratePoses,
    #[error("invalid search argument: {0}")]
    InvalidArgument(&'static str),
    #[error("configuration does not satisfy the power grasp constraints")]
    ConstraintUnsatisfied,
    #[error("span ranges [{a_min}, {a_max}] and [{b_min}, {b_max}] do not overlap")]
    DisjointSpanRanges {
        a_min: f64,
        a_max: f64,
        b_min: f64,
        b_max: f64,
    },
}

/// Closed interval of joint values.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointLimits {
    pub min: f64,
    pub max: f64,
}

impl JointLimits {
    pub const fn new(min: f64, max: f64) -> Self {
        JointLimits { min, max }
    }

    pub const fn fixed(value: f64) -> Self {
        JointLimits { min: value, max: value }
    }

    fn contains(&self, v: f64) -> bool {
        v >= self.min - LIMIT_EPS && v <= self.max + LIMIT_EPS
    }

    fn is_valid(&self) -> bool {
        self.min.is_finite() && self.max.is_finite() && self.min <= self.max
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FingerSpec {
    pub proximal_length: f64,
    pub distal_length: f64,
    pub proximal_limits: JointLimits,
    pub distal_limits: JointLimits,
    pub slide_limits: JointLimits,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarHandModel {
    pub left_base_x: f64,
    pub right_base_x: f64,
    pub left: FingerSpec,
    pub right: FingerSpec,
    pub contact_choice: ContactChoice,
}

impl PlanarHandModel {
    pub fn validate(&self) -> Result<(), KinematicsError> {
        if !(self.left_base_x.is_finite() && self.right_base_x.is_finite()) {
            return Err(KinematicsError::InvalidModel("base positions must be finite"));
        }
        if !(self.left_base_x < self.right_base_x) {
            return Err(KinematicsError::InvalidModel("left base must lie left of right base"));
        }
        for f in [&self.left, &self.right] {
            if !(f.proximal_length > 0.0 && f.distal_length > 0.0)
                || !(f.proximal_length.is_finite() && f.distal_length.is_finite())
            {
                return Err(KinematicsError::InvalidModel("link lengths must be positive"));
            }
            if !(f.proximal_limits.is_valid() && f.distal_limits.is_valid() && f.slide_limits.is_valid()) {
                return Err(KinematicsError::InvalidModel("joint limits must be finite with min <= max"));
            }
        }
        Ok(())
    }

    /// Reflection across the depth axis: the fingers swap sides.
    pub fn mirrored(&self) -> Self {
        PlanarHandModel {
            left_base_x: -self.right_base_x,
            right_base_x: -self.left_base_x,
            left: self.right,
            right: self.left,
            contact_choice: self.contact_choice,
        }
    }

    fn finger(&self, side: Side) -> (&FingerSpec, f64) {
        match side {
            Side::Left => (&self.left, self.left_base_x),
            Side::Right => (&self.right, self.right_base_x),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FingerJoints {
    pub proximal: f64,
    pub distal: f64,
    pub slide: f64,
}

impl FingerJoints {
    pub const fn new(proximal: f64, distal: f64) -> Self {
        FingerJoints { proximal, distal, slide: 0.0 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct JointConfig {
    pub left: FingerJoints,
    pub right: FingerJoints,
}

impl JointConfig {
    pub const fn symmetric(joints: FingerJoints) -> Self {
        JointConfig { left: joints, right: joints }
    }
}

/// Contact point of one finger with the angles the grasp rules look at.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContactFrame {
    /// `(span coordinate, depth)` in millimetres.
    pub position: (f64, f64),
    /// Angle between the contact face's normal and the palm plane, which is
    /// the tilt of the distal link away from the palm normal; in `[0, 90]`.
    pub surface_angle_vs_palm: f64,
    /// Angle between the distal link (pointing to the tip) and the span line
    /// pointing away from the opposing contact; 90° for a finger standing
    /// straight up, larger when the finger wraps inward. In `[0, 180]`.
    pub surface_angle_vs_spanline: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

impl Side {
    /// Sign of the outward span direction.
    fn outward(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// Joint positions of one finger.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct FingerPoints {
    pub base: (f64, f64),
    pub knuckle: (f64, f64),
    pub contact: (f64, f64),
    pub tip: (f64, f64),
    /// Absolute distal angle in the finger's mirrored frame.
    pub distal_angle: f64,
}

// x = base + o * offset with a single rounding path per side, so mirrored
// models produce bit-identical spans.
pub(crate) fn finger_points(
    spec: &FingerSpec,
    base_x: f64,
    side: Side,
    joints: FingerJoints,
    contact: ContactChoice,
) -> FingerPoints {
    let o = side.outward();
    let (s1, c1) = sin_cos_deg(joints.proximal);
    let distal_angle = joints.proximal + joints.distal;
    let (s2, c2) = sin_cos_deg(distal_angle);
    let contact_len = match contact {
        ContactChoice::DistalMidpoint => spec.distal_length / 2.0,
        ContactChoice::Fingertip => spec.distal_length,
    };
    let knuckle_off = spec.proximal_length * c1 - joints.slide;
    let knuckle_y = spec.proximal_length * s1;
    let point = |len: f64| {
        let off = knuckle_off + len * c2;
        (base_x + o * off, knuckle_y + len * s2)
    };
    FingerPoints {
        base: (base_x + o * -joints.slide, 0.0),
        knuckle: (base_x + o * knuckle_off, knuckle_y),
        contact: point(contact_len),
        tip: point(spec.distal_length),
        distal_angle,
    }
}

/// Tilt of a distal link at absolute angle `distal_angle` away from the palm
/// normal, folded to a line angle in `[0, 90]`.
pub(crate) fn face_tilt(distal_angle: f64) -> f64 {
    let from_normal = direction_gap(distal_angle, 90.0);
    if from_normal > 90.0 {
        180.0 - from_normal
    } else {
        from_normal
    }
}

fn check_limits(model: &PlanarHandModel, config: &JointConfig) -> Result<(), KinematicsError> {
    let checks = [
        ("left proximal", config.left.proximal, model.left.proximal_limits),
        ("left distal", config.left.distal, model.left.distal_limits),
        ("left slide", config.left.slide, model.left.slide_limits),
        ("right proximal", config.right.proximal, model.right.proximal_limits),
        ("right distal", config.right.distal, model.right.distal_limits),
        ("right slide", config.right.slide, model.right.slide_limits),
    ];
    for (joint, value, lim) in checks {
        if !lim.contains(value) {
            return Err(KinematicsError::JointLimitViolation {
                joint,
                value,
                min: lim.min,
                max: lim.max,
            });
        }
    }
    Ok(())
}

pub(crate) fn both_fingers(model: &PlanarHandModel, config: &JointConfig) -> (FingerPoints, FingerPoints) {
    let (lspec, lx) = model.finger(Side::Left);
    let (rspec, rx) = model.finger(Side::Right);
    (
        finger_points(lspec, lx, Side::Left, config.left, model.contact_choice),
        finger_points(rspec, rx, Side::Right, config.right, model.contact_choice),
    )
}

fn frame(this: &FingerPoints, other: &FingerPoints, side: Side) -> ContactFrame {
    // distal direction as a standard math angle
    let distal_dir = match side {
        Side::Right => this.distal_angle,
        Side::Left => 180.0 - this.distal_angle,
    };
    let dx = this.contact.0 - other.contact.0;
    let dy = this.contact.1 - other.contact.1;
    let outward = if dx == 0.0 && dy == 0.0 {
        atan2_deg(0.0, side.outward())
    } else {
        atan2_deg(dy, dx)
    };
    ContactFrame {
        position: this.contact,
        surface_angle_vs_palm: face_tilt(this.distal_angle),
        surface_angle_vs_spanline: direction_gap(distal_dir, outward),
    }
}

/// Contact frames of the left and right finger.
pub fn forward_kinematics(
    model: &PlanarHandModel,
    config: &JointConfig,
) -> Result<(ContactFrame, ContactFrame), KinematicsError> {
    check_limits(model, config)?;
    let (l, r) = both_fingers(model, config);
    Ok((frame(&l, &r, Side::Left), frame(&r, &l, Side::Right)))
}

/// Precision rule: both contact faces within 30° of the palm normal
/// (inclusive) and both contacts on one span line (depths within 0.5 mm).
pub fn precision_valid(frames: &(ContactFrame, ContactFrame)) -> bool {
    let (l, r) = frames;
    l.surface_angle_vs_palm <= PRECISION_MAX_FACE_ANGLE
        && r.surface_angle_vs_palm <= PRECISION_MAX_FACE_ANGLE
        && (l.position.1 - r.position.1).abs() <= PRECISION_DEPTH_TOLERANCE
}

/// Power rule: both contacts strictly beyond the object's centre (farther
/// from the palm) with distal links at least 80° to the span line.
pub fn power_valid(frames: &(ContactFrame, ContactFrame), object_center_depth: f64) -> bool {
    let (l, r) = frames;
    [l, r].iter().all(|f| {
        f.position.1 > object_center_depth && f.surface_angle_vs_spanline >= POWER_MIN_SPANLINE_ANGLE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn two_link(contact: ContactChoice) -> PlanarHandModel {
        let finger = FingerSpec {
            proximal_length: 50.0,
            distal_length: 30.0,
            proximal_limits: JointLimits::new(60.0, 120.0),
            distal_limits: JointLimits::new(0.0, 90.0),
            slide_limits: JointLimits::fixed(0.0),
        };
        PlanarHandModel {
            left_base_x: -25.0,
            right_base_x: 25.0,
            left: finger,
            right: finger,
            contact_choice: contact,
        }
    }

    #[test]
    fn straight_fingers() {
        let cfg = JointConfig::symmetric(FingerJoints::new(90.0, 0.0));
        let (l, r) = forward_kinematics(&two_link(ContactChoice::DistalMidpoint), &cfg).unwrap();
        assert_eq!(l.position, (-25.0, 50.0 + 15.0));
        assert_eq!(r.position, (25.0, 65.0));
        assert_eq!(l.surface_angle_vs_palm, 0.0);
        assert_eq!(l.surface_angle_vs_spanline, 90.0);
        assert_eq!(r.surface_angle_vs_spanline, 90.0);

        let (l, _) = forward_kinematics(&two_link(ContactChoice::Fingertip), &cfg).unwrap();
        assert_eq!(l.position.1, 80.0);
    }

    #[test]
    fn distal_bent_inward() {
        // proximal up, distal flexed 90° inward: distal points at the centre
        let cfg = JointConfig::symmetric(FingerJoints::new(90.0, 90.0));
        let (l, r) = forward_kinematics(&two_link(ContactChoice::DistalMidpoint), &cfg).unwrap();
        // left: knuckle (-25, 50), distal direction +x, midpoint 15 along
        assert_eq!(l.position, (-25.0 + 15.0, 50.0));
        assert_eq!(r.position, (25.0 - 15.0, 50.0));
        assert_eq!(l.surface_angle_vs_palm, 90.0);
        assert_eq!(l.surface_angle_vs_spanline, 180.0);

        // general angle against an independent rotation
        let cfg = JointConfig::symmetric(FingerJoints::new(70.0, 35.0));
        let (l, _) = forward_kinematics(&two_link(ContactChoice::DistalMidpoint), &cfg).unwrap();
        let (a1, a2) = (110f64.to_radians(), (110f64 - 35.0).to_radians());
        let kx = -25.0 + 50.0 * a1.cos();
        let ky = 50.0 * a1.sin();
        let ex = kx + 15.0 * a2.cos();
        let ey = ky + 15.0 * a2.sin();
        assert!((l.position.0 - ex).abs() < 1e-9 && (l.position.1 - ey).abs() < 1e-9);
        assert!((l.surface_angle_vs_palm - 15.0).abs() < 1e-9);
    }

    #[test]
    fn joint_limits_enforced() {
        let cfg = JointConfig::symmetric(FingerJoints::new(130.0, 0.0));
        assert!(matches!(
            forward_kinematics(&two_link(ContactChoice::Fingertip), &cfg),
            Err(KinematicsError::JointLimitViolation { joint: "left proximal", .. })
        ));
    }

    fn frames(palm: [f64; 2], spanline: [f64; 2], depth: [f64; 2]) -> (ContactFrame, ContactFrame) {
        let f = |i: usize| ContactFrame {
            position: (0.0, depth[i]),
            surface_angle_vs_palm: palm[i],
            surface_angle_vs_spanline: spanline[i],
        };
        (f(0), f(1))
    }

    #[test]
    fn precision_rule() {
        assert!(precision_valid(&frames([0.0, 0.0], [90.0, 90.0], [40.0, 40.0])));
        assert!(!precision_valid(&frames([31.0, 0.0], [90.0, 90.0], [40.0, 40.0])));
        assert!(precision_valid(&frames([30.0, 30.0], [90.0, 90.0], [40.0, 40.0])));
        assert!(precision_valid(&frames([0.0, 0.0], [90.0, 90.0], [40.0, 40.5])));
        assert!(!precision_valid(&frames([0.0, 0.0], [90.0, 90.0], [40.0, 40.6])));
    }

    #[test]
    fn power_rule() {
        assert!(power_valid(&frames([0.0; 2], [90.0, 90.0], [50.0, 50.0]), 30.0));
        assert!(!power_valid(&frames([0.0; 2], [79.0, 90.0], [50.0, 50.0]), 30.0));
        assert!(power_valid(&frames([0.0; 2], [80.0, 80.0], [50.0, 50.0]), 30.0));
        assert!(!power_valid(&frames([0.0; 2], [90.0, 90.0], [30.0, 30.0]), 30.0));
    }

    #[test]
    fn model_checks() {
        let mut m = two_link(ContactChoice::Fingertip);
        assert!(m.validate().is_ok());
        m.left_base_x = 30.0;
        assert!(m.validate().is_err());
        let mut m = two_link(ContactChoice::Fingertip);
        m.right.distal_limits = JointLimits::new(10.0, 0.0);
        assert!(m.validate().is_err());
    }

    #[test]
    fn mirror_is_exact() {
        let m = two_link(ContactChoice::DistalMidpoint);
        let cfg = JointConfig {
            left: FingerJoints::new(75.5, 12.0),
            right: FingerJoints::new(101.0, 3.5),
        };
        let (l, r) = forward_kinematics(&m, &cfg).unwrap();
        let swapped = JointConfig { left: cfg.right, right: cfg.left };
        let (ml, mr) = forward_kinematics(&m.mirrored(), &swapped).unwrap();
        assert_eq!(ml.position, (-r.position.0, r.position.1));
        assert_eq!(mr.position, (-l.position.0, l.position.1));
    }
}
