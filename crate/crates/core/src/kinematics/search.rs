//! Exhaustive grid search for precision grasp poses.
//!
//! The joint grid is four-dimensional (six with slides), but the precision
//! rule factors: the face-angle test involves one finger at a time and the
//! two fingers only interact through the depth match and the span between
//! them. Each finger's grid is enumerated once, filtered by its face angle,
//! and right-finger contacts are sorted by depth so every left contact only
//! visits partners within the depth tolerance. The result is the same as
//! walking every grid point of the full joint box.

use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{
    face_tilt, finger_points, FingerJoints, JointConfig, JointLimits, KinematicsError, PlanarHandModel, Side,
    PRECISION_DEPTH_TOLERANCE, PRECISION_MAX_FACE_ANGLE,
};
use crate::model::PoseLabel;
use crate::workspace::{CurveSource, SpanDepthCurve};

/// Upper bound on grid points per finger.
const MAX_FINGER_GRID: usize = 20_000_000;

/// One pose found by the search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedPose {
    pub pose: PoseLabel,
    pub config: JointConfig,
    /// Horizontal separation of the contacts.
    pub span: f64,
    /// Depth of the span line's midpoint.
    pub depth: f64,
}

#[derive(Clone, Copy, Debug)]
struct Contact {
    x: f64,
    depth: f64,
    joints: FingerJoints,
    index: usize,
}

/// Grid over `[min, max]` anchored at `min` with spacing `step`; `max` is
/// always included. Halving `step` yields a superset of the points.
pub(crate) fn grid(limits: JointLimits, step: f64) -> Vec<f64> {
    let mut points = Vec::new();
    let mut k = 0u64;
    loop {
        let v = limits.min + (k as f64) * step;
        if v > limits.max {
            break;
        }
        points.push(v);
        k += 1;
    }
    if points.last() != Some(&limits.max) {
        points.push(limits.max);
    }
    points
}

fn check_args(model: &PlanarHandModel, step: f64) -> Result<(), KinematicsError> {
    model.validate()?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(KinematicsError::InvalidArgument("grid step must be positive"));
    }
    for f in [&model.left, &model.right] {
        let size = [f.proximal_limits, f.distal_limits, f.slide_limits]
            .iter()
            .map(|l| ((l.max - l.min) / step) as usize + 2)
            .try_fold(1usize, |acc, n| acc.checked_mul(n))
            .unwrap_or(usize::MAX);
        if size > MAX_FINGER_GRID {
            return Err(KinematicsError::InvalidArgument("grid step too fine for the joint ranges"));
        }
    }
    Ok(())
}

fn for_each_joint(
    model: &PlanarHandModel,
    side: Side,
    step: f64,
    mut visit: impl FnMut(FingerJoints),
) {
    let spec = match side {
        Side::Left => &model.left,
        Side::Right => &model.right,
    };
    let slides = grid(spec.slide_limits, step);
    let proximal = grid(spec.proximal_limits, step);
    let distal = grid(spec.distal_limits, step);
    for &slide in &slides {
        for &p in &proximal {
            for &d in &distal {
                visit(FingerJoints { proximal: p, distal: d, slide });
            }
        }
    }
}

fn precision_contacts(model: &PlanarHandModel, side: Side, step: f64) -> Vec<Contact> {
    let (spec, base) = match side {
        Side::Left => (&model.left, model.left_base_x),
        Side::Right => (&model.right, model.right_base_x),
    };
    let mut out = Vec::new();
    let mut index = 0;
    for_each_joint(model, side, step, |joints| {
        let i = index;
        index += 1;
        if face_tilt(joints.proximal + joints.distal) > PRECISION_MAX_FACE_ANGLE {
            return;
        }
        let pts = finger_points(spec, base, side, joints, model.contact_choice);
        out.push(Contact {
            x: pts.contact.0,
            depth: pts.contact.1,
            joints,
            index: i,
        });
    });
    out
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    span: f64,
    depth: f64,
    left: Contact,
    right: Contact,
}

impl Pair {
    fn indices(&self) -> (usize, usize) {
        (self.left.index, self.right.index)
    }

    fn derived(&self, pose: PoseLabel) -> DerivedPose {
        DerivedPose {
            pose,
            config: JointConfig {
                left: self.left.joints,
                right: self.right.joints,
            },
            span: self.span,
            depth: self.depth,
        }
    }
}

// Keep the pair that orders first under `cmp`.
fn keep(best: &mut Option<Pair>, cand: Pair, cmp: impl Fn(&Pair, &Pair) -> Ordering) {
    match best {
        Some(b) if cmp(&cand, b) != Ordering::Less => {}
        _ => *best = Some(cand),
    }
}

/// Visits every precision-valid pair with non-negative span (the fingers
/// cannot pass through each other).
fn for_each_pair(left: &[Contact], right_by_depth: &[Contact], mut visit: impl FnMut(Pair)) {
    // widened window, exact test inside
    let slack = PRECISION_DEPTH_TOLERANCE + 1e-9;
    for l in left {
        let lo = right_by_depth.partition_point(|r| r.depth < l.depth - slack);
        let hi = right_by_depth.partition_point(|r| r.depth <= l.depth + slack);
        for r in &right_by_depth[lo..hi] {
            if (l.depth - r.depth).abs() > PRECISION_DEPTH_TOLERANCE {
                continue;
            }
            let span = r.x - l.x;
            if span < 0.0 {
                continue;
            }
            visit(Pair {
                span,
                depth: (l.depth + r.depth) / 2.0,
                left: *l,
                right: *r,
            });
        }
    }
}

/// Finds precision grasp poses by exhaustive search over the joint grid.
///
/// Returns `n_poses` poses ordered open to closed: the widest valid span,
/// the narrowest non-negative valid span, and `n_poses - 2` poses at evenly
/// spaced spans in between. Among configurations with the same span the
/// deepest span line is kept, so the poses trace the upper envelope of the
/// reachable span/depth region. Intermediate poses take the deepest
/// configuration within `min(0.5 mm, spacing / 4)` of their target span, or
/// the closest span when nothing lies that near.
pub fn derive_precision_poses(
    model: &PlanarHandModel,
    n_poses: usize,
    grid_step: f64,
) -> Result<Vec<DerivedPose>, KinematicsError> {
    if n_poses < 3 {
        return Err(KinematicsError::InvalidArgument("at least 3 poses are required"));
    }
    check_args(model, grid_step)?;
    let left = precision_contacts(model, Side::Left, grid_step);
    let mut right = precision_contacts(model, Side::Right, grid_step);
    right.sort_by(|a, b| a.depth.total_cmp(&b.depth).then(a.index.cmp(&b.index)));

    let mut widest: Option<Pair> = None;
    let mut narrowest: Option<Pair> = None;
    for_each_pair(&left, &right, |p| {
        keep(&mut widest, p, |a, b| {
            b.span
                .total_cmp(&a.span)
                .then(b.depth.total_cmp(&a.depth))
                .then(a.indices().cmp(&b.indices()))
        });
        keep(&mut narrowest, p, |a, b| {
            a.span
                .total_cmp(&b.span)
                .then(b.depth.total_cmp(&a.depth))
                .then(a.indices().cmp(&b.indices()))
        });
    });
    let (widest, narrowest) = match (widest, narrowest) {
        (Some(w), Some(n)) => (w, n),
        _ => return Err(KinematicsError::NoValidConfiguration),
    };
    let (min, max) = (narrowest.span, widest.span);
    if !(max > min) {
        return Err(KinematicsError::DegeneratePoses);
    }

    let n_inner = n_poses - 2;
    let spacing = (max - min) / (n_poses - 1) as f64;
    let band = (spacing / 4.0).min(PRECISION_DEPTH_TOLERANCE);
    let mut in_band: Vec<Option<Pair>> = alloc::vec![None; n_inner];
    let mut nearest: Vec<Option<Pair>> = alloc::vec![None; n_inner];
    for_each_pair(&left, &right, |p| {
        let k = libm::round((p.span - min) / spacing).clamp(1.0, n_inner as f64) as usize;
        let target = min + k as f64 * spacing;
        let dist = (p.span - target).abs();
        let slot = k - 1;
        if dist <= band {
            keep(&mut in_band[slot], p, |a, b| {
                b.depth
                    .total_cmp(&a.depth)
                    .then((a.span - target).abs().total_cmp(&(b.span - target).abs()))
                    .then(a.span.total_cmp(&b.span))
                    .then(a.indices().cmp(&b.indices()))
            });
        }
        keep(&mut nearest[slot], p, |a, b| {
            (a.span - target)
                .abs()
                .total_cmp(&(b.span - target).abs())
                .then(b.depth.total_cmp(&a.depth))
                .then(a.span.total_cmp(&b.span))
                .then(a.indices().cmp(&b.indices()))
        });
    });

    let mut poses = Vec::with_capacity(n_poses);
    poses.push(widest.derived(PoseLabel::Open));
    for slot in (0..n_inner).rev() {
        let pair = in_band[slot].or(nearest[slot]).ok_or(KinematicsError::DegeneratePoses)?;
        poses.push(pair.derived(PoseLabel::Intermediate((n_inner - slot) as u32)));
    }
    poses.push(narrowest.derived(PoseLabel::Closed));
    if poses.windows(2).any(|w| !(w[0].span > w[1].span)) {
        return Err(KinematicsError::DegeneratePoses);
    }
    Ok(poses)
}

/// The derived precision poses as a span/depth curve (ascending span).
pub fn derive_precision_curve(
    model: &PlanarHandModel,
    n_poses: usize,
    grid_step: f64,
) -> Result<SpanDepthCurve, KinematicsError> {
    let poses = derive_precision_poses(model, n_poses, grid_step)?;
    let points = poses.iter().rev().map(|p| (p.span, p.depth)).collect();
    SpanDepthCurve::new(points, CurveSource::Derived).map_err(|_| KinematicsError::DegeneratePoses)
}

/// Widest separation of the distal links anywhere on the joint grid, with
/// every grasp rule dropped. Distal links are segments, so their extreme
/// points are the knuckle or the tip.
pub fn absolute_max_span(model: &PlanarHandModel, grid_step: f64) -> Result<f64, KinematicsError> {
    check_args(model, grid_step)?;
    let mut left_min = f64::INFINITY;
    for_each_joint(model, Side::Left, grid_step, |j| {
        let p = finger_points(&model.left, model.left_base_x, Side::Left, j, model.contact_choice);
        left_min = left_min.min(p.knuckle.0).min(p.tip.0);
    });
    let mut right_max = f64::NEG_INFINITY;
    for_each_joint(model, Side::Right, grid_step, |j| {
        let p = finger_points(&model.right, model.right_base_x, Side::Right, j, model.contact_choice);
        right_max = right_max.max(p.knuckle.0).max(p.tip.0);
    });
    Ok(right_max - left_min)
}
