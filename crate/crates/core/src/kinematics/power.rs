use alloc::vec::Vec;

use super::{both_fingers, forward_kinematics, power_valid, FingerPoints, JointConfig, KinematicsError, PlanarHandModel};
use crate::model::{CylindricalSection, SectionLine};
use crate::units::Length;

/// Interior depths sampled when looking for the widest bulge.
const BULGE_SAMPLES: usize = 2000;

// Horizontal coordinates where a finger's links cross depth `y`.
fn crossings(f: &FingerPoints, y: f64) -> impl Iterator<Item = f64> + '_ {
    [(f.base, f.knuckle), (f.knuckle, f.tip)]
        .into_iter()
        .filter_map(move |(a, b)| {
            let (lo, hi) = if a.1 <= b.1 { (a, b) } else { (b, a) };
            if y < lo.1 || y > hi.1 {
                return None;
            }
            if hi.1 == lo.1 {
                // horizontal link: its inner end is what faces the object
                return Some(if a.1 == y { a.0.max(b.0) } else { a.0 });
            }
            let t = (y - lo.1) / (hi.1 - lo.1);
            Some(lo.0 + t * (hi.0 - lo.0))
        })
}

/// Gap between the inner faces of the fingers at depth `y`, along the span
/// axis. `None` when either finger does not reach that depth.
pub(crate) fn face_separation(left: &FingerPoints, right: &FingerPoints, y: f64) -> Option<f64> {
    // A horizontal left link crossing reports its larger x, which is already
    // the inner end; for the right finger we want the smallest x.
    let l = crossings(left, y).fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))));
    let r = crossings(right, y).fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.min(x))));
    Some(r? - l?)
}

/// Cylindrical power sections of a wrapping configuration.
///
/// * `SpanLine`: at the mean contact depth, spanning the two contacts.
/// * `Inner`: at the proximal joints on the palm, spanning the finger bases.
/// * `Mid`: at the depth strictly between those two where the inner faces
///   are farthest apart, which captures fingers bulging outward.
///
/// The configuration must satisfy the power rule for the largest cylinder
/// those sections admit, resting on the palm (diameter = the smallest span,
/// capped by the span line depth; centre at half that diameter).
pub fn derive_power_sections(
    model: &PlanarHandModel,
    config: &JointConfig,
) -> Result<[CylindricalSection; 3], KinematicsError> {
    model.validate()?;
    let frames = forward_kinematics(model, config)?;
    let (left, right) = both_fingers(model, config);

    let line_depth = (left.contact.1 + right.contact.1) / 2.0;
    let line_span = right.contact.0 - left.contact.0;
    let inner_depth = (left.base.1 + right.base.1) / 2.0;
    let inner_span = right.base.0 - left.base.0;
    if !(line_depth > inner_depth) {
        return Err(KinematicsError::ConstraintUnsatisfied);
    }

    let mid_target = (inner_depth + line_depth) / 2.0;
    let mut mid: Option<(f64, f64)> = None;
    for i in 1..BULGE_SAMPLES {
        let y = inner_depth + (line_depth - inner_depth) * (i as f64) / (BULGE_SAMPLES as f64);
        let Some(sep) = face_separation(&left, &right, y) else {
            continue;
        };
        let better = match mid {
            None => true,
            Some((best_y, best_sep)) => {
                sep > best_sep || (sep == best_sep && (y - mid_target).abs() < (best_y - mid_target).abs())
            }
        };
        if better {
            mid = Some((y, sep));
        }
    }
    let (mid_depth, mid_span) = mid.ok_or(KinematicsError::ConstraintUnsatisfied)?;

    let spans: Vec<f64> = [inner_span, mid_span, line_span].into();
    let diameter = spans.iter().copied().fold(line_depth, f64::min);
    if !(diameter > 0.0) || !power_valid(&frames, diameter / 2.0) {
        return Err(KinematicsError::ConstraintUnsatisfied);
    }

    let section = |line, span: f64, depth: f64| CylindricalSection {
        line,
        span: Length::from_mm(span),
        depth: Length::from_mm(depth),
    };
    Ok([
        section(SectionLine::Inner, inner_span, inner_depth),
        section(SectionLine::Mid, mid_span, mid_depth),
        section(SectionLine::SpanLine, line_span, line_depth),
    ])
}
