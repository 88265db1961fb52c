use alloc::vec::Vec;

use super::KinematicsError;
use crate::workspace::{interpolate_depth, SpanDepthCurve};

/// Agreement between a derived and a measured span/depth curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveComparison {
    /// Largest |measured - derived| depth over the shared span range.
    pub max_abs_depth_error: f64,
    /// Larger of the differences between the two curves' min spans and
    /// between their max spans.
    pub span_range_mismatch: f64,
    pub pass: bool,
}

/// Evaluates the derived curve at every measured knot inside the shared span
/// range, and at both ends of that range.
pub fn compare_profiles(
    derived: &SpanDepthCurve,
    measured: &SpanDepthCurve,
    tolerance: f64,
) -> Result<CurveComparison, KinematicsError> {
    let (d_min, d_max) = derived.span_range();
    let (m_min, m_max) = measured.span_range();
    let lo = d_min.max(m_min);
    let hi = d_max.min(m_max);
    if lo > hi {
        return Err(KinematicsError::DisjointSpanRanges {
            a_min: d_min,
            a_max: d_max,
            b_min: m_min,
            b_max: m_max,
        });
    }
    let mut spans: Vec<f64> = measured
        .points()
        .iter()
        .map(|p| p.0)
        .filter(|s| *s >= lo && *s <= hi)
        .collect();
    spans.push(lo);
    spans.push(hi);

    let mut max_err: f64 = 0.0;
    for s in spans {
        // both lookups are in range by construction
        let (Ok(a), Ok(b)) = (interpolate_depth(derived, s), interpolate_depth(measured, s)) else {
            continue;
        };
        max_err = max_err.max((a - b).abs());
    }
    let mismatch = (d_min - m_min).abs().max((d_max - m_max).abs());
    Ok(CurveComparison {
        max_abs_depth_error: max_err,
        span_range_mismatch: mismatch,
        pass: max_err <= tolerance && mismatch <= tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workspace::CurveSource;

    fn curve(points: &[(f64, f64)]) -> SpanDepthCurve {
        SpanDepthCurve::new(points.to_vec(), CurveSource::Measured).unwrap()
    }

    #[test]
    fn identical_curves_pass() {
        let c = curve(&[(0.0, 80.0), (50.0, 75.0), (100.0, 60.0)]);
        let r = compare_profiles(&c, &c, 0.0).unwrap();
        assert_eq!(r.max_abs_depth_error, 0.0);
        assert_eq!(r.span_range_mismatch, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn constant_offset_fails() {
        let d = curve(&[(0.0, 80.0), (50.0, 75.0), (100.0, 60.0)]);
        let m = curve(&[(0.0, 82.0), (50.0, 77.0), (100.0, 62.0)]);
        let r = compare_profiles(&d, &m, 1.0).unwrap();
        assert_eq!(r.max_abs_depth_error, 2.0);
        assert!(!r.pass);
    }

    #[test]
    fn disjoint_ranges() {
        let a = curve(&[(0.0, 1.0), (25.0, 1.0), (50.0, 1.0)]);
        let b = curve(&[(60.0, 1.0), (80.0, 1.0), (100.0, 1.0)]);
        assert!(matches!(
            compare_profiles(&a, &b, 1.0),
            Err(KinematicsError::DisjointSpanRanges { .. })
        ));
    }
}
