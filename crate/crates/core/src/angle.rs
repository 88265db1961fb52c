// Degree-based trig. Multiples of 90° return exact values so axis-aligned
// fingers produce exact coordinates.

fn rem_360(deg: f64) -> f64 {
    let r = libm::fmod(deg, 360.0);
    if r < 0.0 {
        r + 360.0
    } else {
        r
    }
}

pub(crate) fn sin_cos_deg(deg: f64) -> (f64, f64) {
    let reduced = rem_360(deg);
    if reduced == 0.0 {
        return (0.0, 1.0);
    }
    if reduced == 90.0 {
        return (1.0, 0.0);
    }
    if reduced == 180.0 {
        return (0.0, -1.0);
    }
    if reduced == 270.0 {
        return (-1.0, 0.0);
    }
    let rad = reduced.to_radians();
    (libm::sin(rad), libm::cos(rad))
}

/// Direction angle of `(dx, dy)` in degrees, in `(-180, 180]`.
pub(crate) fn atan2_deg(dy: f64, dx: f64) -> f64 {
    if dy == 0.0 {
        return if dx < 0.0 { 180.0 } else { 0.0 };
    }
    if dx == 0.0 {
        return if dy > 0.0 { 90.0 } else { -90.0 };
    }
    libm::atan2(dy, dx).to_degrees()
}

/// Unsigned difference between two direction angles, in `[0, 180]`.
pub(crate) fn direction_gap(a: f64, b: f64) -> f64 {
    let d = rem_360(a - b);
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}
