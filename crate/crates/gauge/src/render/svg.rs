//! Span/depth line charts as SVG.

use std::fmt::Write;

use thiserror::Error;

/// Spacing of axis ticks, in millimetres.
pub const TICK_MM: f64 = 10.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
/// Minimum pixel distance between tick labels.
const LABEL_GAP_PX: f64 = 36.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// A polyline in data coordinates (millimetres).
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderSpec {
    pub width_px: u32,
    pub height_px: u32,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum RenderError {
    #[error("a plot needs at least one series")]
    NoSeries,
    #[error("series {0:?} has no points")]
    EmptySeries(String),
    #[error("series {0:?} contains a non-finite or negative coordinate")]
    BadPoint(String),
    #[error("plot area of {0}x{1} px is too small")]
    TooSmall(u32, u32),
}

impl RenderSpec {
    /// 800x600 span/depth chart.
    pub fn span_depth(title: impl Into<String>, series: Vec<Series>) -> Self {
        RenderSpec {
            width_px: 800,
            height_px: 600,
            title: title.into(),
            x_label: "span (mm)".into(),
            y_label: "depth (mm)".into(),
            series,
        }
    }
}

fn axis_max(v: f64) -> f64 {
    ((v / TICK_MM).ceil() * TICK_MM).max(TICK_MM)
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c if (c as u32) < 0x20 && c != '\t' => out.push(' '),
            c => out.push(c),
        }
    }
    out
}

/// Renders the chart. The output depends only on `spec`.
pub fn render_svg(spec: &RenderSpec) -> Result<String, RenderError> {
    if spec.series.is_empty() {
        return Err(RenderError::NoSeries);
    }
    for s in &spec.series {
        if s.points.is_empty() {
            return Err(RenderError::EmptySeries(s.label.clone()));
        }
        if s.points.iter().any(|&(x, y)| !(x.is_finite() && y.is_finite() && x >= 0.0 && y >= 0.0)) {
            return Err(RenderError::BadPoint(s.label.clone()));
        }
    }
    let (w, h) = (spec.width_px as f64, spec.height_px as f64);
    let plot_w = w - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = h - MARGIN_TOP - MARGIN_BOTTOM;
    if plot_w < 50.0 || plot_h < 50.0 {
        return Err(RenderError::TooSmall(spec.width_px, spec.height_px));
    }

    let all = spec.series.iter().flat_map(|s| s.points.iter());
    let (x_max, y_max) = all.fold((0.0f64, 0.0f64), |(a, b), &(x, y)| (a.max(x), b.max(y)));
    let (x_max, y_max) = (axis_max(x_max), axis_max(y_max));
    let px = |x: f64| MARGIN_LEFT + x / x_max * plot_w;
    let py = |y: f64| MARGIN_TOP + plot_h - y / y_max * plot_h;
    let (x0, x1, y0, y1) = (px(0.0), px(x_max), py(0.0), py(y_max));

    let mut o = String::new();
    let _ = writeln!(
        o,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width_px, spec.height_px, spec.width_px, spec.height_px
    );
    let _ = writeln!(o, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        o,
        r#"<text x="{:.2}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        escape(&spec.title)
    );

    let _ = writeln!(o, r##"<g class="ticks" stroke="#cccccc" stroke-width="1">"##);
    let x_ticks = (x_max / TICK_MM).round() as usize;
    let y_ticks = (y_max / TICK_MM).round() as usize;
    for i in 0..=x_ticks {
        let x = px(i as f64 * TICK_MM);
        let _ = writeln!(o, r#"<line x1="{x:.2}" y1="{y0:.2}" x2="{x:.2}" y2="{:.2}"/>"#, y0 + 5.0);
    }
    for i in 0..=y_ticks {
        let y = py(i as f64 * TICK_MM);
        let _ = writeln!(o, r#"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}"/>"#, x0 - 5.0);
    }
    let _ = writeln!(o, "</g>");

    let _ = writeln!(o, r#"<g font-family="sans-serif" font-size="11" fill="black">"#);
    let tick_px_x = plot_w / x_ticks as f64;
    let tick_px_y = plot_h / y_ticks as f64;
    let every_x = (LABEL_GAP_PX / tick_px_x).ceil().max(1.0) as usize;
    let every_y = (LABEL_GAP_PX / 2.0 / tick_px_y).ceil().max(1.0) as usize;
    for i in (0..=x_ticks).step_by(every_x) {
        let _ = writeln!(
            o,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            px(i as f64 * TICK_MM),
            y0 + 18.0,
            i * 10
        );
    }
    for i in (0..=y_ticks).step_by(every_y) {
        let _ = writeln!(
            o,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            x0 - 8.0,
            py(i as f64 * TICK_MM) + 4.0,
            i * 10
        );
    }
    let _ = writeln!(
        o,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (x0 + x1) / 2.0,
        h - 15.0,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        o,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0,
        escape(&spec.y_label)
    );
    let _ = writeln!(o, "</g>");

    let _ = writeln!(
        o,
        r#"<path d="M {x0:.2} {y1:.2} L {x0:.2} {y0:.2} L {x1:.2} {y0:.2}" fill="none" stroke="black" stroke-width="1.5"/>"#
    );

    for (i, s) in spec.series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let points: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            o,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="2"><title>{}</title></polyline>"#,
            points.join(" "),
            escape(&s.label)
        );
        let ly = MARGIN_TOP + 10.0 + i as f64 * 18.0;
        let _ = writeln!(
            o,
            r#"<line x1="{:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"/>"#,
            x1 + 15.0,
            x1 + 35.0
        );
        let _ = writeln!(
            o,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="11">{}</text>"#,
            x1 + 40.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
    o.push_str("</svg>\n");
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> RenderSpec {
        RenderSpec::span_depth(
            "hand <a>",
            vec![Series {
                label: "precision".into(),
                points: vec![(0.0, 90.0), (50.0, 80.0), (100.0, 60.0)],
            }],
        )
    }

    #[test]
    fn one_polyline_per_series() {
        let svg = render_svg(&spec()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 1);
        let start = svg.find("points=\"").unwrap() + 8;
        let pts = &svg[start..start + svg[start..].find('"').unwrap()];
        assert_eq!(pts.split(' ').count(), 3);
        assert!(svg.contains("hand &lt;a&gt;"));
    }

    #[test]
    fn ticks_every_ten_mm() {
        let svg = render_svg(&spec()).unwrap();
        // 0..=100 on x and 0..=90 on y
        assert_eq!(svg.matches("<line x1").count(), 11 + 10 + 1);
    }

    #[test]
    fn corners_map_to_plot_area() {
        let svg = render_svg(&spec()).unwrap();
        assert!(svg.contains("70.00,30.00"), "{svg}");
        assert!(svg.contains("650.00,"));
    }

    #[test]
    fn rejects_bad_input() {
        let mut s = spec();
        s.series[0].points.push((f64::NAN, 1.0));
        assert!(matches!(render_svg(&s), Err(RenderError::BadPoint(_))));
        s.series.clear();
        assert_eq!(render_svg(&s), Err(RenderError::NoSeries));
    }
}
