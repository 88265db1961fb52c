//! Protocol conformance checks for [`HandProfile`].

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{HandProfile, PoseLabel, SectionLine};
use crate::units::Length;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IssueCode {
    /// A grasp set has fewer than three poses.
    MinThreePoses,
    /// A recorded span exceeds the absolute maximum span.
    AbsSpanLtGraspSpan,
    /// None of the three grasp sets is present.
    NoGraspSet,
    NegativeLength,
    /// `min_width > max_width`.
    WidthRangeInverted,
    /// Adjacent poses share the same ordering span.
    SpanTie,
    /// Spans do not decrease from open to closed.
    SpanNotDecreasing,
    /// Labels are not open, intermediate-1.., closed in order.
    PoseLabelOrder,
    /// A cylindrical pose does not carry exactly one section per line.
    SectionLines,
    /// Section depths are not Inner < Mid < SpanLine.
    SectionDepthOrder,
    /// A spherical pose's widest diameter is smaller than its base or distal one.
    WidestNotWidest,
    EmptyName,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::MinThreePoses => "MIN_THREE_POSES",
            IssueCode::AbsSpanLtGraspSpan => "ABS_SPAN_LT_GRASP_SPAN",
            IssueCode::NoGraspSet => "NO_GRASP_SET",
            IssueCode::NegativeLength => "NEGATIVE_LENGTH",
            IssueCode::WidthRangeInverted => "WIDTH_RANGE_INVERTED",
            IssueCode::SpanTie => "SPAN_TIE",
            IssueCode::SpanNotDecreasing => "SPAN_NOT_DECREASING",
            IssueCode::PoseLabelOrder => "POSE_LABEL_ORDER",
            IssueCode::SectionLines => "SECTION_LINES",
            IssueCode::SectionDepthOrder => "SECTION_DEPTH_ORDER",
            IssueCode::WidestNotWidest => "WIDEST_NOT_WIDEST",
            IssueCode::EmptyName => "EMPTY_NAME",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub severity: Severity,
    pub code: IssueCode,
    pub message: String,
    /// Dotted field path, e.g. `precision.samples[1].span`.
    pub path: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Warning)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }

    pub fn has_code(&self, code: IssueCode) -> bool {
        self.issues.iter().any(|i| i.code == code)
    }

    fn push(&mut self, severity: Severity, code: IssueCode, path: String, message: String) {
        self.issues.push(Issue {
            severity,
            code,
            message,
            path,
        });
    }

    fn error(&mut self, code: IssueCode, path: String, message: String) {
        self.push(Severity::Error, code, path, message);
    }
}

/// Checks every protocol rule and returns all findings. Errors mean the
/// profile must not be used; warnings are informational.
pub fn validate_profile(profile: &HandProfile) -> ValidationReport {
    let mut report = ValidationReport::default();

    if profile.name.trim().is_empty() {
        report.push(
            Severity::Warning,
            IssueCode::EmptyName,
            "name".into(),
            "profile name is empty".into(),
        );
    }

    check_non_negative(&mut report, "absolute_max_span".into(), profile.absolute_max_span);
    let width = &profile.width;
    check_non_negative(&mut report, "width.min_width".into(), width.min_width);
    check_non_negative(&mut report, "width.max_width".into(), width.max_width);
    if width.min_width > width.max_width {
        report.error(
            IssueCode::WidthRangeInverted,
            "width".into(),
            format!(
                "min_width {} mm exceeds max_width {} mm",
                width.min_width, width.max_width
            ),
        );
    }

    if profile.precision.is_none()
        && profile.power_cylindrical.is_none()
        && profile.power_spherical.is_none()
    {
        report.error(
            IssueCode::NoGraspSet,
            String::new(),
            "profile has no precision, power_cylindrical or power_spherical set".into(),
        );
    }

    if let Some(set) = &profile.precision {
        let base = "precision.samples";
        check_pose_count(&mut report, base, set.samples.len());
        check_labels(&mut report, base, set.samples.iter().map(|s| s.pose));
        for (i, s) in set.samples.iter().enumerate() {
            check_non_negative(&mut report, format!("{base}[{i}].span"), s.span);
            check_non_negative(&mut report, format!("{base}[{i}].depth"), s.depth);
            if s.span > profile.absolute_max_span {
                report.error(
                    IssueCode::AbsSpanLtGraspSpan,
                    format!("{base}[{i}].span"),
                    format!(
                        "precision span {} mm exceeds absolute_max_span {} mm",
                        s.span, profile.absolute_max_span
                    ),
                );
            }
        }
        let spans: Vec<Option<Length>> = set.samples.iter().map(|s| Some(s.span)).collect();
        check_decreasing(&mut report, base, "span", &spans);
    }

    if let Some(set) = &profile.power_cylindrical {
        let base = "power_cylindrical.poses";
        check_pose_count(&mut report, base, set.poses.len());
        check_labels(&mut report, base, set.poses.iter().map(|p| p.pose));
        for (i, pose) in set.poses.iter().enumerate() {
            for (j, s) in pose.sections.iter().enumerate() {
                check_non_negative(&mut report, format!("{base}[{i}].sections[{j}].span"), s.span);
                check_non_negative(
                    &mut report,
                    format!("{base}[{i}].sections[{j}].depth"),
                    s.depth,
                );
            }
            let one_per_line = pose.sections.len() == 3
                && SectionLine::ALL
                    .iter()
                    .all(|l| pose.sections.iter().filter(|s| s.line == *l).count() == 1);
            if !one_per_line {
                report.error(
                    IssueCode::SectionLines,
                    format!("{base}[{i}].sections"),
                    "expected exactly one inner, one mid and one span_line section".into(),
                );
                continue;
            }
            let depth = |l| pose.section(l).map(|s| s.depth).unwrap_or_default();
            let (inner, mid, span_line) = (
                depth(SectionLine::Inner),
                depth(SectionLine::Mid),
                depth(SectionLine::SpanLine),
            );
            if !(inner < mid && mid < span_line) {
                report.error(
                    IssueCode::SectionDepthOrder,
                    format!("{base}[{i}].sections"),
                    format!(
                        "section depths must increase inner < mid < span_line, got {inner}, {mid}, {span_line}"
                    ),
                );
            }
        }
        let spans: Vec<Option<Length>> = set
            .poses
            .iter()
            .map(|p| p.section(SectionLine::SpanLine).map(|s| s.span))
            .collect();
        check_decreasing(&mut report, base, "span_line span", &spans);
    }

    if let Some(set) = &profile.power_spherical {
        let base = "power_spherical.poses";
        check_pose_count(&mut report, base, set.poses.len());
        check_labels(&mut report, base, set.poses.iter().map(|p| p.pose));
        for (i, pose) in set.poses.iter().enumerate() {
            let s = &pose.section;
            check_non_negative(&mut report, format!("{base}[{i}].base_diameter"), s.base_diameter);
            check_non_negative(
                &mut report,
                format!("{base}[{i}].widest_diameter"),
                s.widest_diameter,
            );
            check_non_negative(
                &mut report,
                format!("{base}[{i}].distal_diameter"),
                s.distal_diameter,
            );
            if s.widest_diameter < s.base_diameter.max(s.distal_diameter) {
                report.push(
                    Severity::Warning,
                    IssueCode::WidestNotWidest,
                    format!("{base}[{i}]"),
                    format!(
                        "widest_diameter {} mm is smaller than base {} mm or distal {} mm",
                        s.widest_diameter, s.base_diameter, s.distal_diameter
                    ),
                );
            }
        }
        let widest: Vec<Option<Length>> = set
            .poses
            .iter()
            .map(|p| Some(p.section.widest_diameter))
            .collect();
        check_decreasing(&mut report, base, "widest_diameter", &widest);
    }

    report
}

fn check_non_negative(report: &mut ValidationReport, path: String, value: Length) {
    if value.is_negative() {
        report.error(
            IssueCode::NegativeLength,
            path,
            format!("length {value} mm is negative"),
        );
    }
}

fn check_pose_count(report: &mut ValidationReport, path: &str, count: usize) {
    if count < 3 {
        report.error(
            IssueCode::MinThreePoses,
            path.into(),
            format!("{count} poses recorded; open, closed and at least one intermediate pose are required"),
        );
    }
}

fn check_labels(report: &mut ValidationReport, path: &str, labels: impl Iterator<Item = PoseLabel>) {
    let labels: Vec<PoseLabel> = labels.collect();
    let last = labels.len().saturating_sub(1);
    let mut prev = 0;
    for (i, label) in labels.iter().enumerate() {
        let ok = match label {
            PoseLabel::Open => i == 0,
            PoseLabel::Closed => i == last && i > 0,
            PoseLabel::Intermediate(n) => {
                let ok = i > 0 && i < last && *n > prev;
                prev = *n;
                ok
            }
        };
        if !ok {
            report.error(
                IssueCode::PoseLabelOrder,
                format!("{path}[{i}].pose"),
                format!(
                    "pose {label} out of place; expected open first, closed last and increasing intermediate numbers between"
                ),
            );
        }
    }
}

fn check_decreasing(report: &mut ValidationReport, path: &str, what: &str, values: &[Option<Length>]) {
    for (i, w) in values.windows(2).enumerate() {
        let (Some(a), Some(b)) = (w[0], w[1]) else {
            continue;
        };
        if a == b {
            report.error(
                IssueCode::SpanTie,
                format!("{path}[{}]", i + 1),
                format!("{what} {b} mm repeats the previous pose"),
            );
        } else if b > a {
            report.error(
                IssueCode::SpanNotDecreasing,
                format!("{path}[{}]", i + 1),
                format!("{what} {b} mm is larger than the previous pose's {a} mm"),
            );
        }
    }
}
