//! The `grasp-gauge` command line.
//!
//! Exit status 0 means success, 1 means an input failed to parse or
//! validate (or a grasp set needed by the command is missing), and 2 means a
//! usage error or a file that could not be read or written.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use grasp_gauge_core::{
    absolute_max_span, build_precision_curve, classify_object, derive_precision_poses,
    graspable_area, precision_span_range, validate_profile, HandProfile, Length,
    MeasurementMethod, ObjectSpec, PoseSample, PrecisionSet, Provenance, SectionLine, Severity,
    SizeClass,
};

use crate::ingest::{self, ParseDiagnostic, ParseResult};
use crate::render::{render_svg, Cell, Colour, RenderSpec, Series, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Setting this variable (to anything) turns `--color` off.
pub const NO_COLOR_ENV: &str = "GRASP_GAUGE_NO_COLOR";

#[derive(Parser, Debug)]
#[command(name = "grasp-gauge", version, about = "Measure, compare and plot robot hand workspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a hand profile against the measurement protocol.
    Validate { profile: PathBuf },
    /// Size each object against a hand's precision span range.
    Classify {
        profile: PathBuf,
        objects: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Highlight size classes with ANSI colours.
        #[arg(long)]
        color: bool,
    },
    /// Plot span against depth as SVG.
    Plot {
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t = Grasp::Precision)]
        grasp: Grasp,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate several hands side by side.
    Compare {
        #[arg(required = true, num_args = 2..)]
        profiles: Vec<PathBuf>,
        /// Also size every object in this list against each hand.
        #[arg(long)]
        objects: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        color: bool,
    },
    /// Derive a hand profile from a planar kinematic model.
    Derive {
        model: PathBuf,
        /// Number of precision poses, at least 3.
        #[arg(long, default_value_t = 3)]
        poses: usize,
        /// Joint grid spacing in degrees (millimetres for slides).
        #[arg(long, default_value_t = 0.5)]
        grid_step: f64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Grasp {
    Precision,
    PowerCyl,
}

/// Early exit with a status; the message has already been printed.
struct Exit(i32);

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    colour_allowed: bool,
}

impl Io<'_> {
    fn fail(&mut self, code: i32, message: impl AsRef<str>) -> Exit {
        let _ = writeln!(self.err, "error: {}", message.as_ref());
        Exit(code)
    }

    fn read(&mut self, path: &Path) -> Result<Vec<u8>, Exit> {
        fs::read(path).map_err(|e| self.fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<(), Exit> {
        match out {
            Some(path) => fs::write(path, text)
                .map_err(|e| self.fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))),
            None => {
                let _ = self.out.write_all(text.as_bytes());
                Ok(())
            }
        }
    }

    fn diagnostics(&mut self, path: &Path, diags: &[ParseDiagnostic]) {
        for d in diags {
            let _ = writeln!(self.err, "{}:{d}", path.display());
        }
    }

    fn parsed<T>(&mut self, path: &Path, parse: fn(&[u8]) -> ParseResult<T>) -> Result<T, Exit> {
        let bytes = self.read(path)?;
        match parse(&bytes) {
            Ok(p) => {
                self.diagnostics(path, &p.warnings);
                Ok(p.value)
            }
            Err(diags) => {
                self.diagnostics(path, &diags);
                Err(Exit(EXIT_INVALID))
            }
        }
    }

    /// A profile that parses and has no validation errors.
    fn profile(&mut self, path: &Path) -> Result<HandProfile, Exit> {
        let profile = self.parsed(path, ingest::parse_hand_profile)?;
        let report = validate_profile(&profile);
        for issue in &report.issues {
            let sev = match issue.severity {
                Severity::Error => "error",
                Severity::Warning => "warning",
            };
            let _ = writeln!(
                self.err,
                "{}: {sev}[{}] {}: {}",
                path.display(),
                issue.code.as_str(),
                issue.path,
                issue.message
            );
        }
        if report.has_errors() {
            return Err(Exit(EXIT_INVALID));
        }
        Ok(profile)
    }

    fn objects(&mut self, path: &Path) -> Result<Vec<ObjectSpec>, Exit> {
        self.parsed(path, ingest::parse_object_set)
    }

    fn table(&mut self, table: &Table, format: Format, colour: bool) {
        let text = match format {
            Format::Table => table.to_text(colour && self.colour_allowed),
            Format::Csv => table.to_csv(),
        };
        let _ = self.out.write_all(text.as_bytes());
    }
}

/// Runs the command line and returns the exit status. `args` includes the
/// program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_stdout = !e.use_stderr();
            let text = e.render().to_string();
            let _ = if to_stdout { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if to_stdout { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let mut io = Io {
        out,
        err,
        colour_allowed: std::env::var_os(NO_COLOR_ENV).is_none(),
    };
    let result = match cli.command {
        Command::Validate { profile } => validate(&mut io, &profile),
        Command::Classify { profile, objects, format, color } => classify(&mut io, &profile, &objects, format, color),
        Command::Plot { profile, grasp, out } => plot(&mut io, &profile, grasp, out.as_deref()),
        Command::Compare { profiles, objects, format, color } => {
            compare(&mut io, &profiles, objects.as_deref(), format, color)
        }
        Command::Derive { model, poses, grid_step, out } => derive(&mut io, &model, poses, grid_step, out.as_deref()),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Exit(code)) => code,
    }
}

fn validate(io: &mut Io<'_>, path: &Path) -> Result<(), Exit> {
    let profile = io.profile(path)?;
    let _ = writeln!(io.out, "{}: ok ({})", path.display(), profile.name);
    Ok(())
}

fn class_colour(class: SizeClass) -> Colour {
    match class {
        SizeClass::TooSmall => Colour::Magenta,
        SizeClass::Small => Colour::Cyan,
        SizeClass::Medium => Colour::Green,
        SizeClass::Large => Colour::Yellow,
        SizeClass::TooLarge => Colour::Red,
    }
}

fn class_cell(class: SizeClass) -> Cell {
    Cell::coloured(class.as_str(), class_colour(class))
}

fn classify(io: &mut Io<'_>, profile: &Path, objects: &Path, format: Format, colour: bool) -> Result<(), Exit> {
    let hand = io.profile(profile)?;
    let objects = io.objects(objects)?;
    let mut table = Table::new(["name", "id", "grasp_diameter", "fraction", "class", "height_ok"]);
    for obj in &objects {
        let sizing = classify_object(&hand, obj)
            .map_err(|e| io.fail(EXIT_INVALID, format!("{}: {e}", profile.display())))?;
        table.push(vec![
            obj.name.as_str().into(),
            obj.id.clone().unwrap_or_default().into(),
            obj.grasp_diameter.to_string().into(),
            format!("{:.2}", sizing.relative.fraction).into(),
            class_cell(sizing.size),
            sizing.height_ok.to_string().into(),
        ]);
    }
    io.table(&table, format, colour);
    Ok(())
}

fn plot(io: &mut Io<'_>, path: &Path, grasp: Grasp, out: Option<&Path>) -> Result<(), Exit> {
    let hand = io.profile(path)?;
    let series = match grasp {
        Grasp::Precision => {
            let set = hand
                .precision
                .as_ref()
                .ok_or_else(|| io.fail(EXIT_INVALID, format!("{}: profile has no precision set", path.display())))?;
            let curve = build_precision_curve(set).map_err(|e| io.fail(EXIT_INVALID, e.to_string()))?;
            vec![Series {
                label: "precision".into(),
                points: curve.points().to_vec(),
            }]
        }
        Grasp::PowerCyl => {
            let set = hand.power_cylindrical.as_ref().ok_or_else(|| {
                io.fail(EXIT_INVALID, format!("{}: profile has no power cylindrical set", path.display()))
            })?;
            set.poses
                .iter()
                .map(|pose| Series {
                    label: pose.pose.to_string(),
                    points: SectionLine::ALL
                        .iter()
                        .filter_map(|&line| pose.section(line))
                        .map(|s| (s.span.mm(), s.depth.mm()))
                        .collect(),
                })
                .collect()
        }
    };
    let title = match grasp {
        Grasp::Precision => format!("{}: precision grasp", hand.name),
        Grasp::PowerCyl => format!("{}: cylindrical power grasp", hand.name),
    };
    let svg = render_svg(&RenderSpec::span_depth(title, series)).map_err(|e| io.fail(EXIT_INVALID, e.to_string()))?;
    io.emit(out, &svg)
}

fn compare(
    io: &mut Io<'_>,
    paths: &[PathBuf],
    objects: Option<&Path>,
    format: Format,
    colour: bool,
) -> Result<(), Exit> {
    // Load everything first so every invalid file is reported.
    let mut hands = Vec::with_capacity(paths.len());
    let mut failed = None;
    for path in paths {
        match io.profile(path) {
            Ok(h) => hands.push(h),
            Err(e) => failed = failed.or(Some(e)),
        }
    }
    let objects = objects.map(|p| io.objects(p)).transpose()?;
    if let Some(e) = failed {
        return Err(e);
    }

    let mut summary = Table::new(["hand", "min_span", "max_span", "absolute_max_span", "graspable_area"]);
    for hand in &hands {
        let range = precision_span_range(hand).ok();
        let area = hand
            .precision
            .as_ref()
            .and_then(|set| build_precision_curve(set).ok())
            .map(|c| format!("{:.2}", graspable_area(&c)));
        let mm = |v: Option<f64>| v.map_or("-".to_string(), |v| Length::from_mm(v).to_string());
        summary.push(vec![
            hand.name.as_str().into(),
            mm(range.map(|r| r.0)).into(),
            mm(range.map(|r| r.1)).into(),
            hand.absolute_max_span.to_string().into(),
            area.unwrap_or_else(|| "-".into()).into(),
        ]);
    }
    io.table(&summary, format, colour);

    if let Some(objects) = objects {
        let mut headers = vec!["object".to_string(), "id".into(), "grasp_diameter".into()];
        headers.extend(hands.iter().map(|h| h.name.clone()));
        let mut matrix = Table::new(headers);
        for obj in &objects {
            let mut row: Vec<Cell> = vec![
                obj.name.as_str().into(),
                obj.id.clone().unwrap_or_default().into(),
                obj.grasp_diameter.to_string().into(),
            ];
            for hand in &hands {
                row.push(match classify_object(hand, obj) {
                    Ok(s) => class_cell(s.size),
                    Err(_) => "-".into(),
                });
            }
            matrix.push(row);
        }
        let _ = writeln!(io.out);
        io.table(&matrix, format, colour);
    }
    Ok(())
}

fn derive(io: &mut Io<'_>, path: &Path, n_poses: usize, grid_step: f64, out: Option<&Path>) -> Result<(), Exit> {
    let file = io.parsed(path, ingest::parse_hand_model)?;
    let fail = |io: &mut Io<'_>, e: grasp_gauge_core::KinematicsError| {
        io.fail(EXIT_INVALID, format!("{}: {e}", path.display()))
    };
    let poses = derive_precision_poses(&file.model, n_poses, grid_step).map_err(|e| fail(io, e))?;
    let abs = absolute_max_span(&file.model, grid_step).map_err(|e| fail(io, e))?;
    let name = if file.name.is_empty() {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
    } else {
        file.name
    };
    let profile = HandProfile {
        name,
        configuration: file.configuration,
        absolute_max_span: Length::from_mm(abs),
        width: file.width,
        precision: Some(PrecisionSet {
            contact_choice: file.model.contact_choice,
            samples: poses
                .iter()
                .map(|p| PoseSample {
                    pose: p.pose,
                    span: Length::from_mm(p.span),
                    depth: Length::from_mm(p.depth),
                })
                .collect(),
        }),
        power_cylindrical: None,
        power_spherical: None,
        provenance: Provenance {
            measurer: "grasp-gauge derive".into(),
            method: MeasurementMethod::CadModel,
            photo_refs: Vec::new(),
        },
    };
    let report = validate_profile(&profile);
    if report.has_errors() {
        for issue in report.errors() {
            let _ = writeln!(io.err, "{}: derived profile: [{}] {}", path.display(), issue.code.as_str(), issue.message);
        }
        return Err(Exit(EXIT_INVALID));
    }
    io.emit(out, &ingest::serialize_hand_profile(&profile))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("grasp-gauge").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["compare", "only-one.json"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["classify", "a", "b", "--format", "xml"]).0, EXIT_USAGE);
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("derive"));
    }

    #[test]
    fn missing_file_exits_2() {
        let (code, _, err) = run_args(&["validate", "/nonexistent/profile.json"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("cannot read"));
    }
}
