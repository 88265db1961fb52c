use grasp_gauge_core::{
    ContactChoice, CylindricalPose, CylindricalSection, HandProfile, Length, MeasurementMethod,
    PoseLabel, PoseSample, PowerCylindricalSet, PowerSphericalSet, PrecisionSet, Provenance,
    SectionLine, SphericalPose, SphericalSection, WidthRange,
};

use super::{document, field, Decoder, DiagnosticKind, Fields, ParseResult, SCHEMA_VERSION};
use crate::json::{self, Node};

pub(crate) const CONTACT_CHOICES: [(&str, ContactChoice); 2] = [
    ("distal_midpoint", ContactChoice::DistalMidpoint),
    ("fingertip", ContactChoice::Fingertip),
];

const METHODS: [(&str, MeasurementMethod); 2] = [
    ("physical", MeasurementMethod::Physical),
    ("cad_model", MeasurementMethod::CadModel),
];

const LINES: [(&str, SectionLine); 3] = [
    ("inner", SectionLine::Inner),
    ("mid", SectionLine::Mid),
    ("span_line", SectionLine::SpanLine),
];

fn keyword_of<T: PartialEq + Copy>(options: &[(&'static str, T)], value: T) -> &'static str {
    options.iter().find(|(_, v)| *v == value).map(|(n, _)| *n).unwrap_or("")
}

pub(crate) fn contact_choice_str(c: ContactChoice) -> &'static str {
    keyword_of(&CONTACT_CHOICES, c)
}

/// Parses a hand profile document.
///
/// On failure every diagnostic is returned, warnings included.
pub fn parse_hand_profile(bytes: &[u8]) -> ParseResult<HandProfile> {
    let root = match document(bytes) {
        Ok(Some(root)) => root,
        Ok(None) => {
            let mut dec = Decoder::new();
            dec.error(
                json::Pos::START,
                DiagnosticKind::SyntaxError,
                "empty document, expected a hand profile object".into(),
            );
            return dec.finish(None);
        }
        Err(diags) => return Err(diags),
    };
    let mut dec = Decoder::new();
    let profile = decode_profile(&mut dec, &root);
    dec.finish(profile)
}

fn decode_profile(dec: &mut Decoder, root: &Node) -> Option<HandProfile> {
    let mut f = dec.object(root, "")?;
    dec.schema_version(&mut f);
    let name = f.require(dec, "name").and_then(|n| dec.string(n, "name"));
    let configuration = match f.get("configuration") {
        Some(n) => dec.string(n, "configuration"),
        None => Some(String::new()),
    };
    if let Some(n) = f.get("units") {
        if let Some(u) = dec.string(n, "units") {
            if u != "mm" {
                dec.error(
                    n.pos,
                    DiagnosticKind::UnitError,
                    format!("units: \"{u}\" is not supported, lengths must be in \"mm\""),
                );
            }
        }
    }
    let abs = f
        .require(dec, "absolute_max_span")
        .and_then(|n| dec.length(n, "absolute_max_span"));
    let width = f.require(dec, "width").and_then(|n| decode_width(dec, n, "width"));
    let precision = f.get("precision").map(|n| decode_precision(dec, n));
    let cyl = f.get("power_cylindrical").map(|n| decode_cylindrical(dec, n));
    let sph = f.get("power_spherical").map(|n| decode_spherical(dec, n));
    let provenance = match f.get("provenance") {
        Some(n) => decode_provenance(dec, n),
        None => Some(Provenance::default()),
    };
    f.done(dec);
    Some(HandProfile {
        name: name?,
        configuration: configuration?,
        absolute_max_span: abs?,
        width: width?,
        precision: transpose(precision)?,
        power_cylindrical: transpose(cyl)?,
        power_spherical: transpose(sph)?,
        provenance: provenance?,
    })
}

/// `None` = field absent, `Some(None)` = present but invalid.
fn transpose<T>(v: Option<Option<T>>) -> Option<Option<T>> {
    match v {
        None => Some(None),
        Some(None) => None,
        Some(Some(v)) => Some(Some(v)),
    }
}

pub(crate) fn decode_width(dec: &mut Decoder, node: &Node, path: &str) -> Option<WidthRange> {
    let mut f = dec.object(node, path)?;
    let min = f
        .require(dec, "min_width")
        .and_then(|n| dec.length(n, &format!("{path}.min_width")));
    let max = f
        .require(dec, "max_width")
        .and_then(|n| dec.length(n, &format!("{path}.max_width")));
    let unbounded = match f.get("object_height_unbounded") {
        Some(n) => dec.bool(n, &format!("{path}.object_height_unbounded")),
        None => Some(false),
    };
    f.done(dec);
    Some(WidthRange {
        min_width: min?,
        max_width: max?,
        object_height_unbounded: unbounded?,
    })
}

fn pose_label(dec: &mut Decoder, node: &Node, path: &str) -> Option<PoseLabel> {
    let s = dec.string(node, path)?;
    let label = match s.as_str() {
        "open" => Some(PoseLabel::Open),
        "closed" => Some(PoseLabel::Closed),
        other => other
            .strip_prefix("intermediate-")
            .filter(|n| !n.is_empty() && n.bytes().all(|b| b.is_ascii_digit()) && !n.starts_with('0'))
            .and_then(|n| n.parse::<u32>().ok())
            .map(PoseLabel::Intermediate),
    };
    if label.is_none() {
        dec.error(
            node.pos,
            DiagnosticKind::TypeMismatch,
            format!("{path}: unknown pose \"{s}\", expected \"open\", \"closed\" or \"intermediate-N\""),
        );
    }
    label
}

/// Decodes every element; fails if any element fails.
fn each<T>(
    dec: &mut Decoder,
    node: &Node,
    path: &str,
    mut item: impl FnMut(&mut Decoder, &Node, &str) -> Option<T>,
) -> Option<Vec<T>> {
    let items = dec.array(node, path)?;
    let mut out = Some(Vec::with_capacity(items.len()));
    for (i, n) in items.iter().enumerate() {
        let v = item(dec, n, &format!("{path}[{i}]"));
        out = out.zip(v).map(|(mut out, v)| {
            out.push(v);
            out
        });
    }
    out
}

fn decode_precision(dec: &mut Decoder, node: &Node) -> Option<PrecisionSet> {
    let mut f = dec.object(node, "precision")?;
    let choice = f
        .require(dec, "contact_choice")
        .and_then(|n| dec.keyword(n, "precision.contact_choice", &CONTACT_CHOICES));
    let samples = f
        .require(dec, "samples")
        .and_then(|n| each(dec, n, "precision.samples", decode_sample));
    f.done(dec);
    Some(PrecisionSet {
        contact_choice: choice?,
        samples: samples?,
    })
}

fn decode_sample(dec: &mut Decoder, node: &Node, path: &str) -> Option<PoseSample> {
    let mut f = dec.object(node, path)?;
    let pose = f.require(dec, "pose").and_then(|n| pose_label(dec, n, &format!("{path}.pose")));
    let span = length_field(dec, &mut f, path, "span");
    let depth = length_field(dec, &mut f, path, "depth");
    f.done(dec);
    Some(PoseSample {
        pose: pose?,
        span: span?,
        depth: depth?,
    })
}

fn length_field(dec: &mut Decoder, f: &mut Fields<'_>, path: &str, key: &str) -> Option<Length> {
    f.require(dec, key)
        .and_then(|n| dec.length(n, &format!("{path}.{key}")))
}

fn decode_cylindrical(dec: &mut Decoder, node: &Node) -> Option<PowerCylindricalSet> {
    let mut f = dec.object(node, "power_cylindrical")?;
    let poses = f
        .require(dec, "poses")
        .and_then(|n| each(dec, n, "power_cylindrical.poses", decode_cyl_pose));
    f.done(dec);
    Some(PowerCylindricalSet { poses: poses? })
}

fn decode_cyl_pose(dec: &mut Decoder, node: &Node, path: &str) -> Option<CylindricalPose> {
    let mut f = dec.object(node, path)?;
    let pose = f.require(dec, "pose").and_then(|n| pose_label(dec, n, &format!("{path}.pose")));
    let sections = f.require(dec, "sections").and_then(|n| {
        each(dec, n, &format!("{path}.sections"), |dec, n, path| {
            let mut f = dec.object(n, path)?;
            let line = f
                .require(dec, "line")
                .and_then(|n| dec.keyword(n, &format!("{path}.line"), &LINES));
            let span = length_field(dec, &mut f, path, "span");
            let depth = length_field(dec, &mut f, path, "depth");
            f.done(dec);
            Some(CylindricalSection {
                line: line?,
                span: span?,
                depth: depth?,
            })
        })
    });
    f.done(dec);
    Some(CylindricalPose {
        pose: pose?,
        sections: sections?,
    })
}

fn decode_spherical(dec: &mut Decoder, node: &Node) -> Option<PowerSphericalSet> {
    let mut f = dec.object(node, "power_spherical")?;
    let poses = f.require(dec, "poses").and_then(|n| {
        each(dec, n, "power_spherical.poses", |dec, n, path| {
            let mut f = dec.object(n, path)?;
            let pose = f.require(dec, "pose").and_then(|n| pose_label(dec, n, &format!("{path}.pose")));
            let base = length_field(dec, &mut f, path, "base_diameter");
            let widest = length_field(dec, &mut f, path, "widest_diameter");
            let distal = length_field(dec, &mut f, path, "distal_diameter");
            f.done(dec);
            Some(SphericalPose {
                pose: pose?,
                section: SphericalSection {
                    base_diameter: base?,
                    widest_diameter: widest?,
                    distal_diameter: distal?,
                },
            })
        })
    });
    f.done(dec);
    Some(PowerSphericalSet { poses: poses? })
}

fn decode_provenance(dec: &mut Decoder, node: &Node) -> Option<Provenance> {
    let mut f = dec.object(node, "provenance")?;
    let measurer = match f.get("measurer") {
        Some(n) => dec.string(n, "provenance.measurer"),
        None => Some(String::new()),
    };
    let method = match f.get("method") {
        Some(n) => dec.keyword(n, "provenance.method", &METHODS),
        None => Some(MeasurementMethod::Physical),
    };
    let photo_refs = match f.get("photo_refs") {
        Some(n) => each(dec, n, "provenance.photo_refs", |dec, n, path| dec.string(n, path)),
        None => Some(Vec::new()),
    };
    f.done(dec);
    Some(Provenance {
        measurer: measurer?,
        method: method?,
        photo_refs: photo_refs?,
    })
}

/// Writes a profile as pretty-printed JSON. Output depends only on the
/// profile, so equal profiles serialize to identical bytes.
pub fn serialize_hand_profile(p: &HandProfile) -> String {
    let mut o = String::new();
    o.push_str("{\n");
    field(&mut o, 2, "schema_version");
    o.push_str(&format!("{SCHEMA_VERSION},\n"));
    field(&mut o, 2, "name");
    json::write_string(&mut o, &p.name);
    o.push_str(",\n");
    field(&mut o, 2, "configuration");
    json::write_string(&mut o, &p.configuration);
    o.push_str(",\n");
    field(&mut o, 2, "units");
    o.push_str("\"mm\",\n");
    field(&mut o, 2, "absolute_max_span");
    o.push_str(&format!("{},\n", p.absolute_max_span));
    field(&mut o, 2, "width");
    o.push_str(&format!(
        "{{\n    \"min_width\": {},\n    \"max_width\": {},\n    \"object_height_unbounded\": {}\n  }},\n",
        p.width.min_width, p.width.max_width, p.width.object_height_unbounded
    ));

    if let Some(set) = &p.precision {
        field(&mut o, 2, "precision");
        o.push_str("{\n");
        field(&mut o, 4, "contact_choice");
        o.push_str(&format!("\"{}\",\n", contact_choice_str(set.contact_choice)));
        field(&mut o, 4, "samples");
        let rows: Vec<String> = set
            .samples
            .iter()
            .map(|s| {
                format!(
                    "{{\"pose\": \"{}\", \"span\": {}, \"depth\": {}}}",
                    s.pose, s.span, s.depth
                )
            })
            .collect();
        write_rows(&mut o, 6, &rows);
        o.push_str("\n  },\n");
    }

    if let Some(set) = &p.power_cylindrical {
        field(&mut o, 2, "power_cylindrical");
        o.push_str("{\n");
        field(&mut o, 4, "poses");
        let rows: Vec<String> = set
            .poses
            .iter()
            .map(|pose| {
                let mut r = format!("{{\n        \"pose\": \"{}\",\n        \"sections\": ", pose.pose);
                let sections: Vec<String> = pose
                    .sections
                    .iter()
                    .map(|s| {
                        format!(
                            "{{\"line\": \"{}\", \"span\": {}, \"depth\": {}}}",
                            keyword_of(&LINES, s.line),
                            s.span,
                            s.depth
                        )
                    })
                    .collect();
                write_rows(&mut r, 10, &sections);
                r.push_str("\n      }");
                r
            })
            .collect();
        write_rows(&mut o, 6, &rows);
        o.push_str("\n  },\n");
    }

    if let Some(set) = &p.power_spherical {
        field(&mut o, 2, "power_spherical");
        o.push_str("{\n");
        field(&mut o, 4, "poses");
        let rows: Vec<String> = set
            .poses
            .iter()
            .map(|s| {
                format!(
                    "{{\"pose\": \"{}\", \"base_diameter\": {}, \"widest_diameter\": {}, \"distal_diameter\": {}}}",
                    s.pose, s.section.base_diameter, s.section.widest_diameter, s.section.distal_diameter
                )
            })
            .collect();
        write_rows(&mut o, 6, &rows);
        o.push_str("\n  },\n");
    }

    field(&mut o, 2, "provenance");
    o.push_str("{\n");
    field(&mut o, 4, "measurer");
    json::write_string(&mut o, &p.provenance.measurer);
    o.push_str(",\n");
    field(&mut o, 4, "method");
    o.push_str(&format!("\"{}\",\n", keyword_of(&METHODS, p.provenance.method)));
    field(&mut o, 4, "photo_refs");
    let refs: Vec<String> = p
        .provenance
        .photo_refs
        .iter()
        .map(|r| {
            let mut s = String::new();
            json::write_string(&mut s, r);
            s
        })
        .collect();
    write_rows(&mut o, 6, &refs);
    o.push_str("\n  }\n}\n");
    o
}

/// Writes `[...]` with one row per line; the closing bracket is indented
/// two less than the rows.
pub(crate) fn write_rows(o: &mut String, indent: usize, rows: &[String]) {
    if rows.is_empty() {
        o.push_str("[]");
        return;
    }
    o.push_str("[\n");
    for (i, r) in rows.iter().enumerate() {
        o.push_str(&" ".repeat(indent));
        o.push_str(r);
        if i + 1 < rows.len() {
            o.push(',');
        }
        o.push('\n');
    }
    o.push_str(&" ".repeat(indent - 2));
    o.push(']');
}
