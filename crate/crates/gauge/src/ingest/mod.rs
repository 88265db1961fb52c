//! Reading and writing measurement files.
//!
//! All formats are JSON documents with a top-level `"schema_version": 1`.
//! Parsing and protocol validation are separate: a profile that parses may
//! still fail [`grasp_gauge_core::validate_profile`].
//!
//! Parsers never stop at the first problem in a well-formed document; every
//! missing, mistyped or unknown field is reported with its position.
//! Unknown fields are warnings and are dropped.

mod model;
mod objects;
mod profile;

use std::fmt;

use grasp_gauge_core::Length;

use crate::json::{self, Member, Node, Pos, Value};

pub use model::parse_hand_model;
pub use objects::{parse_object_set, serialize_object_set};
pub use profile::{parse_hand_profile, serialize_hand_profile};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest accepted length, 1 km.
const MAX_LENGTH_MM: i64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    SyntaxError,
    UnknownField,
    TypeMismatch,
    MissingField,
    UnitError,
    DuplicateName,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::SyntaxError => "SyntaxError",
            DiagnosticKind::UnknownField => "UnknownField",
            DiagnosticKind::TypeMismatch => "TypeMismatch",
            DiagnosticKind::MissingField => "MissingField",
            DiagnosticKind::UnitError => "UnitError",
            DiagnosticKind::DuplicateName => "DuplicateName",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagnosticSeverity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseDiagnostic {
    /// 1-based.
    pub line: u32,
    /// 1-based, in characters.
    pub column: u32,
    pub kind: DiagnosticKind,
    pub severity: DiagnosticSeverity,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn is_error(&self) -> bool {
        self.severity == DiagnosticSeverity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            DiagnosticSeverity::Error => "error",
            DiagnosticSeverity::Warning => "warning",
        };
        write!(
            f,
            "{}:{}: {sev}[{}]: {}",
            self.line,
            self.column,
            self.kind.as_str(),
            self.message
        )
    }
}

/// A successfully parsed document and the warnings it produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Parsed<T> {
    pub value: T,
    pub warnings: Vec<ParseDiagnostic>,
}

pub type ParseResult<T> = Result<Parsed<T>, Vec<ParseDiagnostic>>;

pub(crate) struct Decoder {
    diags: Vec<ParseDiagnostic>,
}

impl Decoder {
    fn new() -> Self {
        Decoder { diags: Vec::new() }
    }

    fn push(&mut self, pos: Pos, kind: DiagnosticKind, severity: DiagnosticSeverity, message: String) {
        self.diags.push(ParseDiagnostic {
            line: pos.line,
            column: pos.column,
            kind,
            severity,
            message,
        });
    }

    fn error(&mut self, pos: Pos, kind: DiagnosticKind, message: String) {
        self.push(pos, kind, DiagnosticSeverity::Error, message);
    }

    fn warn(&mut self, pos: Pos, kind: DiagnosticKind, message: String) {
        self.push(pos, kind, DiagnosticSeverity::Warning, message);
    }

    fn mismatch(&mut self, node: &Node, path: &str, expected: &str) {
        self.error(
            node.pos,
            DiagnosticKind::TypeMismatch,
            format!("{path}: expected {expected}, found {}", node.value.type_name()),
        );
    }

    /// Wraps up: `value` is only returned when no error was recorded.
    fn finish<T>(self, value: Option<T>) -> ParseResult<T> {
        let has_error = self.diags.iter().any(ParseDiagnostic::is_error);
        match value {
            Some(value) if !has_error => Ok(Parsed {
                value,
                warnings: self.diags,
            }),
            _ => Err(self.diags),
        }
    }

    fn object<'a>(&mut self, node: &'a Node, path: &str) -> Option<Fields<'a>> {
        match &node.value {
            Value::Object(members) => Some(Fields {
                members,
                used: vec![false; members.len()],
                pos: node.pos,
                path: path.to_string(),
            }),
            _ => {
                self.mismatch(node, path, "an object");
                None
            }
        }
    }

    fn array<'a>(&mut self, node: &'a Node, path: &str) -> Option<&'a [Node]> {
        match &node.value {
            Value::Array(items) => Some(items),
            _ => {
                self.mismatch(node, path, "an array");
                None
            }
        }
    }

    fn string(&mut self, node: &Node, path: &str) -> Option<String> {
        match &node.value {
            Value::String(s) => Some(s.clone()),
            _ => {
                self.mismatch(node, path, "a string");
                None
            }
        }
    }

    fn bool(&mut self, node: &Node, path: &str) -> Option<bool> {
        match node.value {
            Value::Bool(b) => Some(b),
            _ => {
                self.mismatch(node, path, "true or false");
                None
            }
        }
    }

    /// A non-negative length in millimetres.
    fn length(&mut self, node: &Node, path: &str) -> Option<Length> {
        let Value::Number(text) = &node.value else {
            self.mismatch(node, path, "a length in millimetres");
            return None;
        };
        match parse_length(text) {
            Ok(v) => Some(v),
            Err(why) => {
                self.error(node.pos, DiagnosticKind::TypeMismatch, format!("{path}: {why}"));
                None
            }
        }
    }

    fn positive_length(&mut self, node: &Node, path: &str) -> Option<Length> {
        let v = self.length(node, path)?;
        if v > Length::ZERO {
            Some(v)
        } else {
            self.error(
                node.pos,
                DiagnosticKind::TypeMismatch,
                format!("{path}: must be greater than zero"),
            );
            None
        }
    }

    fn number(&mut self, node: &Node, path: &str) -> Option<f64> {
        let parsed = match &node.value {
            Value::Number(text) => text.parse::<f64>().ok().filter(|v| v.is_finite()),
            _ => None,
        };
        if parsed.is_none() {
            self.mismatch(node, path, "a finite number");
        }
        parsed
    }

    fn keyword<T: Copy>(&mut self, node: &Node, path: &str, options: &[(&str, T)]) -> Option<T> {
        let s = self.string(node, path)?;
        let found = options.iter().find(|(name, _)| *name == s).map(|(_, v)| *v);
        if found.is_none() {
            let names: Vec<String> = options.iter().map(|(n, _)| format!("\"{n}\"")).collect();
            self.error(
                node.pos,
                DiagnosticKind::TypeMismatch,
                format!("{path}: unknown value \"{s}\", expected one of {}", names.join(", ")),
            );
        }
        found
    }

    fn schema_version(&mut self, fields: &mut Fields<'_>) {
        match fields.get("schema_version") {
            None => self.warn(
                fields.pos,
                DiagnosticKind::MissingField,
                format!("schema_version missing, assuming {SCHEMA_VERSION}"),
            ),
            Some(node) => {
                if node.value != Value::Number(SCHEMA_VERSION.to_string()) {
                    self.error(
                        node.pos,
                        DiagnosticKind::TypeMismatch,
                        format!("schema_version: only version {SCHEMA_VERSION} is supported"),
                    );
                }
            }
        }
    }
}

/// Fields of one JSON object; tracks which ones were consumed.
pub(crate) struct Fields<'a> {
    members: &'a [Member],
    used: Vec<bool>,
    pos: Pos,
    path: String,
}

impl<'a> Fields<'a> {
    fn child(&self, key: &str) -> String {
        if self.path.is_empty() {
            key.to_string()
        } else {
            format!("{}.{key}", self.path)
        }
    }

    /// Present and not `null`.
    fn get(&mut self, key: &str) -> Option<&'a Node> {
        let i = self.members.iter().position(|m| m.key == key)?;
        self.used[i] = true;
        let node = &self.members[i].value;
        (node.value != Value::Null).then_some(node)
    }

    fn require(&mut self, dec: &mut Decoder, key: &str) -> Option<&'a Node> {
        let node = self.get(key);
        if node.is_none() {
            dec.error(
                self.pos,
                DiagnosticKind::MissingField,
                format!("missing required field {}", self.child(key)),
            );
        }
        node
    }

    fn done(self, dec: &mut Decoder) {
        for (m, used) in self.members.iter().zip(&self.used) {
            if !used {
                dec.warn(
                    m.key_pos,
                    DiagnosticKind::UnknownField,
                    format!("unknown field {} ignored", self.child(&m.key)),
                );
            }
        }
    }
}

/// Parses a JSON number as a non-negative length, rounded to 0.01 mm.
/// Plain decimals are converted digit by digit, so `12.345` rounds up
/// exactly as written.
pub(crate) fn parse_length(text: &str) -> Result<Length, String> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let hundredths = if body.contains(['e', 'E']) {
        let v: f64 = body.parse().map_err(|_| format!("invalid number {text}"))?;
        if !v.is_finite() || v > MAX_LENGTH_MM as f64 {
            return Err(format!("length {text} is out of range"));
        }
        Length::from_mm(v).hundredths()
    } else {
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        let int = int.trim_start_matches('0');
        if int.len() > 7 {
            return Err(format!("length {text} is out of range"));
        }
        let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| format!("invalid number {text}"))? };
        let digit = |i: usize| frac.as_bytes().get(i).map_or(0, |b| (b - b'0') as i64);
        let round_up = frac.len() > 2 && digit(2) >= 5;
        int * 100 + digit(0) * 10 + digit(1) + round_up as i64
    };
    if hundredths > MAX_LENGTH_MM * 100 {
        return Err(format!("length {text} is out of range"));
    }
    if negative && hundredths != 0 {
        return Err(format!("negative length {text} mm"));
    }
    Ok(Length::from_hundredths(hundredths))
}

/// Converts bytes to text or reports where the UTF-8 breaks.
pub(crate) fn decode_text(bytes: &[u8]) -> Result<&str, ParseDiagnostic> {
    std::str::from_utf8(bytes).map_err(|e| {
        let pos = json::position_of_byte(bytes, e.valid_up_to());
        ParseDiagnostic {
            line: pos.line,
            column: pos.column,
            kind: DiagnosticKind::SyntaxError,
            severity: DiagnosticSeverity::Error,
            message: "input is not valid UTF-8".into(),
        }
    })
}

pub(crate) fn syntax(e: json::SyntaxError) -> ParseDiagnostic {
    ParseDiagnostic {
        line: e.pos.line,
        column: e.pos.column,
        kind: DiagnosticKind::SyntaxError,
        severity: DiagnosticSeverity::Error,
        message: e.message,
    }
}

/// Parses the raw document: `Ok(None)` for blank input.
pub(crate) fn document(bytes: &[u8]) -> Result<Option<Node>, Vec<ParseDiagnostic>> {
    let text = decode_text(bytes).map_err(|d| vec![d])?;
    json::parse(text).map_err(|e| vec![syntax(e)])
}

// Output helpers shared by the serializers.

pub(crate) fn field(out: &mut String, indent: usize, key: &str) {
    out.push_str(&" ".repeat(indent));
    json::write_string(out, key);
    out.push_str(": ");
}
