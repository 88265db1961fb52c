use grasp_gauge_core::{FingerSpec, JointLimits, Length, PlanarHandModel, WidthRange};

use super::profile::{decode_width, CONTACT_CHOICES};
use super::{document, Decoder, DiagnosticKind, ParseResult};
use crate::json::{Node, Pos};

/// A planar hand model file: the kinematic model plus the descriptive fields
/// copied into derived profiles.
#[derive(Clone, Debug, PartialEq)]
pub struct HandModelFile {
    pub name: String,
    pub configuration: String,
    pub model: PlanarHandModel,
    /// Defaults to an empty range with unbounded object height.
    pub width: WidthRange,
}

/// Parses a planar hand model file. Link lengths are in millimetres and
/// joint limits in degrees (millimetres for `slide_limits`).
pub fn parse_hand_model(bytes: &[u8]) -> ParseResult<HandModelFile> {
    let Some(root) = document(bytes)? else {
        let mut dec = Decoder::new();
        dec.error(Pos::START, DiagnosticKind::SyntaxError, "empty document, expected a hand model object".into());
        return dec.finish(None);
    };
    let mut dec = Decoder::new();
    let model = decode(&mut dec, &root);
    let model = model.and_then(|m| match m.model.validate() {
        Ok(()) => Some(m),
        Err(e) => {
            dec.error(root.pos, DiagnosticKind::TypeMismatch, e.to_string());
            None
        }
    });
    dec.finish(model)
}

fn decode(dec: &mut Decoder, root: &Node) -> Option<HandModelFile> {
    let mut f = dec.object(root, "")?;
    dec.schema_version(&mut f);
    let name = match f.get("name") {
        Some(n) => dec.string(n, "name"),
        None => Some(String::new()),
    };
    let configuration = match f.get("configuration") {
        Some(n) => dec.string(n, "configuration"),
        None => Some(String::new()),
    };
    let bases = f.require(dec, "bases").and_then(|n| pair(dec, n, "bases"));
    let fingers = f.require(dec, "fingers").and_then(|n| {
        let mut ff = dec.object(n, "fingers")?;
        let left = ff.require(dec, "left").and_then(|n| finger(dec, n, "fingers.left"));
        let right = ff.require(dec, "right").and_then(|n| finger(dec, n, "fingers.right"));
        ff.done(dec);
        Some((left?, right?))
    });
    let contact = f
        .require(dec, "contact_choice")
        .and_then(|n| dec.keyword(n, "contact_choice", &CONTACT_CHOICES));
    let width = match f.get("width") {
        Some(n) => decode_width(dec, n, "width"),
        None => Some(WidthRange {
            min_width: Length::ZERO,
            max_width: Length::ZERO,
            object_height_unbounded: true,
        }),
    };
    f.done(dec);
    let (left_base_x, right_base_x) = bases?;
    let (left, right) = fingers?;
    Some(HandModelFile {
        name: name?,
        configuration: configuration?,
        model: PlanarHandModel {
            left_base_x,
            right_base_x,
            left,
            right,
            contact_choice: contact?,
        },
        width: width?,
    })
}

fn pair(dec: &mut Decoder, node: &Node, path: &str) -> Option<(f64, f64)> {
    let items = dec.array(node, path)?;
    if items.len() != 2 {
        dec.error(
            node.pos,
            DiagnosticKind::TypeMismatch,
            format!("{path}: expected 2 numbers, found {}", items.len()),
        );
        return None;
    }
    let a = dec.number(&items[0], &format!("{path}[0]"));
    let b = dec.number(&items[1], &format!("{path}[1]"));
    Some((a?, b?))
}

fn finger(dec: &mut Decoder, node: &Node, path: &str) -> Option<FingerSpec> {
    let mut f = dec.object(node, path)?;
    let mut num = |dec: &mut Decoder, key: &str| {
        f.require(dec, key)
            .and_then(|n| dec.number(n, &format!("{path}.{key}")))
    };
    let l1 = num(dec, "L1");
    let l2 = num(dec, "L2");
    let mut limits = |dec: &mut Decoder, key: &str, required: bool| match f.get(key) {
        Some(n) => pair(dec, n, &format!("{path}.{key}")).map(|(a, b)| JointLimits::new(a, b)),
        None if required => {
            dec.error(
                node.pos,
                DiagnosticKind::MissingField,
                format!("missing required field {path}.{key}"),
            );
            None
        }
        None => Some(JointLimits::fixed(0.0)),
    };
    let t1 = limits(dec, "theta1_limits", true);
    let t2 = limits(dec, "theta2_limits", true);
    let slide = limits(dec, "slide_limits", false);
    f.done(dec);
    Some(FingerSpec {
        proximal_length: l1?,
        distal_length: l2?,
        proximal_limits: t1?,
        distal_limits: t2?,
        slide_limits: slide?,
    })
}
