use std::collections::HashMap;

use grasp_gauge_core::{ObjectShape, ObjectSpec};

use super::{document, Decoder, DiagnosticKind, ParseResult, SCHEMA_VERSION};
use crate::json::{self, Node, Value};

const SHAPES: [(&str, ObjectShape); 3] = [
    ("cylinder", ObjectShape::Cylinder),
    ("sphere", ObjectShape::Sphere),
    ("box", ObjectShape::Box),
];

fn shape_str(s: ObjectShape) -> &'static str {
    SHAPES.iter().find(|(_, v)| *v == s).map(|(n, _)| *n).unwrap_or("")
}

/// Parses an object list. Blank input is an empty list.
///
/// Repeated object names are reported as warnings; both entries are kept.
pub fn parse_object_set(bytes: &[u8]) -> ParseResult<Vec<ObjectSpec>> {
    let root = match document(bytes)? {
        Some(root) => root,
        None => return Decoder::new().finish(Some(Vec::new())),
    };
    let mut dec = Decoder::new();
    let objects = decode(&mut dec, &root);
    dec.finish(objects)
}

fn decode(dec: &mut Decoder, root: &Node) -> Option<Vec<ObjectSpec>> {
    let mut f = dec.object(root, "")?;
    dec.schema_version(&mut f);
    let list = f.require(dec, "objects").and_then(|n| dec.array(n, "objects"));
    f.done(dec);
    let list = list?;

    let mut out = Some(Vec::with_capacity(list.len()));
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, node) in list.iter().enumerate() {
        let path = format!("objects[{i}]");
        let obj = decode_object(dec, node, &path);
        if let (Some(obj), Value::Object(members)) = (&obj, &node.value) {
            if let Some(&first) = seen.get(&obj.name) {
                let pos = members
                    .iter()
                    .find(|m| m.key == "name")
                    .map_or(node.pos, |m| m.value.pos);
                dec.warn(
                    pos,
                    DiagnosticKind::DuplicateName,
                    format!("{path}.name: \"{}\" already used by objects[{first}]", obj.name),
                );
            } else {
                seen.insert(obj.name.clone(), i);
            }
        }
        out = out.zip(obj).map(|(mut out, obj)| {
            out.push(obj);
            out
        });
    }
    out
}


fn decode_object(dec: &mut Decoder, node: &Node, path: &str) -> Option<ObjectSpec> {
    let mut f = dec.object(node, path)?;
    let name = f.require(dec, "name").and_then(|n| dec.string(n, &format!("{path}.name")));
    let id = match f.get("id") {
        Some(n) => dec.string(n, &format!("{path}.id")).map(Some),
        None => Some(None),
    };
    let shape = f
        .require(dec, "shape")
        .and_then(|n| dec.keyword(n, &format!("{path}.shape"), &SHAPES));
    let diameter = f
        .require(dec, "grasp_diameter")
        .and_then(|n| dec.positive_length(n, &format!("{path}.grasp_diameter")));
    let height = f
        .require(dec, "height")
        .and_then(|n| dec.positive_length(n, &format!("{path}.height")));
    f.done(dec);
    Some(ObjectSpec {
        name: name?,
        id: id?,
        shape: shape?,
        grasp_diameter: diameter?,
        height: height?,
    })
}

pub fn serialize_object_set(objects: &[ObjectSpec]) -> String {
    let mut o = format!("{{\n  \"schema_version\": {SCHEMA_VERSION},\n  \"objects\": ");
    let rows: Vec<String> = objects
        .iter()
        .map(|obj| {
            let mut r = String::from("{\"name\": ");
            json::write_string(&mut r, &obj.name);
            if let Some(id) = &obj.id {
                r.push_str(", \"id\": ");
                json::write_string(&mut r, id);
            }
            r.push_str(&format!(
                ", \"shape\": \"{}\", \"grasp_diameter\": {}, \"height\": {}}}",
                shape_str(obj.shape),
                obj.grasp_diameter,
                obj.height
            ));
            r
        })
        .collect();
    super::profile::write_rows(&mut o, 4, &rows);
    o.push_str("\n}\n");
    o
}
