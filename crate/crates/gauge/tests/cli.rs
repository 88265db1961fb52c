use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use grasp_gauge::ingest::{parse_hand_profile, parse_object_set};
use grasp_gauge_core::relative_size;
use grasp_gauge_core::GraspKind;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn gauge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grasp-gauge"))
        .args(args)
        .env_remove("GRASP_GAUGE_NO_COLOR")
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_statuses() {
    let ok = gauge(&["validate", path(&fixture("model_o_cylindrical.json"))]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(!text(&ok.stderr).contains("error"));

    let two = gauge(&["validate", path(&fixture("two_samples.json"))]);
    assert_eq!(two.status.code(), Some(1));
    assert!(text(&two.stderr).contains("MIN_THREE_POSES"));

    let missing = gauge(&["validate", "/definitely/not/here.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn validate_reports_parse_positions() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let doc = std::fs::read_to_string(fixture("reference_hand.json"))
        .unwrap()
        .replace("\"span\": 50.00", "\"span\": -5");
    std::fs::write(&bad, doc).unwrap();
    let out = gauge(&["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err = text(&out.stderr);
    assert!(err.contains(":16:42: error[TypeMismatch]"), "{err}");
}

#[test]
fn classify_reference_rows() {
    let out = gauge(&[
        "classify",
        path(&fixture("reference_hand.json")),
        path(&fixture("reference_objects.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let classes: Vec<String> = text(&out.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().rev().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(classes, ["Small", "Medium", "Large", "TooLarge"]);
}

#[test]
fn classify_csv_quotes_and_matches_core() {
    let dir = tempfile::tempdir().unwrap();
    let objects = dir.path().join("objects.json");
    std::fs::write(
        &objects,
        r#"{"schema_version": 1, "objects": [
            {"name": "pen, \"blue\"", "shape": "cylinder", "grasp_diameter": 12.5, "height": 140},
            {"name": "ball", "id": "056", "shape": "sphere", "grasp_diameter": 64.7, "height": 64.7}
        ]}"#,
    )
    .unwrap();
    let profile = fixture("model_o_spherical.json");
    let out = gauge(&["classify", path(&profile), path(&objects), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = text(&out.stdout);
    let lines: Vec<&str> = csv.split("\r\n").collect();
    assert_eq!(lines[0], "name,id,grasp_diameter,fraction,class,height_ok");
    assert_eq!(lines[1], "\"pen, \"\"blue\"\"\",,12.50,-0.17,TooSmall,false");
    assert_eq!(lines[3], "");

    let hand = parse_hand_profile(&std::fs::read(&profile).unwrap()).unwrap().value;
    let r = relative_size(&hand, GraspKind::Precision, 64.7).unwrap();
    assert_eq!(lines[2], format!("ball,056,64.70,{:.2},Small,true", r.fraction));
}

#[test]
fn classify_fractions_agree_with_core_for_every_object() {
    let profile = fixture("model_o_cylindrical.json");
    let objects = fixture("ycb_objects.json");
    let out = gauge(&["classify", path(&profile), path(&objects), "--format", "csv"]);
    let hand = parse_hand_profile(&std::fs::read(&profile).unwrap()).unwrap().value;
    let objs = parse_object_set(&std::fs::read(&objects).unwrap()).unwrap().value;
    let csv = text(&out.stdout);
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), objs.len());
    for (row, obj) in rows.iter().zip(&objs) {
        assert_eq!(&row[0], obj.name);
        let r = relative_size(&hand, GraspKind::Precision, obj.grasp_diameter.mm()).unwrap();
        assert_eq!(&row[3], format!("{:.2}", r.fraction));
        assert_eq!(&row[4], r.class().as_str());
    }
}

#[test]
fn colour_flag_and_env_override() {
    let (hand, objects) = (fixture("reference_hand.json"), fixture("reference_objects.json"));
    let args = ["classify", path(&hand), path(&objects)];
    let plain = gauge(&args);
    assert!(!text(&plain.stdout).contains('\x1b'));
    let mut with = args.to_vec();
    with.push("--color");
    assert!(text(&gauge(&with).stdout).contains("\x1b[32mMedium\x1b[0m"));
    let off = Command::new(env!("CARGO_BIN_EXE_grasp-gauge"))
        .args(&with)
        .env("GRASP_GAUGE_NO_COLOR", "1")
        .output()
        .unwrap();
    assert_eq!(off.stdout, plain.stdout);
}

fn polylines(svg: &str) -> Vec<usize> {
    svg.split("<polyline points=\"")
        .skip(1)
        .map(|rest| rest[..rest.find('"').unwrap()].split(' ').count())
        .collect()
}

#[test]
fn plot_structure_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let reference = fixture("reference_hand.json");
    for out in [&a, &b] {
        let o = gauge(&["plot", path(&reference), "--grasp", "precision", "--out", path(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(polylines(&svg), [3]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let power = gauge(&["plot", path(&fixture("model_o_cylindrical.json")), "--grasp", "power-cyl"]);
    assert_eq!(power.status.code(), Some(0));
    assert_eq!(polylines(&text(&power.stdout)), [3, 3, 3]);
}

#[test]
fn plot_missing_set_exits_1() {
    let o = gauge(&["plot", path(&fixture("model_o_spherical.json")), "--grasp", "power-cyl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o.stderr).contains("no power cylindrical set"));
}

#[test]
fn compare_tables() {
    let cyl = fixture("model_o_cylindrical.json");
    let sph = fixture("model_o_spherical.json");
    let single = gauge(&["compare", path(&cyl)]);
    assert_eq!(single.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let o = gauge(&["compare", path(&cyl), path(&sph), "--objects", path(&empty)]);
    assert_eq!(o.status.code(), Some(0));
    let out = text(&o.stdout);
    let matrix = out.split("\n\n").nth(1).unwrap();
    assert_eq!(matrix.lines().count(), 1);
    assert!(matrix.starts_with("object"));

    let ycb = fixture("ycb_objects.json");
    let o = gauge(&["compare", path(&cyl), path(&sph), "--objects", path(&ycb), "--format", "csv"]);
    let out = text(&o.stdout);
    let dice = out.lines().find(|l| l.starts_with("dice,")).unwrap();
    assert!(dice.ends_with(",Small,TooSmall"), "{dice}");
    let summary = out.lines().nth(1).unwrap();
    assert!(summary.starts_with("Model O cylindrical,0.00,148.00,196.00,"));
}

#[test]
fn compare_rejects_invalid_profile() {
    let o = gauge(&["compare", path(&fixture("reference_hand.json")), path(&fixture("two_samples.json"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn derive_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("jaw.json");
    let o = gauge(&["derive", path(&fixture("parallel_jaw.model.json")), "--poses", "4", "--out", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", text(&o.stderr));
    let profile = parse_hand_profile(&std::fs::read(&out).unwrap()).unwrap().value;
    let samples = &profile.precision.unwrap().samples;
    assert_eq!(samples.len(), 4);
    assert!(samples.iter().all(|s| s.depth.hundredths() == 5000));
    assert_eq!(profile.provenance.method, grasp_gauge_core::MeasurementMethod::CadModel);

    let two = dir.path().join("two.json");
    let o = gauge(&["derive", path(&fixture("two_link.model.json")), "--out", path(&two)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(gauge(&["validate", path(&two)]).status.code(), Some(0));

    let o = gauge(&["derive", path(&fixture("infeasible.model.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(text(&o.stderr).contains("no joint configuration"));
}

#[test]
fn derive_rejects_bad_arguments() {
    let model = fixture("two_link.model.json");
    assert_eq!(gauge(&["derive", path(&model), "--poses", "2"]).status.code(), Some(1));
    assert_eq!(gauge(&["derive", path(&model), "--grid-step", "abc"]).status.code(), Some(2));
}
