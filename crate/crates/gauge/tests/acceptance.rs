//! Acceptance checks, one PASS/FAIL line each. Exits non-zero on any failure.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use grasp_gauge::ingest::{
    parse_hand_model, parse_hand_profile, parse_object_set, serialize_hand_profile,
    serialize_object_set,
};
use grasp_gauge_core::{
    classify, classify_object, derive_precision_curve, graspable_area,
    interpolate_depth, object_dimension_for, relative_size, ContactChoice, CurveSource, GraspKind,
    HandProfile, Length, PlanarHandModel, PoseLabel, PoseSample, PrecisionSet, Provenance,
    RelativeSize, SizeClass, SpanDepthCurve, WidthRange,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load_profile(name: &str) -> Result<HandProfile, String> {
    let bytes = fs::read(fixture(name)).map_err(|e| e.to_string())?;
    parse_hand_profile(&bytes)
        .map(|p| p.value)
        .map_err(|d| format!("{name}: {}", d[0]))
}

fn load_model(name: &str) -> Result<PlanarHandModel, String> {
    let bytes = fs::read(fixture(name)).map_err(|e| e.to_string())?;
    parse_hand_model(&bytes)
        .map(|m| m.value.model)
        .map_err(|d| format!("{name}: {}", d[0]))
}

fn hand(min_hundredths: i64, max_hundredths: i64) -> HandProfile {
    let sample = |pose, span| PoseSample {
        pose,
        span: Length::from_hundredths(span),
        depth: Length::from_hundredths(5000),
    };
    HandProfile {
        name: "synthetic".into(),
        configuration: String::new(),
        absolute_max_span: Length::from_hundredths(max_hundredths),
        width: WidthRange {
            min_width: Length::ZERO,
            max_width: Length::from_hundredths(10_000),
            object_height_unbounded: true,
        },
        precision: Some(PrecisionSet {
            contact_choice: ContactChoice::Fingertip,
            samples: vec![
                sample(PoseLabel::Open, max_hundredths),
                sample(PoseLabel::Intermediate(1), (min_hundredths + max_hundredths) / 2),
                sample(PoseLabel::Closed, min_hundredths),
            ],
        }),
        power_cylindrical: None,
        power_spherical: None,
        provenance: Provenance::default(),
    }
}

fn ac1_classification_constants() -> Check {
    use SizeClass::*;
    for (f, want) in [(0.25, Small), (0.50, Medium), (0.75, Large)] {
        ensure(SizeClass::of_fraction(f) == want, || format!("{f} -> {:?}", SizeClass::of_fraction(f)))?;
    }
    let suite = [
        (-0.01, TooSmall),
        (0.0, Small),
        (0.30, Small),
        (0.301, Medium),
        (0.699, Medium),
        (0.70, Large),
        (1.0, Large),
        (1.001, TooLarge),
    ];
    for (f, want) in suite {
        let got = SizeClass::of_fraction(f);
        ensure(got == want, || format!("fraction {f} -> {got:?}, expected {want:?}"))?;
    }
    // The same boundaries reached through object dimensions: m = 10, M = 110.
    let dims = [9.0, 10.0, 40.0, 40.1, 79.9, 80.0, 110.0, 110.1];
    for (d, (_, want)) in dims.iter().zip(suite) {
        let r = RelativeSize::new(10.0, 110.0, *d).map_err(|e| e.to_string())?;
        ensure(classify(&r) == want, || format!("d = {d} mm -> {:?}, expected {want:?}", classify(&r)))?;
    }
    Ok(format!("{} boundary fractions and {} dimensions", suite.len(), dims.len()))
}

fn ac2_inverse_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let m = rng.random_range(1..49_999i64);
        let max = rng.random_range(m + 1..=50_000i64);
        let profile = hand(m, max);
        let f: f64 = rng.random_range(0.0..2.0);
        let d = object_dimension_for(&profile, f).map_err(|e| e.to_string())?;
        let back = relative_size(&profile, GraspKind::Precision, d).map_err(|e| e.to_string())?.fraction;
        let err = (back - f).abs() / f.abs().max(f64::MIN_POSITIVE);
        let err = if f == 0.0 { back.abs() } else { err };
        worst = worst.max(err);
        ensure(err <= 1e-9, || format!("m={m} M={max} f={f}: round trip gave {back}"))?;

        let (m, max) = (m as f64 / 100.0, max as f64 / 100.0);
        let base = RelativeSize::new(m, max, d).map_err(|e| e.to_string())?.class();
        for k in [0.1, 10.0] {
            let scaled = RelativeSize::new(k * m, k * max, k * d).map_err(|e| e.to_string())?.class();
            ensure(scaled == base, || format!("scaling by {k} changed {base:?} to {scaled:?}"))?;
        }
    }
    Ok(format!("1000 cases, worst relative error {worst:.1e}"))
}

fn ac3_oracle_exactness() -> Check {
    let jaw = load_model("parallel_jaw.model.json")?;
    let curve = derive_precision_curve(&jaw, 3, 0.5).map_err(|e| e.to_string())?;
    ensure(curve.points() == [(0.0, 50.0), (42.5, 50.0), (85.0, 50.0)], || {
        format!("parallel jaw curve {:?}", curve.points())
    })?;
    let travel = 2.0 * 42.5;
    ensure(curve.span_range() == (0.0, travel), || format!("span range {:?}", curve.span_range()))?;
    ensure(graspable_area(&curve) == travel * 50.0, || format!("area {}", graspable_area(&curve)))?;

    let two = load_model("two_link.model.json")?;
    let closed_form_max = 50.0 + 2.0 * 80.0 * 60f64.to_radians().cos();
    let closed_form_min = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    let mut fine_time = Duration::ZERO;
    let mut at_half = (f64::NAN, f64::NAN);
    for step in [1.0, 0.5, 0.25] {
        let t = Instant::now();
        let c = derive_precision_curve(&two, 3, step).map_err(|e| format!("step {step}: {e}"))?;
        if step == 0.25 {
            fine_time = t.elapsed();
        }
        let (lo, hi) = c.span_range();
        let errs = ((lo - closed_form_min).abs(), (hi - closed_form_max).abs());
        if let Some((plo, phi)) = prev {
            ensure(errs.0 <= plo && errs.1 <= phi, || {
                format!("step {step} worsened bounds: {errs:?} after {:?}", (plo, phi))
            })?;
        }
        if step == 0.5 {
            at_half = errs;
            ensure(errs.0 < 1.0 && errs.1 < 1.0, || format!("two-link bounds off by {errs:?} at 0.5 deg"))?;
        }
        prev = Some(errs);
    }
    ensure(fine_time < Duration::from_secs(30), || format!("0.25 deg search took {fine_time:?}"))?;
    Ok(format!(
        "jaw exact; two-link min/max error {:.3}/{:.3} mm at 0.5 deg; 0.25 deg grid in {:.2}s",
        at_half.0,
        at_half.1,
        fine_time.as_secs_f64()
    ))
}

fn ac4_interpolation_and_area() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst_insert = 0.0f64;
    let mut worst_riemann = 0.0f64;
    for _ in 0..20 {
        let n = rng.random_range(3..12);
        let mut span = 0.0;
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                span += rng.random_range(0.5..40.0);
                (span, rng.random_range(0.0..150.0))
            })
            .collect();
        let curve = SpanDepthCurve::new(points.clone(), CurveSource::Measured).map_err(|e| e.to_string())?;
        for &(s, d) in &points {
            let got = interpolate_depth(&curve, s).map_err(|e| e.to_string())?;
            ensure(got == d, || format!("knot ({s}, {d}) interpolated to {got}"))?;
        }

        let area = graspable_area(&curve);
        let i = rng.random_range(0..n - 1);
        let t: f64 = rng.random_range(0.05..0.95);
        let s = points[i].0 + t * (points[i + 1].0 - points[i].0);
        let d = interpolate_depth(&curve, s).map_err(|e| e.to_string())?;
        let mut denser = points.clone();
        denser.insert(i + 1, (s, d));
        let denser = SpanDepthCurve::new(denser, CurveSource::Measured).map_err(|e| e.to_string())?;
        let change = (graspable_area(&denser) - area).abs();
        worst_insert = worst_insert.max(change);
        ensure(change < 1e-9, || format!("collinear insertion changed area by {change:e}"))?;

        let (lo, hi) = curve.span_range();
        let k = 100_000;
        let h = (hi - lo) / k as f64;
        let mut riemann = 0.0;
        for j in 0..k {
            let x = (lo + (j as f64 + 0.5) * h).min(hi);
            riemann += interpolate_depth(&curve, x).map_err(|e| e.to_string())? * h;
        }
        let rel = (riemann - area).abs() / area.max(f64::MIN_POSITIVE);
        worst_riemann = worst_riemann.max(rel);
        ensure(rel < 1e-4, || format!("Riemann sum {riemann} vs trapezoid {area}"))?;
    }
    Ok(format!(
        "20 curves; worst insertion change {worst_insert:.1e} mm^2, worst Riemann gap {:.1e}%",
        worst_riemann * 100.0
    ))
}

fn ac5_pattern_difference() -> Check {
    let cyl = load_profile("model_o_cylindrical.json")?;
    let sph = load_profile("model_o_spherical.json")?;
    let bytes = fs::read(fixture("ycb_objects.json")).map_err(|e| e.to_string())?;
    let objects = parse_object_set(&bytes).map_err(|d| d[0].to_string())?.value;
    let m = |p: &HandProfile| p.precision.as_ref().and_then(|s| s.span_range()).map(|r| r.0);
    ensure(m(&cyl) == Some(Length::ZERO), || "cylindrical fixture must have m = 0".into())?;
    ensure(m(&sph) > Some(Length::ZERO), || "spherical fixture must have m > 0".into())?;

    let mut differing = 0;
    let mut too_small_only = Vec::new();
    for obj in &objects {
        let a = classify_object(&cyl, obj).map_err(|e| e.to_string())?.size;
        let b = classify_object(&sph, obj).map_err(|e| e.to_string())?.size;
        if a != b {
            differing += 1;
        }
        if a == SizeClass::Small && b == SizeClass::TooSmall {
            too_small_only.push(obj.name.clone());
        }
    }
    ensure(differing > 0, || "both hands classify every object alike".into())?;
    ensure(!too_small_only.is_empty(), || "no object is Small for one hand and TooSmall for the other".into())?;
    Ok(format!(
        "{differing}/{} objects differ; TooSmall only for the spherical hand: {}",
        objects.len(),
        too_small_only.join(", ")
    ))
}

fn mutate(rng: &mut ChaCha8Rng, seeds: &[Vec<u8>]) -> Vec<u8> {
    if rng.random_bool(0.5) {
        let len = rng.random_range(0..64);
        return (0..len).map(|_| rng.random()).collect();
    }
    let mut bytes = seeds[rng.random_range(0..seeds.len())].clone();
    for _ in 0..rng.random_range(1..6) {
        if bytes.is_empty() {
            break;
        }
        let at = rng.random_range(0..bytes.len());
        match rng.random_range(0..3) {
            0 => bytes[at] = rng.random(),
            1 => {
                bytes.remove(at);
            }
            _ => bytes.truncate(at),
        }
    }
    bytes
}

fn ac6_round_trip_and_fuzz() -> Check {
    let mut fixtures: Vec<PathBuf> = fs::read_dir(fixture(""))
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    fixtures.sort();
    let mut seeds = Vec::new();
    let mut round_trips = 0;
    for path in &fixtures {
        let bytes = fs::read(path).map_err(|e| e.to_string())?;
        let name = path.file_name().unwrap().to_string_lossy();
        if name.ends_with(".model.json") {
            parse_hand_model(&bytes).map_err(|d| format!("{name}: {}", d[0]))?;
        } else if name.contains("objects") {
            let objs = parse_object_set(&bytes).map_err(|d| format!("{name}: {}", d[0]))?.value;
            let again = parse_object_set(serialize_object_set(&objs).as_bytes()).map_err(|d| d[0].to_string())?;
            ensure(again.value == objs, || format!("{name} did not round-trip"))?;
            round_trips += 1;
        } else {
            let p = parse_hand_profile(&bytes).map_err(|d| format!("{name}: {}", d[0]))?.value;
            let text = serialize_hand_profile(&p);
            ensure(text.as_bytes() == bytes.as_slice(), || format!("{name} is not in canonical form"))?;
            let again = parse_hand_profile(text.as_bytes()).map_err(|d| d[0].to_string())?;
            ensure(again.value == p, || format!("{name} did not round-trip"))?;
            round_trips += 1;
        }
        seeds.push(bytes);
    }

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut panics = 0;
    const INPUTS: usize = 1_000_000;
    for _ in 0..INPUTS {
        let input = mutate(&mut rng, &seeds);
        let ok = panic::catch_unwind(AssertUnwindSafe(|| {
            let _ = parse_hand_profile(&input);
            let _ = parse_object_set(&input);
            let _ = parse_hand_model(&input);
        }));
        if ok.is_err() {
            panics += 1;
        }
    }
    panic::set_hook(hook);
    let elapsed = start.elapsed();
    ensure(panics == 0, || format!("{panics} inputs panicked"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("fuzzing took {elapsed:?}"))?;
    Ok(format!(
        "{round_trips} fixtures round-trip; {INPUTS} fuzz inputs in {:.1}s without panic",
        elapsed.as_secs_f64()
    ))
}

fn gauge(args: &[&std::ffi::OsStr]) -> Result<std::process::Output, String> {
    Command::new(env!("CARGO_BIN_EXE_grasp-gauge"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())
}

fn ac7_pipeline_determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("grasp-gauge-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let model = fixture("two_link.model.json");
    let mut artifacts = Vec::new();
    for run in 0..2 {
        let profile = dir.join(format!("derived-{run}.json"));
        let svg = dir.join(format!("derived-{run}.svg"));
        let steps: [Vec<&std::ffi::OsStr>; 3] = [
            vec!["derive".as_ref(), model.as_os_str(), "--out".as_ref(), profile.as_os_str()],
            vec!["validate".as_ref(), profile.as_os_str()],
            vec!["plot".as_ref(), profile.as_os_str(), "--out".as_ref(), svg.as_os_str()],
        ];
        let mut streams = Vec::new();
        for args in &steps {
            let out = gauge(args)?;
            ensure(out.status.code() == Some(0), || {
                format!("{:?} exited {:?}: {}", args[0], out.status.code(), String::from_utf8_lossy(&out.stderr))
            })?;
            streams.push(out.stderr);
        }
        let read = |p: &Path| fs::read(p).map_err(|e| e.to_string());
        artifacts.push((read(&profile)?, read(&svg)?, streams));
    }
    let _ = fs::remove_dir_all(&dir);
    ensure(artifacts[0].0 == artifacts[1].0, || "derived profiles differ".into())?;
    ensure(artifacts[0].1 == artifacts[1].1, || "SVG files differ".into())?;
    ensure(artifacts[0].2 == artifacts[1].2, || "diagnostics differ".into())?;
    Ok(format!(
        "derive/validate/plot exit 0 twice; {} + {} bytes identical",
        artifacts[0].0.len(),
        artifacts[0].1.len()
    ))
}

fn main() -> ExitCode {
    let checks: [Criterion; 7] = [
        ("AC1 classification constants", ac1_classification_constants, Duration::from_secs(1)),
        ("AC2 inverse consistency", ac2_inverse_consistency, Duration::from_secs(1)),
        ("AC3 oracle exactness", ac3_oracle_exactness, Duration::from_secs(90)),
        ("AC4 interpolation and area laws", ac4_interpolation_and_area, Duration::from_secs(1)),
        ("AC5 size pattern differs between hands", ac5_pattern_difference, Duration::from_secs(1)),
        ("AC6 round trip and fuzz", ac6_round_trip_and_fuzz, Duration::from_secs(60)),
        ("AC7 end-to-end determinism", ac7_pipeline_determinism, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (name, check, budget) in checks {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; took {elapsed:?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS {name} ({:.2}s): {detail}", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({:.2}s): {why}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} acceptance check(s) failed");
        ExitCode::FAILURE
    }
}
