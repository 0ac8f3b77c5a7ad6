//! End-to-end acceptance checks, one line of output per criterion.
//!
//! Run with `cargo test -p toric-qubits-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::{Command, Output};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use toric_qubits::measures::{
    check_tau4_identities, concurrence, invariant_h, invariant_i1, m_tangle, spin_flip, tau4_epsilon_oracle,
    three_tangle,
};
use toric_qubits::moment::{fixed_point_images, in_polytope, moment_product, BoxPolytope};
use toric_qubits::sample::{
    haar_state, random_factors, random_phase, random_product_state, random_sl2, random_unitary,
};
use toric_qubits::state::{named_state_str, segre_embed, MultiQubitState, QubitFactor};
use toric_qubits::toric::{
    cube, delzant_check, lattice_points, max_segre_residual, normal_fan_box, segre_exponents, segre_relations,
    verify_beta_balance, CubeVariant, DelzantFailureReason, LatticePolytope,
};
use toric_qubits::extract_factors;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn named(name: &str) -> MultiQubitState {
    named_state_str(name).unwrap()
}

fn fixed_point_table() -> Check {
    for n in 2..=6 {
        for (k, (_, im)) in fixed_point_images(n).map_err(|e| e.to_string())?.iter().enumerate() {
            for (j, &c) in im.coords().iter().enumerate() {
                let want = if k == j + 1 { -0.5 } else { 0.0 };
                ensure((c - want).abs() <= 1e-15, || format!("n={n} point {k} coord {j}: {c}"))?;
            }
        }
    }
    Ok(())
}

fn moment_containment() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for i in 0..10_000 {
        let m = 1 + i % 5;
        let fs = random_factors(m, &mut rng);
        let im = moment_product(&fs).map_err(|e| e.to_string())?;
        let inside = in_polytope(&im, &BoxPolytope::fubini_study(m), 1e-12).map_err(|e| e.to_string())?;
        ensure(inside, || format!("image {:?} outside the box", im.coords()))?;
        let phased: Vec<_> = fs.iter().map(|f| f.scaled(random_phase(&mut rng)).unwrap()).collect();
        let im2 = moment_product(&phased).map_err(|e| e.to_string())?;
        for (a, b) in im.coords().iter().zip(im2.coords()) {
            ensure((a - b).abs() <= 1e-12, || format!("phase moved image by {}", (a - b).abs()))?;
        }
    }
    Ok(())
}

fn segre_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for m in [2, 3] {
        for _ in 0..500 {
            let s = random_product_state(m, &mut rng);
            let r = max_segre_residual(&s);
            ensure(r <= 1e-12, || format!("product residual {r} at m={m}"))?;
            let fs = extract_factors(&s, 1e-10).ok_or_else(|| format!("extraction failed at m={m}"))?;
            let rebuilt = segre_embed(&fs).unwrap();
            let err = rebuilt
                .amplitudes()
                .iter()
                .zip(s.amplitudes())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            ensure(err <= 1e-10, || format!("round-trip error {err} at m={m}"))?;

            let g = haar_state(m, &mut rng);
            let r = max_segre_residual(&g);
            ensure(r > 1e-3, || format!("generic residual {r} at m={m}"))?;
            ensure(extract_factors(&g, 1e-10).is_none(), || format!("generic state factorised at m={m}"))?;
        }
    }
    let ghz = max_segre_residual(&named("ghz3"));
    ensure((ghz - 0.5).abs() <= 1e-12, || format!("GHZ residual {ghz}"))?;
    let w = max_segre_residual(&named("w3"));
    ensure((w - 1.0 / 3.0).abs() <= 1e-12, || format!("W residual {w}"))
}

fn golden_tangles() -> Check {
    let c = concurrence(&named("bell")).unwrap();
    ensure((c - 1.0).abs() <= 1e-12, || format!("concurrence(bell) = {c}"))?;
    let t = three_tangle(&named("ghz3")).unwrap();
    ensure((t - 1.0).abs() <= 1e-12, || format!("three_tangle(ghz3) = {t}"))?;
    let t = three_tangle(&named("w3")).unwrap();
    ensure(t <= 1e-12, || format!("three_tangle(w3) = {t}"))?;
    let t = m_tangle(&named("ghz4")).unwrap();
    ensure((t - 1.0).abs() <= 1e-12, || format!("m_tangle(ghz4) = {t}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for m in [2, 3, 4] {
        for _ in 0..500 {
            let s = random_product_state(m, &mut rng);
            let t = match m {
                2 => concurrence(&s).unwrap(),
                3 => three_tangle(&s).unwrap(),
                _ => m_tangle(&s).unwrap().max(tau4_epsilon_oracle(&s).unwrap()),
            };
            ensure(t <= 1e-10, || format!("tangle {t} on a product state at m={m}"))?;
        }
    }
    Ok(())
}

fn invariant_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..1000 {
        let s = haar_state(4, &mut rng);
        let h = invariant_h(&s).unwrap();
        let i1 = invariant_i1(&s).unwrap();
        let d = (i1 - h / 2.0).norm() / (h / 2.0).norm();
        ensure(d <= 1e-13, || format!("I1 vs H/2 relative error {d}"))?;
        let pairing = s.inner_product(&spin_flip(&s)).unwrap();
        let d = (pairing - 2.0 * h.conj()).norm();
        ensure(d <= 1e-12, || format!("<psi|psi~> vs 2 conj(H): {d}"))?;
        if h.norm() > 1e-3 {
            let eps = tau4_epsilon_oracle(&s).unwrap();
            let tau = m_tangle(&s).unwrap();
            let four_h = 4.0 * h.norm_sqr();
            ensure(rel_err(eps, tau) <= 1e-10, || format!("epsilon {eps} vs spin-flip {tau}"))?;
            ensure(rel_err(tau, four_h) <= 1e-10, || format!("tau4 {tau} vs 4|H|^2 {four_h}"))?;
            let report = check_tau4_identities(&s).unwrap();
            let ratio = report.tau4_over_abs_h_sq.ok_or("ratio undefined")?;
            ensure((ratio - 4.0).abs() <= 1e-9, || format!("tau4/|H|^2 = {ratio}"))?;
            ensure(!report.tau4_equals_abs_h_sq(1e-10), || "tau4 = |H|^2 not flagged".into())?;
        }
    }
    Ok(())
}

fn invariance_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..100 {
        let (s2, s3, s4) = (haar_state(2, &mut rng), haar_state(3, &mut rng), haar_state(4, &mut rng));
        let u = |n: usize, rng: &mut ChaCha8Rng| (0..n).map(|_| random_unitary(rng)).collect::<Vec<_>>();
        let (u2, u3, u4) = (u(2, &mut rng), u(3, &mut rng), u(4, &mut rng));
        let (t2, t3, t4) = (
            s2.apply_local(&u2).unwrap(),
            s3.apply_local(&u3).unwrap(),
            s4.apply_local(&u4).unwrap(),
        );
        let pairs = [
            ("concurrence", concurrence(&s2).unwrap(), concurrence(&t2).unwrap()),
            ("three_tangle", three_tangle(&s3).unwrap(), three_tangle(&t3).unwrap()),
            ("|H|", invariant_h(&s4).unwrap().norm(), invariant_h(&t4).unwrap().norm()),
        ];
        for (name, a, b) in pairs {
            ensure(rel_err(a, b) <= 1e-9, || format!("{name}: {a} vs {b}"))?;
        }
        let ops: Vec<_> = (0..4).map(|_| random_sl2(&mut rng)).collect();
        let (a, b) = (invariant_h(&s4).unwrap(), invariant_h(&s4.apply_local(&ops).unwrap()).unwrap());
        let d = (a - b).norm() / a.norm().max(b.norm());
        ensure(d <= 1e-8, || format!("H under SL(2): {a} vs {b}"))?;
    }
    Ok(())
}

fn polytope_suite() -> Check {
    for m in 1..=4 {
        for (variant, per_axis) in [(CubeVariant::Centered, 3usize), (CubeVariant::Unit, 2)] {
            let p = cube(m, variant).map_err(|e| e.to_string())?;
            let v = delzant_check(&p).map_err(|e| e.to_string())?;
            ensure(v.delzant, || format!("cube({m}) {variant:?} not Delzant"))?;
            let n = lattice_points(&p).map_err(|e| e.to_string())?.len();
            ensure(n == per_axis.pow(m as u32), || format!("cube({m}) {variant:?}: {n} points"))?;
        }
        let fan = normal_fan_box(&cube(m, CubeVariant::Centered).unwrap()).map_err(|e| e.to_string())?;
        ensure(fan.len() == 3usize.pow(m as u32), || format!("fan of cube({m}) has {} cones", fan.len()))?;
        let maximal: Vec<_> = fan.maximal_cones().collect();
        ensure(maximal.len() == 1 << m && maximal.iter().all(|c| c.is_unimodular()), || {
            format!("maximal cones of cube({m})")
        })?;
    }
    let tri = LatticePolytope::new(2, vec![vec![0, 0], vec![1, 0], vec![0, 2]]).map_err(|e| e.to_string())?;
    let v = delzant_check(&tri).map_err(|e| e.to_string())?;
    ensure(!v.delzant, || "triangle reported Delzant".into())?;
    let has_minus_two = v.failures.iter().any(|f| {
        matches!(f.reason, DelzantFailureReason::NotUnimodular { determinant, .. } if determinant == -2)
    });
    ensure(has_minus_two, || format!("triangle failures {:?}", v.failures))?;
    for m in 2..=4 {
        let e = segre_exponents(m).map_err(|e| e.to_string())?;
        for r in segre_relations(m) {
            ensure(verify_beta_balance(&r, &e).map_err(|e| e.to_string())?, || format!("unbalanced {r}"))?;
        }
    }
    Ok(())
}

fn toricq(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricq"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("toricq runs")
}

fn expect_run(args: &[&str], dir: &Path, code: i32, contains: &[&str]) -> Result<String, String> {
    let out = toricq(args, dir);
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
    let got = out.status.code().unwrap_or(-1);
    ensure(got == code, || format!("`{}` exited {got}, expected {code}: {stderr}", args.join(" ")))?;
    let stream = if code == 0 { &stdout } else { &stderr };
    ensure(stream.is_empty() || stream.ends_with('\n'), || format!("`{}` output not newline-terminated", args.join(" ")))?;
    for needle in contains {
        ensure(stream.contains(needle), || format!("`{}` output lacks {needle:?}:\n{stream}", args.join(" ")))?;
    }
    Ok(stdout)
}

fn is_complex_pair(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.len() == 2 && a.iter().all(Value::is_number))
}

fn validate_report(v: &Value) -> Check {
    let obj = v.as_object().ok_or("report is not an object")?;
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    let want = ["factors", "max_residual", "measures", "moment_image", "qubits", "separable", "tolerance"];
    ensure(keys == want, || format!("report keys {keys:?}"))?;
    ensure(v["qubits"].is_u64(), || "qubits".into())?;
    ensure(v["separable"].is_boolean(), || "separable".into())?;
    ensure(v["max_residual"].is_number() && v["tolerance"].is_number(), || "numbers".into())?;
    let factors_ok = v["factors"].is_null()
        || v["factors"]
            .as_array()
            .is_some_and(|fs| fs.iter().all(|f| f.as_array().is_some_and(|p| p.len() == 2 && p.iter().all(is_complex_pair))));
    ensure(factors_ok, || format!("factors {}", v["factors"]))?;
    let image_ok = v["moment_image"].is_null()
        || v["moment_image"].as_array().is_some_and(|a| a.iter().all(Value::is_number));
    ensure(image_ok, || format!("moment_image {}", v["moment_image"]))?;
    let measures_ok = v["measures"]
        .as_object()
        .is_some_and(|m| m.values().all(|x| x.is_number() || is_complex_pair(x)));
    ensure(measures_ok, || format!("measures {}", v["measures"]))
}

fn write(dir: &Path, name: &str, body: &str) {
    std::fs::write(dir.join(name), body).unwrap();
}

fn cli_contract() -> Check {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    write(dir, "bell.json", &format!(r#"{{"qubits": 2, "amplitudes": [[{h},0],[0,0],[0,0],[{h},0]]}}"#));
    write(dir, "broken.json", r#"{"qubits": 3, "amplitudes": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#);
    write(dir, "point.json", r#"{"coords": [[1,0],[0,0],[0,0]]}"#);
    write(dir, "factors.json", r#"{"factors": [[[1,0],[1,0]], [[0.6,0],[0,0.8]], [[0,0],[1,0]]]}"#);

    // analyze
    expect_run(&["analyze", "--state", "ghz3"], dir, 0, &["separable=false", "three_tangle=1\n"])?;
    let out = expect_run(&["analyze", "bell.json", "--format", "json"], dir, 0, &[])?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    validate_report(&v)?;
    let c = v["measures"]["concurrence"].as_f64().ok_or("concurrence missing")?;
    ensure((c - 1.0).abs() <= 1e-12, || format!("bell concurrence {c}"))?;
    expect_run(&["analyze", "broken.json"], dir, 2, &["amplitudes", "expected 8 amplitudes, found 7"])?;

    // segre
    let out = expect_run(&["segre", "-m", "2", "--list"], dir, 0, &[])?;
    ensure(out == "a[00]*a[11] = a[01]*a[10]\n", || format!("segre -m 2 --list printed {out:?}"))?;
    expect_run(&["segre", "--state", "ghz3"], dir, 0, &["max_residual=0.5\n"])?;
    expect_run(&["segre", "-m", "1", "--list"], dir, 1, &[])?;

    // moment
    expect_run(&["moment", "--state", "01"], dir, 0, &["moment_image=(0, -0.5)", "inside=true"])?;
    expect_run(&["moment", "bell.json"], dir, 3, &["state is not a product; moment map undefined"])?;
    expect_run(&["moment", "--projective", "point.json"], dir, 0, &["moment_image=(0, 0)"])?;

    // tangle, invariants, polytope, embed
    expect_run(&["tangle", "--state", "bell"], dir, 0, &["concurrence=1\n"])?;
    expect_run(
        &["invariants", "--state", "ghz4"],
        dir,
        0,
        &["H=0.5\n", "I1=0.25\n", "tau4_spinflip=1\n", "tau4_epsilon=1\n"],
    )?;
    expect_run(
        &["polytope", "cube", "-m", "3", "--delzant", "--lattice-points"],
        dir,
        0,
        &["delzant=true", "lattice_points=27"],
    )?;
    expect_run(&["embed", "factors.json", "-o", "state.json"], dir, 0, &[])?;
    expect_run(&["analyze", "state.json"], dir, 0, &["separable=true"])?;
    let out = expect_run(&["analyze", "state.json", "--format", "json"], dir, 0, &[])?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    validate_report(&v)?;
    ensure(v["separable"] == Value::Bool(true), || "round-trip not separable".into())?;

    // every JSON-producing command emits parseable JSON
    for args in [
        &["segre", "--state", "w3", "--format", "json"][..],
        &["moment", "--state", "10", "--format", "json"],
        &["tangle", "--state", "ghz4", "--format", "json"],
        &["invariants", "--state", "ghz4", "--format", "json"],
        &["polytope", "cube", "-m", "2", "--format", "json"],
    ] {
        let out = expect_run(args, dir, 0, &[])?;
        serde_json::from_str::<Value>(&out).map_err(|e| format!("`{}`: {e}", args.join(" ")))?;
    }
    // the written state matches a direct embedding of the same factors
    let s = toric_qubits::io::parse_state(&std::fs::read_to_string(dir.join("state.json")).unwrap())
        .map_err(|e| e.to_string())?
        .normalized();
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let fs = [(c(1.0, 0.0), c(1.0, 0.0)), (c(0.6, 0.0), c(0.0, 0.8)), (c(0.0, 0.0), c(1.0, 0.0))]
        .map(|(a, b)| QubitFactor::new(a, b).unwrap());
    let direct = segre_embed(&fs).unwrap().normalized();
    for (i, (a, b)) in s.amplitudes().iter().zip(direct.amplitudes()).enumerate() {
        ensure((a - b).norm() <= 1e-12, || format!("embedded amplitude {i}: {a} vs {b}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("1 fixed-point table", fixed_point_table),
        ("2 moment containment", moment_containment),
        ("3 segre soundness/completeness", segre_soundness),
        ("4 golden tangles", golden_tangles),
        ("5 invariant identities", invariant_identities),
        ("6 invariance suite", invariance_suite),
        ("7 polytope suite", polytope_suite),
        ("8 cli contract", cli_contract),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS {name}"),
            Err(msg) => {
                println!("FAIL {name}: {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
