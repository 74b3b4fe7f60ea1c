use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qdiv::random::{random_pure, rng_from_seed};
use qdiv::scalar::max_abs;
use qdiv::{CMatrix, Tolerances64};
use qdiv_cli::io::{read_json, DivergenceTable, MatrixParts, ProbeFile, StateFile, SymmetryFile};
use serde_json::Value;
use tempfile::TempDir;

fn qdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdiv"))
        .args(args)
        .env_remove("QDIV_TOL_PURE_MARGIN")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

struct Scratch(TempDir);

impl Scratch {
    fn new() -> Self {
        Scratch(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).display().to_string()
    }

    fn diag(&self, name: &str, d: &[f64]) -> String {
        let n = d.len();
        let mut re = vec![vec![0.0; n]; n];
        for (i, x) in d.iter().enumerate() {
            re[i][i] = *x;
        }
        let file = StateFile {
            matrix: MatrixParts {
                dim: n,
                re,
                im: vec![vec![0.0; n]; n],
            },
        };
        fs::write(self.path(name), serde_json::to_string(&file).unwrap()).unwrap();
        self.s(name)
    }
}

fn tol() -> Tolerances64 {
    Tolerances64::default()
}

#[test]
fn divergence_examples() {
    let t = Scratch::new();
    let (a, b) = (t.diag("a.json", &[1.0, 0.0]), t.diag("b.json", &[0.0, 1.0]));
    let o = qdiv(&["div", "bregman", "--f", "quadratic", &a, &b]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2.000000000000\n");
    let o = qdiv(&["div", "jensen", "--f", "xlogx", &a, &b]);
    assert_eq!(stdout(&o), "0.693147180560\n");
    let o = qdiv(&["div", "bregman", "--f", "xlogx", &a, &b]);
    assert_eq!(stdout(&o), "inf\n");
    let o = qdiv(&["div", "bregman", "--f", "power:q=3/2", &a, &a]);
    assert_eq!(stdout(&o), "0.000000000000\n");
}

#[test]
fn distinct_pure_states_are_infinitely_far_for_xlogx() {
    let t = Scratch::new();
    assert!(
        qdiv(&["gen", "pure", "--dim", "3", "--seed", "1", "-o", &t.s("p.json")])
            .status
            .success()
    );
    assert!(
        qdiv(&["gen", "pure", "--dim", "3", "--seed", "2", "-o", &t.s("q.json")])
            .status
            .success()
    );
    let o = qdiv(&["div", "bregman", "--f", "xlogx", &t.s("p.json"), &t.s("q.json")]);
    assert_eq!(stdout(&o), "inf\n");
}

#[test]
fn errors_have_distinct_exit_codes() {
    let t = Scratch::new();
    let a = t.diag("a.json", &[1.0, 0.0]);
    let c = t.diag("c.json", &[0.5, 0.25, 0.25]);
    let bad_trace = t.diag("bad.json", &[0.7, 0.7]);
    fs::write(t.path("garbage.json"), "{ not json").unwrap();

    assert_eq!(qdiv(&["div", "bregman", "--f", "xlogx", &a, &c]).status.code(), Some(5));
    assert_eq!(
        qdiv(&["div", "bregman", "--f", "xlogx", &a, &bad_trace]).status.code(),
        Some(4)
    );
    assert_eq!(
        qdiv(&["div", "bregman", "--f", "xlogx", &a, &t.s("missing.json")])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        qdiv(&["div", "bregman", "--f", "xlogx", &a, &t.s("garbage.json")])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(qdiv(&["div", "bregman", "--f", "cubic", &a, &a]).status.code(), Some(2));
    assert_eq!(qdiv(&["div", "tsallis", "--f", "xlogx", &a, &a]).status.code(), Some(2));
    let o = qdiv(&["div", "bregman", "--f", "xlogx", &a, &bad_trace]);
    assert!(stderr(&o).contains("trace"));
}

#[test]
fn generated_states_self_validate() {
    let t = Scratch::new();
    let o = qdiv(&["gen", "pure", "--dim", "2", "--seed", "7", "-o", &t.s("p.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let p: StateFile = read_json(&t.path("p.json")).unwrap();
    let s = p.to_state(&tol()).unwrap();
    assert_eq!(s.rank(), 1);
    let m = s.matrix().as_matrix();
    assert!(max_abs(&(m * m - m)) < 1e-12);

    qdiv(&[
        "gen",
        "state",
        "--dim",
        "3",
        "--rank",
        "2",
        "--seed",
        "1",
        "-o",
        &t.s("s.json"),
    ]);
    let s: StateFile = read_json(&t.path("s.json")).unwrap();
    let s = s.to_state(&tol()).unwrap();
    let above = s
        .spectral()
        .eigenvalues()
        .into_iter()
        .filter(|&x| x > tol().supp)
        .count();
    assert_eq!(above, 2);

    qdiv(&["gen", "unitary", "--dim", "4", "--seed", "3", "-o", &t.s("u.json")]);
    let u: SymmetryFile = read_json(&t.path("u.json")).unwrap();
    assert!(!u.antiunitary);
    let m = u.matrix.to_matrix().unwrap();
    assert!(max_abs(&(&m * m.adjoint() - CMatrix::identity(4, 4))) < 1e-12);

    qdiv(&["gen", "antiunitary", "--dim", "2", "--seed", "3", "-o", &t.s("v.json")]);
    let v: SymmetryFile = read_json(&t.path("v.json")).unwrap();
    assert!(v.antiunitary);
}

#[test]
fn generation_is_deterministic_and_validated() {
    let t = Scratch::new();
    for name in ["x.json", "y.json"] {
        qdiv(&[
            "gen",
            "state",
            "--dim",
            "5",
            "--rank",
            "3",
            "--seed",
            "99",
            "-o",
            &t.s(name),
        ]);
    }
    assert_eq!(fs::read(t.path("x.json")).unwrap(), fs::read(t.path("y.json")).unwrap());
    qdiv(&[
        "gen",
        "state",
        "--dim",
        "5",
        "--rank",
        "3",
        "--seed",
        "100",
        "-o",
        &t.s("z.json"),
    ]);
    assert_ne!(fs::read(t.path("x.json")).unwrap(), fs::read(t.path("z.json")).unwrap());
    assert_eq!(
        qdiv(&[
            "gen",
            "state",
            "--dim",
            "3",
            "--rank",
            "4",
            "--seed",
            "1",
            "-o",
            &t.s("w.json")
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        qdiv(&["gen", "state", "--dim", "0", "--seed", "1", "-o", &t.s("w.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn state_files_roundtrip_bit_for_bit() {
    let t = Scratch::new();
    qdiv(&["gen", "state", "--dim", "4", "--seed", "5", "-o", &t.s("s.json")]);
    let text = fs::read_to_string(t.path("s.json")).unwrap();
    let file: StateFile = serde_json::from_str(&text).unwrap();
    let state = file.to_state(&tol()).unwrap();
    let again = qdiv_cli::io::to_json(&StateFile::from_state(&state));
    assert_eq!(text, again);
}

#[test]
fn tables_mark_infinite_entries() {
    let t = Scratch::new();
    let files = [
        t.diag("a.json", &[1.0, 0.0]),
        t.diag("b.json", &[0.5, 0.5]),
        t.diag("c.json", &[0.0, 1.0]),
    ];
    let mut args = vec!["table", "--kind", "bregman", "--f", "xlogx"];
    args.extend(files.iter().map(String::as_str));
    let o = qdiv(&args);
    assert!(o.status.success(), "{}", stderr(&o));
    let raw: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(raw["values"][0][2], Value::String("inf".into()));
    assert_eq!(raw["values"][1][0], Value::String("inf".into()));
    let table: DivergenceTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table.kind, "bregman");
    assert_eq!(table.generator, "xlogx");
    for i in 0..3 {
        assert_eq!(table.values[i][i].0, 0.0);
    }
    assert!((table.values[0][1].0 - 2f64.ln()).abs() < 1e-12);

    args[2] = "jensen";
    let o = qdiv(&args);
    let table: DivergenceTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(table.values.iter().flatten().all(|v| v.0.is_finite()));
    assert!((table.values[0][2].0 - 2f64.ln()).abs() < 1e-12);
}

fn probes(t: &Scratch, oracle: &str, dim: &str, name: &str) -> PathBuf {
    let o = qdiv(&["probes", "--oracle", oracle, "--dim", dim, "-o", &t.s(name)]);
    assert!(o.status.success(), "{}", stderr(&o));
    t.path(name)
}

fn reconstruct(t: &Scratch, probes: &Path) -> Output {
    qdiv(&["reconstruct", &probes.display().to_string(), "-o", &t.s("U.json")])
}

#[test]
fn reconstruct_seeded_unitary() {
    let t = Scratch::new();
    let p = probes(&t, "unitary:seed=11", "4", "probes.json");
    let o = reconstruct(&t, &p);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["antiunitary"], Value::Bool(false));
    assert!(report["residual"].as_f64().unwrap() < 1e-8);
    let u: SymmetryFile = read_json(&t.path("U.json")).unwrap();
    let u = u.to_op(&tol()).unwrap();
    assert!(u.matrix()[(0, 0)].re >= 0.0 && u.matrix()[(0, 0)].im.abs() < 1e-14);

    let o = qdiv(&[
        "verify",
        "--kind",
        "bregman",
        "--f",
        "quadratic",
        "--oracle",
        &format!("file:{}", t.s("U.json")),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn reconstruct_transposition_is_antiunitary() {
    let t = Scratch::new();
    let p = probes(&t, "transpose", "3", "probes.json");
    let o = reconstruct(&t, &p);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["antiunitary"], Value::Bool(true));
}

#[test]
fn corrupted_probe_is_not_a_preserver() {
    let t = Scratch::new();
    let p = probes(&t, "unitary:seed=2", "3", "probes.json");
    let mut file: ProbeFile = read_json(&p).unwrap();
    let junk = random_pure::<f64, _>(3, &mut rng_from_seed(77)).matrix();
    let slot = file.images.iter_mut().find(|im| im.label == "e1+e3").unwrap();
    slot.matrix = MatrixParts::from_matrix(junk.as_matrix());
    fs::write(&p, serde_json::to_string(&file).unwrap()).unwrap();
    let o = reconstruct(&t, &p);
    assert_eq!(o.status.code(), Some(6));
    let err = stderr(&o);
    assert!(err.contains("not a preserver") && err.contains("e1+e3"), "{err}");
}

#[test]
fn incomplete_probe_file_is_rejected() {
    let t = Scratch::new();
    let p = probes(&t, "identity", "2", "probes.json");
    let mut file: ProbeFile = read_json(&p).unwrap();
    file.images.pop();
    fs::write(&p, serde_json::to_string(&file).unwrap()).unwrap();
    assert_eq!(reconstruct(&t, &p).status.code(), Some(2));
}

#[test]
fn verify_separates_conjugations_from_other_maps() {
    for (oracle, ok) in [
        ("antiunitary:seed=4", true),
        ("transpose", true),
        ("depolarize:p=0.5", false),
        ("dephase", false),
    ] {
        let o = qdiv(&[
            "verify",
            "--kind",
            "jensen",
            "--f",
            "xlogx",
            "--oracle",
            oracle,
            "--dim",
            "3",
            "--samples",
            "5",
        ]);
        assert_eq!(o.status.success(), ok, "{oracle}: {}", stderr(&o));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["conjugation"], Value::Bool(ok));
        if !ok {
            assert!(report["divergence_deviation"].as_f64().unwrap() > 1e-3);
            assert_eq!(o.status.code(), Some(1));
        }
    }
}

fn suite(args: &[&str]) -> (Output, Value) {
    let o = qdiv(args);
    let v = serde_json::from_str(&stdout(&o)).unwrap_or(Value::Null);
    (o, v)
}

#[test]
fn suites_pass_and_echo_their_inputs() {
    for name in [
        "closed-forms",
        "inversion",
        "preserver-roundtrip",
        "convexity",
        "purity",
    ] {
        let (o, report) = suite(&["suite", name, "--dims", "2..3", "--samples", "5", "--seed", "3"]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert_eq!(report["suite"], Value::String(name.into()));
        assert_eq!(report["seed"], Value::from(3));
        assert_eq!(report["dims"], serde_json::json!([2, 3]));
        assert_eq!(report["passed"], Value::Bool(true));
        assert!(report["tolerances"]["supp"].as_f64().is_some());
        assert!(report.get("wall_time_ms").is_none());
    }
}

#[test]
fn suite_reports_are_byte_identical() {
    let args = ["suite", "convexity", "--samples", "20", "--seed", "8"];
    assert_eq!(qdiv(&args).stdout, qdiv(&args).stdout);
    let other = qdiv(&["suite", "convexity", "--samples", "20", "--seed", "9"]);
    assert_ne!(qdiv(&args).stdout, other.stdout);
}

#[test]
fn unknown_suite_and_bad_dims() {
    assert_eq!(qdiv(&["suite", "everything"]).status.code(), Some(2));
    assert_eq!(qdiv(&["suite", "closed-forms", "--dims", "1,2"]).status.code(), Some(2));
    assert_eq!(
        qdiv(&["suite", "closed-forms", "--dims", "5..2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qdiv(&["suite", "purity", "--f", "xlogx", "--samples", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn tolerance_flags_override_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qdiv"));
        c.args(["suite", "inversion", "--samples", "2", "--dims", "2"]);
        if let Some(f) = flag {
            c.args(["--tol-pure-margin", f]);
        }
        match env {
            Some(e) => c.env("QDIV_TOL_PURE_MARGIN", e),
            None => c.env_remove("QDIV_TOL_PURE_MARGIN"),
        };
        let v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v["tolerances"]["pure_margin"].as_f64().unwrap()
    };
    assert_eq!(run(None, None), 1e-3);
    assert_eq!(run(Some("0.01"), None), 0.01);
    assert_eq!(run(Some("0.01"), Some("0.02")), 0.02);
}

#[test]
fn timing_is_opt_in() {
    let (o, report) = suite(&["suite", "inversion", "--samples", "2", "--dims", "2", "--timing"]);
    assert!(o.status.success());
    assert!(report["wall_time_ms"].is_u64());
}
