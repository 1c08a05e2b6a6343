use richfan::json;
use richfan::Fan;
use serde_json::Value;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const TRIANGLE: &str = r#"{"vertices": ["u", "v", "w"],
  "edges": [{"id": "a", "ends": ["u", "v"]}, {"id": "b", "ends": ["v", "w"]}, {"id": "c", "ends": ["w", "u"]}]}"#;

const LOOP: &str = r#"{"vertices": ["p"], "edges": [{"id": "l", "ends": ["p", "p"]}]}"#;

const SQUARE: &str = r#"{"vertices": ["p", "q", "s", "t"],
  "edges": [{"id": "a", "ends": ["p", "q"]}, {"id": "b", "ends": ["q", "s"]},
            {"id": "c", "ends": ["s", "t"]}, {"id": "d", "ends": ["t", "p"]}]}"#;

const C1: &str = r#"{"vertices": ["u", "v", "w"],
  "edges": [{"id": "a", "ends": ["u", "v"]}, {"id": "b", "ends": ["v", "w"]}, {"id": "c", "ends": ["w", "u"]}],
  "monoid": {"rank": 3, "rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]},
  "lengths": {"a": [1, 0, 0], "b": [1, 1, 0], "c": [1, 1, 1]}}"#;

const THETA: &str = r#"{"vertices": ["p", "q"],
  "edges": [{"id": "a", "ends": ["p", "q"]}, {"id": "b", "ends": ["p", "q"]}, {"id": "c", "ends": ["p", "q"]}],
  "monoid": {"rank": 1, "rays": [[1]]},
  "lengths": {"a": [1], "b": [2], "c": [2]}}"#;

const C1_FAMILY: &str = r#"{"vertices": ["u", "v", "w"],
  "edges": [{"id": "a", "ends": ["u", "v"]}, {"id": "b", "ends": ["v", "w"]}, {"id": "c", "ends": ["w", "u"]}],
  "sigma_rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  "length_map": [[1, 0, 0], [1, 1, 0], [1, 1, 1]]}"#;

const IDENTITY_FAMILY: &str = r#"{"vertices": ["u", "v", "w"],
  "edges": [{"id": "a", "ends": ["u", "v"]}, {"id": "b", "ends": ["v", "w"]}, {"id": "c", "ends": ["w", "u"]}],
  "sigma_rays": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  "length_map": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: tempfile::tempdir().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

fn richfan(args: &[&str], input: &Path) -> Output {
    richfan_with(args, input, &[])
}

fn richfan_with(args: &[&str], input: &Path, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_richfan"));
    cmd.args(args).arg(input);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let v = json::parse(&text).unwrap();
    assert_eq!(json::render(&v), text, "output does not round trip");
    v
}

fn stderr_error(out: &Output) -> String {
    let v = json::parse(std::str::from_utf8(&out.stderr).unwrap()).unwrap();
    assert!(v["message"].is_string());
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn triangle_subdivides_into_six_cones() {
    let ws = Workspace::new();
    let out = richfan(&["subdivide", "--r", "1"], &ws.file("triangle.json", TRIANGLE));
    assert_eq!(code(&out), 0);
    let fan = json::fan_from_json(&stdout_json(&out)).unwrap();
    assert_eq!(fan.len(), 6);
    assert_eq!(json::render(&json::fan_to_json(&fan)).as_bytes(), out.stdout.as_slice());
}

#[test]
fn a_loop_has_no_cuts() {
    let ws = Workspace::new();
    let out = richfan(&["cuts"], &ws.file("loop.json", LOOP));
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out), serde_json::json!([]));
}

#[test]
fn graph_verbs() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let out = richfan(&["cuts"], &tri);
    assert_eq!(stdout_json(&out), serde_json::json!([["a", "b"], ["a", "c"], ["b", "c"]]));
    let out = richfan(&["blocks"], &tri);
    assert_eq!(stdout_json(&out), serde_json::json!([["a", "b", "c"]]));
    let out = richfan(&["ideal", "--r", "1"], &tri);
    assert_eq!(stdout_json(&out)["generators"].as_array().unwrap().len(), 7);
    let out = richfan(&["contract", "--contract", "a"], &tri);
    let g = json::graph_from_json(&stdout_json(&out)).unwrap();
    assert_eq!(g.num_edges(), 2);
    let out = richfan(&["cuts", "--contract", "a,b"], &tri);
    assert_eq!(stdout_json(&out), serde_json::json!([]));
}

#[test]
fn contraction_then_subdivision_gives_the_two_gon_fan() {
    let ws = Workspace::new();
    let out = richfan(&["subdivide", "--contract", "c"], &ws.file("triangle.json", TRIANGLE));
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_json(&out),
        serde_json::json!({"rank": 2, "cones": [{"rays": [[0, 1], [1, 1]]}, {"rays": [[1, 0], [1, 1]]}]})
    );
}

#[test]
fn checks_exit_zero_or_three() {
    let ws = Workspace::new();
    let c1 = ws.file("c1.json", C1);
    let out = richfan(&["check-weakly-rich", "--r", "1"], &c1);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["holds"], Value::Bool(true));
    let out = richfan(&["check-rich", "--r", "1"], &c1);
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["holds"], Value::Bool(false));

    let tri = ws.file("triangle.json", TRIANGLE);
    assert_eq!(code(&richfan(&["smoothness", "--r", "1"], &tri)), 0);
    assert_eq!(code(&richfan(&["smoothness", "--r", "2"], &tri)), 3);

    let family = ws.file("c1-family.json", C1_FAMILY);
    assert_eq!(code(&richfan(&["check-weakly-rich"], &family)), 0);
    assert_eq!(code(&richfan(&["check-weakly-rich"], &ws.file("identity.json", IDENTITY_FAMILY))), 3);
}

#[test]
fn factors_through_a_given_fan() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let fan = ws.dir.path().join("fan.json");
    let out = richfan(&["subdivide", "--out", fan.to_str().unwrap()], &tri);
    assert_eq!(code(&out), 0);
    let family = ws.file("c1-family.json", C1_FAMILY);
    let identity = ws.file("identity.json", IDENTITY_FAMILY);
    assert_eq!(code(&richfan(&["factors", "--fan", fan.to_str().unwrap()], &family)), 0);
    assert_eq!(code(&richfan(&["factors", "--fan", fan.to_str().unwrap()], &identity)), 3);
    assert_eq!(code(&richfan(&["factors"], &identity)), 3);

    let orthant = ws.file("orthant.json", &json::render(&json::fan_to_json(&Fan::orthant(3))));
    assert_eq!(code(&richfan(&["factors", "--fan", orthant.to_str().unwrap()], &identity)), 0);
    assert_eq!(code(&richfan(&["verify-fan"], &orthant)), 0);
}

#[test]
fn incomplete_fans_fail_verification() {
    let ws = Workspace::new();
    let mut fan: Value =
        json::parse(&String::from_utf8(richfan(&["subdivide"], &ws.file("triangle.json", TRIANGLE)).stdout).unwrap())
            .unwrap();
    assert_eq!(code(&richfan(&["verify-fan"], &ws.file("full.json", &json::render(&fan)))), 0);
    fan["cones"].as_array_mut().unwrap().pop();
    let out = richfan(&["verify-fan"], &ws.file("partial.json", &json::render(&fan)));
    assert_eq!(code(&out), 3);
    assert_eq!(stdout_json(&out)["holds"], Value::Bool(false));
}

#[test]
fn basic_model_of_the_theta_curve() {
    let ws = Workspace::new();
    let out = richfan(&["basic-model", "--r", "2"], &ws.file("theta.json", THETA));
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["is_basic"], Value::Bool(true));
    assert_eq!(v["multipliers"], serde_json::json!({"a": 1, "b": 2, "c": 2}));
    assert_eq!(v["roots"], serde_json::json!([[1]]));
    json::curve_from_json(&v["model"]).unwrap();
    let out = richfan(&["basic-model", "--r", "1"], &ws.file("theta.json", THETA));
    assert_eq!(code(&out), 1);
    assert_eq!(stderr_error(&out), "NotRRich");
}

#[test]
fn domain_errors_exit_one() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let out = richfan(&["cuts", "--contract", "z"], &tri);
    assert_eq!(code(&out), 1);
    assert_eq!(stderr_error(&out), "UnknownEdge");
    assert!(out.stdout.is_empty());
    let out = richfan(&["cross-section"], &ws.file("square.json", SQUARE));
    assert_eq!(code(&out), 1);
    assert_eq!(stderr_error(&out), "RankNotThree");
    let disconnected = ws.file("two.json", r#"{"vertices": ["p", "q"], "edges": []}"#);
    let out = richfan(&["cuts"], &disconnected);
    assert_eq!(code(&out), 1);
    assert_eq!(stderr_error(&out), "DisconnectedGraph");
}

#[test]
fn malformed_input_exits_two() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let out = richfan(&["cuts"], &ws.file("broken.json", "{\"vertices\": ["));
    assert_eq!(code(&out), 2);
    assert_eq!(stderr_error(&out), "Malformed");
    assert_eq!(code(&richfan(&["cuts"], &ws.dir.path().join("missing.json"))), 2);
    assert_eq!(code(&richfan(&["check-rich"], &tri)), 2);
    assert_eq!(code(&richfan(&["subdivide", "--r", "zero"], &tri)), 2);
    assert_eq!(code(&richfan(&["subdivide", "--r", "0"], &tri)), 2);
    assert_eq!(code(&richfan(&["subdivide", "--r", "inf"], &tri)), 2);
    assert_eq!(code(&richfan(&["subdivide", "--format", "svg"], &tri)), 2);
    assert_eq!(code(&richfan(&["sideways"], &tri)), 2);
    assert_eq!(code(&richfan_with(&["cuts"], &tri, &[("RICHFAN_THREADS", "none")])), 2);
}

#[test]
fn out_writes_the_same_bytes_as_stdout() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let target = ws.dir.path().join("fan.json");
    std::fs::write(&target, "stale").unwrap();
    let written = richfan(&["subdivide", "--r", "2", "--out", target.to_str().unwrap()], &tri);
    assert_eq!(code(&written), 0);
    assert!(written.stdout.is_empty());
    let printed = richfan(&["subdivide", "--r", "2"], &tri);
    assert_eq!(std::fs::read(&target).unwrap(), printed.stdout);
    let leftovers: Vec<_> = std::fs::read_dir(ws.dir.path()).unwrap().collect();
    assert_eq!(leftovers.len(), 2);

    let nowhere = ws.dir.path().join("no/such/dir/fan.json");
    let out = richfan(&["subdivide", "--out", nowhere.to_str().unwrap()], &tri);
    assert_eq!(code(&out), 1);
    assert_eq!(stderr_error(&out), "Output");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let ws = Workspace::new();
    let square = ws.file("square.json", SQUARE);
    for verb in ["subdivide", "ideal", "smoothness"] {
        let one = richfan_with(&[verb, "--r", "2"], &square, &[("RICHFAN_THREADS", "1")]);
        let two = richfan_with(&[verb, "--r", "2"], &square, &[("RICHFAN_THREADS", "2")]);
        let again = richfan_with(&[verb, "--r", "2"], &square, &[("RICHFAN_THREADS", "2")]);
        assert_eq!(code(&one), code(&two));
        assert_eq!(one.stdout, two.stdout, "{verb}");
        assert_eq!(two.stdout, again.stdout, "{verb}");
        stdout_json(&one);
    }
}

fn region_edges(region: &[usize]) -> BTreeSet<(usize, usize)> {
    (0..region.len())
        .map(|k| {
            let (a, b) = (region[k], region[(k + 1) % region.len()]);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn regions(v: &Value) -> Vec<Vec<usize>> {
    v["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(|i| i.as_u64().unwrap() as usize).collect())
        .collect()
}

#[test]
fn cross_sections() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let out = richfan(&["cross-section", "--format", "json"], &tri);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 7);
    let rs = regions(&v);
    assert_eq!(rs.len(), 6);
    assert!(rs.iter().all(|r| r.len() == 3));

    let orthant = ws.file("orthant.json", &json::render(&json::fan_to_json(&Fan::orthant(3))));
    let v = stdout_json(&richfan(&["cross-section", "--format", "json"], &orthant));
    let rs = regions(&v);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].iter().copied().collect::<BTreeSet<_>>(), BTreeSet::from([0, 1, 2]));

    let svg = richfan(&["cross-section"], &tri);
    assert_eq!(code(&svg), 0);
    let text = String::from_utf8(svg.stdout.clone()).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<polygon").count(), 6);
    assert_eq!(text.matches("<circle").count(), 7);
    assert_eq!(richfan(&["cross-section", "--format", "svg"], &tri).stdout, svg.stdout);
}

#[test]
fn cross_section_adjacency_matches_the_fan() {
    let ws = Workspace::new();
    let tri = ws.file("triangle.json", TRIANGLE);
    let fan_out = richfan(&["subdivide", "--r", "2"], &tri);
    let fan = json::fan_from_json(&stdout_json(&fan_out)).unwrap();
    let section = stdout_json(&richfan(&["cross-section", "--r", "2", "--format", "json"], &tri));
    let rs = regions(&section);
    assert_eq!(rs.len(), fan.len());
    let vertices: Vec<Vec<i64>> = serde_json::from_value(section["vertices"].clone()).unwrap();
    let mut drawn = BTreeSet::new();
    let mut expected = BTreeSet::new();
    for i in 0..fan.len() {
        let mut rays: Vec<Vec<i64>> = rs[i].iter().map(|&k| vertices[k].clone()).collect();
        rays.sort();
        assert_eq!(rays, fan.cones()[i].rays());
        for j in i + 1..fan.len() {
            if !region_edges(&rs[i]).is_disjoint(&region_edges(&rs[j])) {
                drawn.insert((i, j));
            }
            if fan.cones()[i].intersection(&fan.cones()[j]).unwrap().dim() == 2 {
                expected.insert((i, j));
            }
        }
    }
    assert!(!expected.is_empty());
    assert_eq!(drawn, expected);
}
