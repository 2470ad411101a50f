use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name)
}

fn cxs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cxs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn homology_of_w158() {
    let o = cxs(&["homology", path(&data("w158.cplx"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "H1 = Z^1 (+) Z/3 (+) Z/3"));
}

#[test]
fn collar_of_x_prime() {
    let o = cxs(&["collar", path(&data("xprime.cplx"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "nerve: S"));
}

#[test]
fn fake_cover_fails_the_type_check() {
    let o = cxs(&["check-type", path(&data("xpp.cplx")), "--type", "rank74"]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert_eq!(out.matches("girth=5").count(), 2);
    assert!(out.trim_end().ends_with("fail"));
}

#[test]
fn exit_codes() {
    assert_eq!(cxs(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(cxs(&["homology", "/nonexistent/file.cplx"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cplx");
    std::fs::write(&bad, "[[1,0,2]]").unwrap();
    let o = cxs(&["euler", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
    assert_eq!(cxs(&["curvature", path(&data("xpp.cplx"))]).status.code(), Some(2));
    assert_eq!(cxs(&["involution", path(&data("xpp.cplx"))]).status.code(), Some(2));
    assert_eq!(cxs(&["involution", path(&data("xprime.cplx"))]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = ["--canonical", "surgery-flip", "xprime", "--replace", "0:1:-2", "--replace", "1:0:-11"];
    let (a, b) = (cxs(&args), cxs(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let xpp = cxs(&["--canonical", "surgery-flip", path(&data("xpp.cplx")), "--replace", "0:0:1"]);
    assert_eq!(xpp.status.code(), Some(0));
}

#[test]
fn flip_reproduces_the_fake_cover() {
    let dir = tempfile::tempdir().unwrap();
    let out = cxs(&["surgery-flip", "xprime", "--replace", "0:1:-2", "--replace", "1:0:-11"]);
    let flipped = dir.path().join("flipped.cplx");
    std::fs::write(&flipped, out.stdout).unwrap();
    let o = cxs(&["iso", path(&flipped), path(&data("xpp.cplx"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("isomorphic"));
}

#[test]
fn covers_write_a_verifiable_map() {
    let dir = tempfile::tempdir().unwrap();
    let o = cxs(&["covers", "v23", "--out-dir", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let cover = dir.path().join("cover_0.cplx");
    let map = dir.path().join("cover_0.map");
    let text = std::fs::read_to_string(&map).unwrap();
    assert!(text.lines().all(|l| l.contains(" -> ")));
    let v = cxs(&["verify-cover", path(&cover), "v23", "--map", path(&map)]);
    assert_eq!(v.status.code(), Some(0));
    // a map that swaps two base edges is not a covering
    let broken: String = text.replace("-> 1\n", "-> X\n").replace("-> 2\n", "-> 1\n").replace("-> X\n", "-> 2\n");
    std::fs::write(&map, broken).unwrap();
    let v = cxs(&["verify-cover", path(&cover), "v23", "--map", path(&map)]);
    assert_eq!(v.status.code(), Some(2));
}

#[test]
fn canonical_covers_keep_a_valid_map() {
    let dir = tempfile::tempdir().unwrap();
    let o = cxs(&["--canonical", "covers", "v23", "--out-dir", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let v = cxs(&[
        "verify-cover",
        path(&dir.path().join("cover_0.cplx")),
        "v23",
        "--map",
        path(&dir.path().join("cover_0.map")),
    ]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn split_then_compose_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(cxs(&["split", "xprime", "--out-dir", path(d)]).status.code(), Some(0));
    let back = d.join("back.toml");
    let o = cxs(&["compose", path(&d.join("left.toml")), path(&d.join("right.toml")), "--out", path(&back)]);
    assert_eq!(o.status.code(), Some(0));
    let toml = std::fs::read_to_string(&back).unwrap();
    let j = cxs(&["--json", "compose", path(&d.join("left.toml")), path(&d.join("right.toml"))]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert!(v["left"]["faces"].as_array().unwrap().is_empty());
    assert!(v["right"]["faces"].as_array().unwrap().is_empty());
    assert!(toml.contains("faces"));
    // the closed composite is X' again
    let faces = serde_json::to_string(&v["faces"]).unwrap();
    let body = d.join("body.cplx");
    std::fs::write(&body, faces).unwrap();
    assert_eq!(cxs(&["iso", path(&body), "xprime"]).status.code(), Some(0));
}

#[test]
fn explicit_matching_must_be_an_isomorphism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    cxs(&["split", "xprime", "--out-dir", path(d)]);
    let m = d.join("m.map");
    std::fs::write(&m, "1 -> 1\n").unwrap();
    let o = cxs(&["compose", path(&d.join("left.toml")), path(&d.join("right.toml")), "--matching", path(&m)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_mirrors_reports() {
    let o = cxs(&["--json", "homology", "w158"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["H1"]["rank"], 1);
    assert_eq!(v["H1"]["torsion"], serde_json::json!(["3", "3"]));
    let o = cxs(&["--json", "links", "v23"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["name"], "moebius_kantor");
    assert_eq!(v[0]["girth"], 6);
}

#[test]
fn links_name_catalog_graphs() {
    let o = cxs(&["links", "w158"]);
    let out = stdout(&o);
    assert!(out.contains("name=moebius_kantor"));
    assert!(out.contains("name=heawood"));
}

#[test]
fn st_enum_lists_s_and_t() {
    let out = stdout(&cxs(&["st-enum"]));
    assert_eq!(out.matches("# 4 vertices").count(), 2);
    assert!(out.contains("name=nerve_S") && out.contains("name=nerve_T"));
    let raw = stdout(&cxs(&["st-enum", "--raw"]));
    // no cubic graph has three vertices, so only the theta graph is excluded
    assert_eq!(raw.matches("excluded").count(), 1);
}

#[test]
fn small_reports() {
    assert!(stdout(&cxs(&["euler", "v23"])).contains("chi = 1"));
    assert!(stdout(&cxs(&["model-group", "v23"])).starts_with("gens: g1"));
    assert_eq!(cxs(&["model-group", "v23", "--vertex", "5"]).status.code(), Some(1));
    assert!(stdout(&cxs(&["weights", "w158"])).contains("holds"));
    assert_eq!(stdout(&cxs(&["base-graph", "w158"])).trim(), "n=2\n0 1");
    assert_eq!(cxs(&["predicates", "xprime"]).status.code(), Some(0));
    assert!(stdout(&cxs(&["predicates", "xprime"])).contains("h-collar: yes"));
}

#[test]
fn omega_and_fibers() {
    let o = cxs(&["omega", "--seq", "3/2,2,2", "--shape", "segment", "--base", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("basepoint: "));
    let o = cxs(&["omega", "--seq", "2", "--shape", "circle"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cxs(&["fibers", "--n", "1", "--shape", "segment"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("injective: pass"));
}

#[test]
fn classify_st_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = cxs(&["classify-st", "--out-dir", path(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(dir.path().join("checkpoints.txt")).unwrap();
    assert!(report.lines().all(|l| l.starts_with("PASS ")));
    assert!(report.contains("two cobordism classes"));
    for name in ["cobordism_3_2.toml", "cobordism_2.toml"] {
        let f = dir.path().join(name);
        assert!(f.exists());
    }
    // the two blocks compose
    let o = cxs(&[
        "compose",
        path(&dir.path().join("cobordism_3_2.toml")),
        path(&dir.path().join("cobordism_2.toml")),
    ]);
    assert_eq!(o.status.code(), Some(0));
}
