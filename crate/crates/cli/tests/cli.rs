use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const TREFOIL: &str = "5\n1 3\n2 4\n3 5\n1 4\n2 5\n";
const UNKNOT: &str = "3\n1 2\n2 3\n3 1\n";

fn stickbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stickbound"))
        .args(args)
        .env_remove("STICKBOUND_MAX_L")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn build_trefoil_and_unknot() {
    let dir = TempDir::new().unwrap();
    let tre = write(&dir, "trefoil.arc", TREFOIL);
    let out = stickbound(&["build", &tre]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&stdout(&out));
    assert_eq!(v["sticks"], 6);
    assert_eq!(v["bound_satisfied"], true);
    assert_eq!(v["bound"], "6/1");
    assert_eq!(v["determinant"], 3);
    assert_eq!(v["top_reduction"], "applied");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 6);

    let un = write(&dir, "unknot3.arc", UNKNOT);
    let out = stickbound(&["build", &un]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&stdout(&out))["sticks"], 3);
}

#[test]
fn build_writes_files_and_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let tre = write(&dir, "trefoil.arc", TREFOIL);
    let out_json = dir.path().join("k.json");
    let out_obj = dir.path().join("k.obj");
    let o = stickbound(&[
        "build",
        &tre,
        "--out",
        out_json.to_str().unwrap(),
        "--obj",
        out_obj.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let obj = fs::read_to_string(&out_obj).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6);
    assert_eq!(obj.lines().last().unwrap(), "l 1 2 3 4 5 6 1");
    let again = stickbound(&["build", &tre]);
    assert_eq!(stdout(&again), fs::read_to_string(&out_json).unwrap());
}

#[test]
fn build_without_top_reduction() {
    let dir = TempDir::new().unwrap();
    let tre = write(&dir, "trefoil.arc", TREFOIL);
    let o = stickbound(&["build", &tre, "--no-top-reduction"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&stdout(&o));
    assert_eq!(v["sticks"], 8);
    assert_eq!(v["bound_satisfied"], false);
    assert_eq!(v["top_reduction"], "skipped:disabled");
}

#[test]
fn malformed_input_reports_line() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "malformed.arc", "3\n1 2\n2 x\n3 1\n");
    let o = stickbound(&["build", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let invalid = write(&dir, "two_loops.arc", "4\n1 2\n2 1\n3 4\n4 3\n");
    assert_eq!(stickbound(&["build", &invalid]).status.code(), Some(1));
    assert_eq!(
        stickbound(&["build", "/nonexistent/x.arc"]).status.code(),
        Some(1)
    );
}

#[test]
fn verify_outcomes() {
    let dir = TempDir::new().unwrap();
    let tre = write(&dir, "trefoil.arc", TREFOIL);
    let un = write(&dir, "unknot3.arc", UNKNOT);
    let tre_json = write(&dir, "trefoil.json", &stdout(&stickbound(&["build", &tre])));
    let un_json = write(&dir, "unknot.json", &stdout(&stickbound(&["build", &un])));

    let o = stickbound(&["verify", &tre, &tre_json]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stickbound(&["verify", &tre, &un_json]).status.code(),
        Some(3)
    );

    // move vertex 0 onto the midpoint of edge 2 -> 3: a self-intersection
    let mut v = json(&fs::read_to_string(&tre_json).unwrap());
    let verts = v["vertices"].as_array().unwrap().clone();
    let mid: Vec<String> = (0..3)
        .map(|c| {
            let q = |s: &serde_json::Value| {
                let (a, b) = s.as_str().unwrap().split_once('/').unwrap();
                (a.parse::<i128>().unwrap(), b.parse::<i128>().unwrap())
            };
            let (a, b) = q(&verts[2][c]);
            let (x, y) = q(&verts[3][c]);
            let (num, den) = (a * y + x * b, 2 * b * y);
            format!("{num}/{den}")
        })
        .collect();
    v["vertices"][0] = serde_json::json!(mid);
    let broken = write(&dir, "broken.json", &v.to_string());
    assert_eq!(
        stickbound(&["verify", &tre, &broken]).status.code(),
        Some(2)
    );

    // a false stick count is a verification failure
    let mut v = json(&fs::read_to_string(&tre_json).unwrap());
    v["sticks"] = serde_json::json!(5);
    let lying = write(&dir, "lying.json", &v.to_string());
    assert_eq!(stickbound(&["verify", &tre, &lying]).status.code(), Some(2));

    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(
        stickbound(&["verify", &tre, &garbage]).status.code(),
        Some(1)
    );
}

#[test]
fn simplify_destabilizes() {
    let dir = TempDir::new().unwrap();
    let un = write(&dir, "unknot3.arc", UNKNOT);
    let o = stickbound(&["simplify", &un]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2\n1 2\n2 1\n");
    // chord 4 of the trefoil presentation is type III: nothing to remove
    let tre = write(&dir, "trefoil.arc", TREFOIL);
    assert_eq!(stdout(&stickbound(&["simplify", &tre])), TREFOIL);
}

fn arc_files(dir: &Path) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "arc"))
        .map(|p| {
            (
                p.file_name().unwrap().to_string_lossy().into(),
                fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

#[test]
fn random_then_batch() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    for d in [&a, &b] {
        let o = stickbound(&[
            "random",
            "--n",
            "8",
            "--seed",
            "42",
            "--count",
            "10",
            "--out",
            d.path().to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    let files = arc_files(a.path());
    assert_eq!(files.len(), 10);
    assert_eq!(files, arc_files(b.path()));
    assert!(files.iter().all(|(_, t)| t.starts_with("# seed: ")));

    let csv_path = a.path().join("out.csv");
    let o = stickbound(&[
        "batch",
        a.path().to_str().unwrap(),
        "--csv",
        csv_path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id,n,beta1,beta2,beta3,shift,sticks,bound,bound_satisfied,top_reduction,embedded,invariants_match,determinant,seed"
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 10);
    for (row, (name, text)) in rows.iter().zip(&files) {
        assert_eq!(format!("{}.arc", row[0]), *name, "input order kept");
        assert_eq!(row[1], "8");
        assert_eq!(row[7], "21/2");
        assert_eq!(row[8], "true");
        assert_eq!(row[10], "true");
        assert_eq!(row[11], "true");
        assert_eq!(text.lines().next().unwrap(), format!("# seed: {}", row[13]));
    }

    let again = stickbound(&["batch", a.path().to_str().unwrap()]);
    assert_eq!(stdout(&again), csv);
}

#[test]
fn batch_records_failures_without_aborting() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "a.arc", TREFOIL);
    let bad = write(&dir, "b.arc", "3\n1 2\n");
    let o = stickbound(&["batch", &good, &bad]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("a,5,2,1,2,0,6,6/1,true,applied,true,true,3,"));
    assert!(rows[1].starts_with("b,"));
    assert!(rows[1].contains("error:"));
}

#[test]
fn bounds_table() {
    let o = stickbound(&["bounds", "--cmin", "3", "--cmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(
        lines[0],
        "c,arc_index_upper,negami_lower,negami_lower_ceil,negami_upper,huh_oh_upper"
    );
    assert_eq!(lines[1], "3,5,(5+sqrt(33))/2,6,6,6");
    assert_eq!(lines[2], "4,6,(5+sqrt(41))/2,6,8,15/2");

    let o = stickbound(&[
        "bounds",
        "--cmin",
        "8",
        "--cmax",
        "8",
        "--nonalternating-prime",
    ]);
    assert_eq!(
        stdout(&o).lines().nth(1).unwrap(),
        "8,9,(5+sqrt(73))/2,7,16,12"
    );
    assert_eq!(
        stickbound(&["bounds", "--cmin", "2", "--cmax", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        stickbound(&["bounds", "--cmin", "5", "--cmax", "4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn max_extension_override() {
    let dir = TempDir::new().unwrap();
    let tre = write(&dir, "trefoil.arc", TREFOIL);
    let o = Command::new(env!("CARGO_BIN_EXE_stickbound"))
        .args(["build", &tre])
        .env("STICKBOUND_MAX_L", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    // below the smallest length, no extension is tried at all
    let o = Command::new(env!("CARGO_BIN_EXE_stickbound"))
        .args(["build", &tre])
        .env("STICKBOUND_MAX_L", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&stdout(&o));
    assert!(v["top_reduction"].as_str().unwrap().starts_with("skipped:"));
    assert_eq!(v["sticks"], 8);
}
