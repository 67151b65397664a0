use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-morph")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn validate_reports_a_loopless_triangulation() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["generate", "lattice", "--a", "3", "--b", "3", "-o", "lattice9.tdr"]).status.success());
    let o = run(dir.path(), &["validate", "lattice9.tdr"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "valid triangulation, loopless");
}

#[test]
fn twisted_zippers_are_not_isotopic() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["generate", "zipper", "--n", "2", "-o", "zipA.tdr"]);
    run(dir.path(), &["generate", "zipper", "--n", "2", "--twist", "1", "-o", "zipB.tdr"]);
    let o = run(dir.path(), &["isotopy", "zipA.tdr", "zipB.tdr"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness dart"));
    assert_eq!(run(dir.path(), &["isotopy", "zipA.tdr", "zipA.tdr"]).status.code(), Some(0));
}

#[test]
fn morph_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["generate", "random", "--n", "12", "--seed", "4", "-o", "base.tdr"]);
    run(dir.path(), &["generate", "jitter", "base.tdr", "--seed", "1", "--magnitude", "0.03", "-o", "a.tdr"]);
    run(dir.path(), &["generate", "jitter", "base.tdr", "--seed", "2", "--magnitude", "0.03", "-o", "b.tdr"]);
    let o = run(dir.path(), &["morph", "a.tdr", "b.tdr", "-o", "m.mrf"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(dir.path(), &["verify", "a.tdr", "b.tdr", "m.mrf", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    // The same morph does not lead to a different drawing.
    assert_eq!(run(dir.path(), &["verify", "a.tdr", "base.tdr", "m.mrf"]).status.code(), Some(1));
}

#[test]
fn grid_morph_and_render() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["generate", "grid", "--a", "3", "--b", "3", "-o", "g.tdr"]);
    run(dir.path(), &["generate", "weights", "g.tdr", "--seed", "5", "-o", "w.txt"]);
    assert_eq!(run(dir.path(), &["tutte", "g.tdr", "--weights", "w.txt", "-o", "t.tdr"]).status.code(), Some(0));
    run(dir.path(), &["generate", "jitter", "g.tdr", "--seed", "3", "--magnitude", "0.05", "-o", "j.tdr"]);
    assert_eq!(run(dir.path(), &["morph", "j.tdr", "t.tdr", "-o", "m.mrf"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["verify", "j.tdr", "t.tdr", "m.mrf"]).status.code(), Some(0));
    let o = run(dir.path(), &["render", "j.tdr", "--morph", "m.mrf", "--samples", "2", "-o", "frames"]);
    assert_eq!(o.status.code(), Some(0));
    let frames = std::fs::read_dir(dir.path().join("frames")).unwrap().count();
    assert!(frames >= 2);
    assert_eq!(run(dir.path(), &["render", "j.tdr", "-o", "j.svg"]).status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("j.svg")).unwrap();
    assert_eq!(svg, std::fs::read_to_string(dir.path().join("frames/frame_0000.svg")).unwrap());
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.tdr"), "torus-drawing 1\nvertices 1\nv 0 0.5\n").unwrap();
    let o = run(dir.path(), &["validate", "bad.tdr"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(dir.path(), &["validate", "missing.tdr"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn invalid_drawing_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // Two loops drawn on top of each other.
    let text = "torus-drawing 1\nvertices 1\nv 0 0.1 0.1\nedges 2\ne 0 0 0 1 0\ne 1 0 0 1 0\nrotation\nr 0 0 2 1 3\n";
    std::fs::write(dir.path().join("bad.tdr"), text).unwrap();
    let o = run(dir.path(), &["validate", "bad.tdr"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("invalid embedding"));
}

#[test]
fn collapse_debug_command() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), &["generate", "lattice", "--a", "3", "--b", "3", "-o", "l.tdr"]);
    let o = run(dir.path(), &["collapse", "l.tdr", "--vertex", "4", "-o", "c.tdr"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("link good"));
    let v = run(dir.path(), &["validate", "c.tdr"]);
    assert_eq!(v.status.code(), Some(0));
}
