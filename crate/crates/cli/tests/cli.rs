use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn tww(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tww")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn ok(dir: &PathBuf, args: &[&str]) -> String {
    let o = tww(dir, args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn fig1_sequence_verifies_with_width_two() {
    let d = workdir("fig1");
    ok(&d, &["gen", "fig1", "-o", "g.txt"]);
    ok(&d, &["gen", "fig1-seq", "-o", "s.txt"]);
    assert_eq!(ok(&d, &["verify", "g.txt", "s.txt"]).trim(), "d=2");
    let json: serde_json::Value = serde_json::from_str(&ok(&d, &["--json", "verify", "g.txt", "s.txt"])).unwrap();
    assert_eq!(json["d"], 2);
    assert_eq!(json["valid"], true);
}

#[test]
fn zero_matrix_has_grid_rank_one() {
    let d = workdir("zero8");
    let mut text = String::from("matrix 8 8\n");
    for _ in 0..8 {
        text.push_str("00000000\n");
    }
    fs::write(d.join("z.txt"), text).unwrap();
    assert_eq!(ok(&d, &["gridrank", "z.txt"]).trim(), "gr=1");
}

#[test]
fn terrain_winwin_files_verify() {
    let d = workdir("terrain");
    ok(&d, &["gen", "terrain", "-n", "10", "--seed", "3", "-o", "t.txt"]);
    let out = ok(&d, &["winwin", "--class", "terrain", "--param", "lambda", "-k", "2", "t.txt", "--out", "w"]);
    assert!(out.starts_with("decision YES"), "{out}");
    assert_eq!(ok(&d, &["verify", "w.graph", "w.witness"]).trim(), "witness: ok");
    assert!(ok(&d, &["verify", "w.graph", "w.seq"]).starts_with("d="));
}

#[test]
fn matrix_certificates_close_the_loop() {
    let d = workdir("matrix");
    ok(&d, &["gen", "terrain", "-n", "10", "--seed", "3", "-o", "t.txt"]);
    fs::write(d.join("g.txt"), ok(&d, &["visibility", "--class", "terrain", "t.txt"])).unwrap();
    fs::write(d.join("o.txt"), ok(&d, &["order", "--class", "terrain", "t.txt"])).unwrap();
    fs::write(d.join("m.txt"), ok(&d, &["matrix", "g.txt", "--order", "o.txt"])).unwrap();
    assert!(ok(&d, &["gridrank", "m.txt", "--division-out", "div.txt"]).starts_with("gr="));
    assert_eq!(ok(&d, &["verify", "m.txt", "div.txt"]).trim(), "division: ok");
    fs::write(d.join("occ.txt"), ok(&d, &["pattern", "m.txt", "-k", "1"])).unwrap();
    assert_eq!(ok(&d, &["verify", "m.txt", "occ.txt"]).trim(), "pattern: ok");
    let contracted = ok(&d, &["contract", "g.txt", "--order", "o.txt", "-o", "cs.txt"]);
    let reported = contracted.lines().find(|l| l.starts_with("d=")).unwrap().to_string();
    assert_eq!(ok(&d, &["verify", "g.txt", "cs.txt"]).trim(), reported);
}

#[test]
fn interval_extraction_verifies() {
    let d = workdir("staircase");
    ok(&d, &["gen", "staircase", "-n", "2", "-o", "st.txt"]);
    ok(&d, &["extract", "interval", "st.txt", "-t", "2", "--graph-out", "g.txt", "-o", "w.txt"]);
    assert_eq!(ok(&d, &["verify", "g.txt", "w.txt"]).trim(), "witness: ok");
}

#[test]
fn winwin_exit_codes() {
    let d = workdir("comb");
    ok(&d, &["gen", "comb", "-n", "5", "-o", "c.txt"]);
    let yes = ok(&d, &["winwin", "--class", "polygon", "--param", "alpha", "-k", "4", "c.txt", "--out", "y"]);
    assert!(yes.starts_with("decision YES"));
    assert_eq!(ok(&d, &["verify", "y.graph", "y.witness"]).trim(), "independent_set: ok");
    let no = tww(&d, &["winwin", "--class", "polygon", "--param", "alpha", "-k", "9", "c.txt"]);
    assert_eq!(no.status.code(), Some(1));
    assert!(stdout(&no).starts_with("decision NO"));
}

#[test]
fn missing_pattern_exits_one() {
    let d = workdir("nopattern");
    fs::write(d.join("z.txt"), "matrix 4 4\n0000\n0000\n0000\n0000\n").unwrap();
    let o = tww(&d, &["pattern", "z.txt", "-k", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn bad_input_exits_two() {
    let d = workdir("bad");
    assert_eq!(tww(&d, &["gen", "bogus"]).status.code(), Some(2));
    fs::write(d.join("x.txt"), "not a matrix\n").unwrap();
    assert_eq!(tww(&d, &["gridrank", "x.txt"]).status.code(), Some(2));
    assert_eq!(tww(&d, &["gridrank", "absent.txt"]).status.code(), Some(2));
}

#[test]
fn tampered_sequence_is_rejected() {
    let d = workdir("tamper");
    ok(&d, &["gen", "fig1", "-o", "g.txt"]);
    fs::write(d.join("s.txt"), "a+zz\n").unwrap();
    assert_ne!(tww(&d, &["verify", "g.txt", "s.txt"]).status.code(), Some(0));
}

#[test]
fn generators_are_seed_deterministic() {
    let d = workdir("seeds");
    for family in ["terrain", "polygon", "intervals", "segments", "rdp"] {
        let a = ok(&d, &["gen", family, "-n", "9", "--seed", "11"]);
        let b = ok(&d, &["gen", family, "-n", "9", "--seed", "11"]);
        assert_eq!(a, b, "{family}");
    }
}
