use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilgeom")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

#[test]
fn geodesic_line_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o =
        run(&["geodesic", "--p0", "0,0,0", "--v0", "1,0,0", "--tmax", "5", "--step", "1e-3", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# cfg geodesic"));
    assert_eq!(lines.next().unwrap(), "t,x,y,z,dx,dy,dz,J");
    assert_eq!(lines.count(), 5001);
    assert!(stdout(&o).contains("horizontal-line-deviation"));
}

#[test]
fn geodesic_matches_closed_form_and_rejects_zero_velocity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o = run(&["geodesic", "--v0", "1,0,1", "--tmax", "6.283185307179586", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("ok   closed-form-deviation"));
    assert_eq!(code(&run(&["geodesic", "--v0", "0,0,0"])), 2);
    assert_eq!(code(&run(&["geodesic", "--v0", "1,0"])), 2);
    assert_eq!(code(&run(&["geodesic", "--v0", "1,0,0", "--step", "0"])), 2);
}

#[test]
fn negative_coordinates_parse() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    let o = run(&["geodesic", "--p0", "-1,-2,0.5", "--v0", "-0.3,0.4,-1", "--tmax", "1", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn residual_scans() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = run(&["residual", "--surface", "hpb", "--grid", "21", "--domain", "-1,1,-1,1", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 2 + 21 * 21);
    assert_eq!(text.lines().nth(1).unwrap(), "x,y,riem_residual,lorentz_residual,diff_eq7,laplacian,causal");

    let o = run(&[
        "residual",
        "--surface",
        "helicoid:2",
        "--grid",
        "21",
        "--domain",
        "0.5,2,-1,1",
        "--out",
        path_str(&out),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    // To stdout: every residual column of the plane is exactly zero.
    let o = run(&["residual", "--surface", "plane"]);
    assert_eq!(code(&o), 0);
    for line in stdout(&o).lines().skip(2) {
        let f: Vec<&str> = line.split(',').collect();
        assert!(f[2..6].iter().all(|v| v.parse::<f64>().unwrap() == 0.0), "{line}");
    }

    assert_eq!(code(&run(&["residual", "--surface", "vplane", "--out", path_str(&out)])), 0);
    assert_eq!(code(&run(&["residual", "--surface", "cone"])), 2);
}

#[test]
fn residual_fails_on_a_domain_crossing_the_helicoid_axis() {
    let o = run(&["residual", "--surface", "helicoid:2", "--domain", "-1,1,-1,1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn lemma25_reports() {
    let o = run(&["lemma25"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("C5 closed=5.000000000000e-1"));
    assert!(s.contains("ok   htilde-witness"));

    let o = run(&["lemma25", "--h0", "0"]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o).contains("htilde-witness"));

    let o = run(&["lemma25", "--sweep", "50"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("agreements 50/50"));
}

#[test]
fn limit_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l.csv");
    let o = run(&["limit", "--lambdas", "1,0.25,0.0625", "--grid", "21", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).matches("ratio[").count(), 2);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().nth(2).unwrap().ends_with(','));

    let o = run(&["limit", "--lambdas", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 3);

    assert_eq!(code(&run(&["limit", "--lambdas", "1,0"])), 2);
    assert_eq!(code(&run(&["limit", "--lambdas", "0.25,1"])), 2);
}

#[test]
fn mesh_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.obj");
    assert_eq!(code(&run(&["mesh", "--surface", "helicoid:2", "--grid", "64", "--out", path_str(&out)])), 0);
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 64 * 64);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 2 * 63 * 63);

    let out = dir.path().join("p.obj");
    assert_eq!(code(&run(&["mesh", "--surface", "hpb", "--grid", "16", "--out", path_str(&out)])), 0);
    for line in fs::read_to_string(&out).unwrap().lines().filter(|l| l.starts_with("v ")) {
        let v: Vec<f64> = line[2..].split(' ').map(|x| x.parse().unwrap()).collect();
        assert!((v[2] + 0.5 * v[0] * v[1]).abs() < 1e-9, "{line}");
    }

    assert_eq!(code(&run(&["mesh", "--surface", "hpb"])), 2);
    assert_ne!(code(&run(&["mesh", "--surface", "helicoid:0", "--out", path_str(&out)])), 0);
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 3] = [
        &["geodesic", "--v0", "0.3,-0.2,0.7", "--tmax", "2"],
        &["residual", "--surface", "helicoid:1.5", "--domain", "0.5,2,-1,1"],
        &["limit", "--lambdas", "1,0.25"],
    ];
    for args in cases {
        let files: Vec<Vec<u8>> = (0..2)
            .map(|k| {
                let out = dir.path().join(format!("{}{k}.csv", args[0]));
                let mut full = args.to_vec();
                full.extend(["--out", path_str(&out)]);
                assert_eq!(code(&run(&full)), 0, "{full:?}");
                fs::read(&out).unwrap()
            })
            .collect();
        assert_eq!(files[0], files[1], "{args:?}");
    }
}

#[test]
fn verify_all_exit_codes() {
    let o = run(&["verify-all"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS all 9 suites"));

    let o = run(&["verify-all", "--seed", "43"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    let o = run(&["verify-all", "--tamper-connection"]);
    assert_eq!(code(&o), 1);
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.starts_with("FAIL") && last.contains("connection-compatibility"), "{last}");

    assert_eq!(code(&run(&["verify-all", "--tol", "bogus=1"])), 2);
    // A tolerance override can fail a suite.
    assert_eq!(code(&run(&["verify-all", "--tol", "limit_ratio=0.6:0.65"])), 1);
}
