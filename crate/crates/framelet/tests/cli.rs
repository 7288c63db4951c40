use std::path::PathBuf;
use std::process::{Command, Output};

use framelet::bankfile::parse_bank;
use framelet_core::analysis::verify_tight;

fn bank(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("banks")
        .join(format!("{name}.bank"))
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_framelet")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("framelet-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", &bank("bspline2-initial")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("tight: yes\n"));
    let bad = run(&["verify", &bank("bspline2-n2-printed")]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(run(&["verify", &bank("bspline2-a")]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/x.bank"]).status.code(), Some(3));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", &bank("bspline4-n0"), "--tol", "1e-4"]).status.code(), Some(0));
}

#[test]
fn analyze_reports_separation() {
    let o = run(&["analyze", &bank("sixtap-n0")]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("d_B: 0.444929"), "{s}");
    assert!(s.contains("d_R: 1.7088545977"), "{s}");
    let d = tmp("analyze");
    let csv = d.join("curve.csv");
    let o = run(&["analyze", &bank("bspline2-n0"), "--grid", "64", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows = framelet::export::parse_csv(&std::fs::read_to_string(csv).unwrap()).unwrap();
    assert_eq!(rows.len(), 65);
    assert!(rows.iter().all(|r| r.len() == 3 && r[2] >= r[1] - 1e-9));
}

#[test]
fn lowerbound_on_lowpass_only() {
    let d = tmp("lowerbound");
    let csv = d.join("a.csv");
    let o = run(&["lowerbound", &bank("interp4-a"), "--grid", "32", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("d_A: 0.0371"));
    let rows = framelet::export::parse_csv(&std::fs::read_to_string(csv).unwrap()).unwrap();
    for r in rows {
        assert!((r[2] * r[2] + r[3] * r[3] - r[1]).abs() < 1e-10);
    }
}

#[test]
fn construct_writes_a_tight_bank() {
    let o = run(&["construct", &bank("haar-a")]);
    assert_eq!(o.status.code(), Some(0));
    let f = parse_bank(&stdout(&o)).unwrap();
    assert_eq!(f.get("b1").unwrap().coeffs().len(), 2);
    assert!(f.get("b2").unwrap().is_zero());

    let d = tmp("construct");
    let out = d.join("b.bank");
    let o = run(&["construct", &bank("bspline4-a"), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let f = parse_bank(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(verify_tight(&f.to_bank().unwrap(), 1e-9).ok);

    let o = run(&["construct", &bank("bspline2-a"), "--all", "--out", d.join("all").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(d.join("all")).unwrap().count(), 4);

    // eps=0, s1=0, s2=0 has no solution for this filter
    let o = run(&["construct", &bank("bspline2-a"), "--eps", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn optimize_is_deterministic() {
    let args = ["optimize", &bank("bspline2-initial"), "--order", "1", "--starts", "4", "--seed", "9"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let f = parse_bank(&stdout(&a)).unwrap();
    assert!(f.get("bp").is_some() && f.get("bn").is_some());
    assert!(verify_tight(&f.to_bank().unwrap(), 1e-9).ok);
    let o = run(&["optimize", &bank("bspline2-initial"), "--order", "0", "--real", "--complex"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["optimize", &bank("bspline2-n2-printed"), "--order", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn render_writes_all_images() {
    let d = tmp("render");
    let o = run(&["render", &bank("bspline2-n0"), "--levels", "4", "--outdir", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let names = [
        "phi_phi", "phi_r", "phi_i", "r_phi", "i_phi", "rr_minus_ii", "rr_plus_ii", "ri_minus_ir", "ri_plus_ir",
    ];
    for n in names {
        let img = std::fs::read(d.join(format!("{n}.pgm"))).unwrap();
        assert!(img.starts_with(b"P5\n# norm min="));
    }
    let o = run(&["render", &bank("haar"), "--levels", "3", "--format", "csv", "--outdir", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let psi = framelet::export::parse_csv(&std::fs::read_to_string(d.join("psi_p.csv")).unwrap()).unwrap();
    assert!(psi.iter().all(|r| [1.0, -1.0, 0.0].contains(&r[1]) && r[2] == 0.0));
}
