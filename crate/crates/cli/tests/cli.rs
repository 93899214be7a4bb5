use std::path::Path;
use std::process::{Command, Output};

fn osplpp(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_osplpp"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("run osplpp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn enumerate_counts_and_cache_validation() {
    let dir = tempfile::tempdir().unwrap();
    let o = osplpp(dir.path(), &["enumerate", "syt", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("count=16 Created"));
    let file = dir.path().join(".osplpp-cache/syt-n4.txt");
    assert_eq!(std::fs::read_to_string(&file).unwrap().lines().count(), 17);

    assert!(stdout(&osplpp(dir.path(), &["enumerate", "syt", "--n", "4"])).contains("Reused"));

    // a truncated file is caught by the record count, not silently reused
    let text = std::fs::read_to_string(&file).unwrap();
    let truncated: Vec<&str> = text.lines().take(10).collect();
    std::fs::write(&file, truncated.join("\n")).unwrap();
    let o = osplpp(dir.path(), &["enumerate", "syt", "--n", "4"]);
    assert!(stdout(&o).contains("Rebuilt"), "{}", stdout(&o));
    assert_eq!(std::fs::read_to_string(&file).unwrap(), text);

    let o = osplpp(dir.path(), &["enumerate", "syt", "--n", "2"]);
    assert!(stdout(&o).contains("count=1 "));
    let o = osplpp(dir.path(), &["enumerate", "networks", "--n", "5"]);
    assert!(stdout(&o).contains("count=768 "));
    assert_eq!(osplpp(dir.path(), &["enumerate", "syt", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn verify_targets() {
    let dir = tempfile::tempdir().unwrap();
    let o = osplpp(dir.path(), &["verify", "identity", "--n", "4", "--out", "r.json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(json["config"]["n"], 4);
    assert_eq!(json["config"]["command"], "verify");
    assert_eq!(json["report"]["verdict"], "PASS");

    assert_eq!(osplpp(dir.path(), &["verify", "eg", "--n", "5"]).status.code(), Some(0));

    let o = osplpp(dir.path(), &["verify", "thm22", "--bernoulli", "--shape", "2,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("[EXPECTED-INEQUAL]"));
    assert!(text.contains("v=[1, 3, 1]: P_L=0 P_L*=1/16"));

    assert_eq!(osplpp(dir.path(), &["verify", "identity"]).status.code(), Some(2));
    assert_eq!(osplpp(dir.path(), &["verify", "nothing", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn simulate_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&osplpp(dir.path(), &["simulate", "osp", "--n", "2", "--replicas", "10", "--seed", "7"]));
    let b = stdout(&osplpp(dir.path(), &["simulate", "osp", "--n", "2", "--replicas", "10", "--seed", "7", "--workers", "3"]));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 11);
    assert_eq!(a.lines().next(), Some("replica,vector,c1,max"));

    let g = stdout(&osplpp(dir.path(), &["simulate", "growth", "--n", "6", "--replicas", "2"]));
    assert_eq!(g.lines().next(), Some("replica,vector,c1,c2,c3,c4,c5,max"));

    let l = stdout(&osplpp(dir.path(), &["simulate", "lpp", "--n", "8", "--replicas", "3"]));
    let tags: Vec<&str> = l.lines().skip(1).map(|r| r.split(',').nth(1).unwrap()).collect();
    assert_eq!(tags, ["V", "W", "V", "W", "V", "W"]);
}

#[test]
fn compare_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |args: &[&str]| osplpp(dir.path(), args);
    assert_eq!(run(&["simulate", "osp", "--n", "6", "--replicas", "4000", "--seed", "1", "--out", "u.csv"]).status.code(), Some(0));
    assert!(dir.path().join("u.csv.json").exists());
    run(&["simulate", "growth", "--n", "6", "--replicas", "4000", "--seed", "2", "--out", "v.csv"]);
    run(&["simulate", "lpp", "--n", "8", "--replicas", "4000", "--seed", "3", "--out", "vw.csv"]);
    run(&["simulate", "osp", "--n", "4", "--replicas", "100", "--out", "u4.csv"]);

    let o = run(&["compare", "u.csv", "v.csv", "--out", "c.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = run(&["compare", "vw.csv", "vw.csv", "--lhs-vector", "V", "--rhs-vector", "W"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("lin:2=1,5=2: p"));

    let o = run(&["compare", "u.csv", "u.csv", "--functional", "max", "--functional", "c3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("max: D                                       0.000000e0"));

    // doubling every value changes the law: exit 1
    let text = std::fs::read_to_string(dir.path().join("v.csv")).unwrap();
    let mut doubled = String::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            doubled.push_str(line);
        } else {
            let f: Vec<String> = line
                .split(',')
                .enumerate()
                .map(|(j, x)| if j < 2 { x.to_string() } else { (2.0 * x.parse::<f64>().unwrap()).to_string() })
                .collect();
            doubled.push_str(&f.join(","));
        }
        doubled.push('\n');
    }
    std::fs::write(dir.path().join("v2.csv"), doubled).unwrap();
    assert_eq!(run(&["compare", "v.csv", "v2.csv"]).status.code(), Some(1));
    assert_eq!(run(&["compare", "u.csv", "u4.csv"]).status.code(), Some(2));
    assert_eq!(run(&["compare", "u.csv", "missing.csv"]).status.code(), Some(2));
}
