use std::path::PathBuf;
use std::process::Command;

fn verify(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("run verify");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("yqn-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn rmatrix_with_controls_exits_zero() {
    let dir = scratch("rmatrix");
    let report = dir.join("out.json");
    let (code, stdout) = verify(&["rmatrix", "--N", "1", "--negative-controls", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("FAIL (expected)"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["schema"], "yqn-verify-report/1");
    assert_eq!(v["config"]["negative_controls"], "true");
    let recs = v["records"].as_array().unwrap();
    assert!(recs.iter().all(|r| r["anchor"].as_str().is_some_and(|a| !a.is_empty())));
    assert!(recs.iter().any(|r| r["control"] == true && r["status"] == "fail" && r["witness"].is_string()));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_byte_identical() {
    let dir = scratch("determinism");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for p in [&a, &b] {
        let (code, _) = verify(&["sergeev", "--n", "2", "--seed", "7", "--report", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(verify(&["yangian", "--points", "1/0"]).0, 2);
    assert_eq!(verify(&["rmatrix", "--checks", "gram"]).0, 2);
    assert_eq!(verify(&["drinfeld", "--module", "principal:2"]).0, 2);
    assert_eq!(verify(&["pairing", "--max-degree", "0"]).0, 2);
    assert_eq!(verify(&["all", "--config", "/nonexistent/yqn.conf"]).0, 2);
}

#[test]
fn flags_override_config_file() {
    let dir = scratch("config");
    let conf = dir.join("run.conf");
    std::fs::write(&conf, "N = 2\npoints = 3\nchecks = comult\n").unwrap();
    let report = dir.join("r.json");
    let (code, _) = verify(&["yangian", "--config", conf.to_str().unwrap(), "--N", "1", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["config"]["N"], "1");
    assert_eq!(v["config"]["points"], "3/1");
    assert_eq!(v["records"].as_array().unwrap().len(), 1);
    std::fs::remove_dir_all(dir).unwrap();
}

/// The search finds neither a submodule nor an irreducibility witness for
/// this module, which must not count as a pass.
#[test]
fn inconclusive_result_exits_one() {
    let (code, stdout) = verify(&["drinfeld", "--module", "pullback:m=1,n=1,M=1", "--checks", "irreducible"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("INCONCLUSIVE"));
}

#[test]
fn dump_writes_module_bundles() {
    let dir = scratch("dump");
    let dump = dir.join("d.json");
    let (code, _) = verify(&["drinfeld", "--module", "principal:z=2", "--checks", "prop52", "--dump", dump.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&dump).unwrap()).unwrap();
    let m = &v["drinfeld"]["modules"][0];
    assert_eq!(m["module"]["dim"], 2);
    assert_eq!(m["image"]["dim"], 2);
    assert_eq!(m["module"]["c"][0], serde_json::json!([[0, 1, "-1/1"], [1, 0, "1/1"]]));
    std::fs::remove_dir_all(dir).unwrap();
}
