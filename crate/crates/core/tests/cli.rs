use std::process::Command;

fn combfield(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_combfield"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(combfield(&["sequence", "bell", "--n", "3"]), (0, "[\"1\",\"1\",\"2\",\"5\"]\n".into()));
    assert_eq!(combfield(&["sequence", "catalan", "--n", "3"]).0, 2);
    assert_eq!(combfield(&["normal-order", "aQ"]).0, 2);
    assert_eq!(combfield(&["verify", "counting"]).0, 0);
}

#[test]
fn enumeration_cap_from_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_combfield"))
            .args(["graphs", "--n", "3", "--model", "kerr2", "--emit", "total"])
            .env("COMBFIELD_ENUM_CAP", cap)
            .output()
            .unwrap()
    };
    let capped = run("2");
    assert_eq!(capped.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("cap"));
    let allowed = run("3");
    assert_eq!(String::from_utf8(allowed.stdout).unwrap(), "{\"n\":3,\"total\":\"20\"}\n");
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["verify", "all"][..],
        &["graphs", "--n", "3", "--model", "sf2"],
        &["phi4", "--a", "1", "--g", "0.1", "--nmax", "40", "--emit", "csv"],
    ] {
        assert_eq!(combfield(args), combfield(args));
    }
}
