use std::fs;
use std::process::{Command, Output};

fn vdw(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vdw"));
    cmd.args(args).env("RUST_LOG", "off").env_remove("VDW_CAP");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(
        vdw(
            &["rabung", "--prime", "11", "--colors", "2", "--k", "4"],
            &[]
        )
        .status
        .code(),
        Some(0)
    );
    // Missing argument and unknown subcommand are usage errors.
    assert_eq!(
        vdw(&["rabung", "--prime", "11"], &[]).status.code(),
        Some(2)
    );
    assert_eq!(vdw(&["frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(vdw(&["--help"], &[]).status.code(), Some(0));
    // Failed preconditions.
    let out = vdw(
        &["rabung", "--prime", "11", "--colors", "2", "--k", "3"],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("smallest valid k is 4"));
    assert_eq!(
        vdw(
            &["rabung", "--prime", "11", "--colors", "3", "--k", "4"],
            &[]
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        vdw(&["bounds", "--formula", "nope", "--args", "1"], &[])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn result_line_is_last() {
    let out = vdw(
        &["bruteforce", "--k", "3", "--colors", "2", "--limit", "20"],
        &[],
    );
    assert_eq!(
        stdout(&out).lines().last(),
        Some("RESULT kind=bruteforce k=3 r=2 W=9")
    );
}

#[test]
fn cap_from_environment() {
    let args = ["rabung", "--prime", "11", "--colors", "2", "--k", "4"];
    assert!(stdout(&vdw(&args, &[])).contains("verified=direct"));
    assert!(stdout(&vdw(&args, &[("VDW_CAP", "10")])).contains("verified=shortcut"));
    // The flag wins over the environment.
    let mut with_flag = args.to_vec();
    with_flag.extend(["--cap", "100"]);
    assert!(stdout(&vdw(&with_flag, &[("VDW_CAP", "10")])).contains("verified=direct"));
}

#[test]
fn verify_reports_witness_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.cert");
    let bad = dir.path().join("bad.cert");
    let p = |x: &std::path::Path| x.to_str().unwrap().to_string();
    assert!(vdw(
        &[
            "rabung",
            "--prime",
            "11",
            "--colors",
            "2",
            "--k",
            "4",
            "--emit",
            &p(&good)
        ],
        &[]
    )
    .status
    .success());
    for scanner in ["run", "naive"] {
        let out = vdw(
            &[
                "verify",
                "--cert",
                &p(&good),
                "--k",
                "4",
                "--scanner",
                scanner,
            ],
            &[],
        );
        assert!(stdout(&out).contains("status=ok"), "{scanner}");
    }
    fs::write(&bad, "vdwcert 1\nk=3 r=2 n=5 kind=manual meta=\n00000\n").unwrap();
    let out = vdw(&["verify", "--cert", &p(&bad), "--k", "3"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("start=0 spacing=1"));
    let out = vdw(
        &[
            "verify",
            "--cert",
            &p(&good),
            "--k",
            "4",
            "--scanner",
            "bogus",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("naive"));
}
