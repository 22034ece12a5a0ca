use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_starcomb"))
}

#[test]
fn gen_emits_the_small_initial_block() {
    let out = bin()
        .args([
            "gen", "--n", "3", "--shift", "1", "--output", "flips", "--limit", "10",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let flips: Vec<&str> = std::str::from_utf8(&out.stdout)
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(flips, ["6", "2", "5", "3", "4", "6", "2", "1", "3", "5"]);
}

#[test]
fn gen_verify_round_trip() {
    for (n, shift) in [(2usize, 1usize), (4, 1), (5, 3), (7, 2)] {
        let gen = bin()
            .args(["gen", "--n", &n.to_string(), "--shift", &shift.to_string()])
            .output()
            .unwrap();
        assert!(gen.status.success());
        let mut verify = bin()
            .args([
                "verify",
                "--n",
                &n.to_string(),
                "--shift",
                &shift.to_string(),
            ])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        verify.stdin.take().unwrap().write_all(&gen.stdout).unwrap();
        let out = verify.wait_with_output().unwrap();
        assert!(out.status.success(), "n = {n}, shift = {shift}");
        assert_eq!(std::str::from_utf8(&out.stdout).unwrap().trim(), "ok");
    }
}

#[test]
fn verify_flags_violations_with_exit_one() {
    let gen = bin()
        .args(["gen", "--n", "4", "--shift", "1"])
        .output()
        .unwrap();
    let mut lines: Vec<&[u8]> = gen.stdout.split(|&b| b == b'\n').collect();
    lines.swap(3, 5);
    let mangled = lines.join(&b'\n');
    let mut verify = bin()
        .args(["verify", "--n", "4", "--shift", "1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    verify.stdin.take().unwrap().write_all(&mangled).unwrap();
    let out = verify.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_flags_exit_two() {
    // shift not coprime to 2n+1
    let out = bin()
        .args(["gen", "--n", "4", "--shift", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // malformed start
    let out = bin()
        .args(["gen", "--n", "4", "--start", "1111"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // enumeration cap
    let out = bin()
        .args(["tree", "--n", "6"])
        .env("MLC_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn switches_report_matches_known_cases() {
    let out = bin().args(["switches", "--n", "16"]).output().unwrap();
    assert_eq!(
        std::str::from_utf8(&out.stdout).unwrap().trim(),
        "s=18, plan=[tau_ndz d=11], s'=7"
    );
    let out = bin().args(["switches", "--n", "5"]).output().unwrap();
    assert_eq!(
        std::str::from_utf8(&out.stdout).unwrap().trim(),
        "s=9, plan=[], s'=9"
    );
}

#[test]
fn factor_and_tree_have_expected_shapes() {
    let out = bin()
        .args(["factor", "--n", "4", "--format", "text"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let lines = std::str::from_utf8(&out.stdout).unwrap().lines().count();
    assert_eq!(lines, 3); // three plane trees at n = 4

    let out = bin()
        .args(["tree", "--n", "5", "--format", "dot"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::str::from_utf8(&out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches(" -> ").count(), 5); // five arcs at n = 5

    let out = bin()
        .args(["gen", "--n", "2", "--output", "blocks"])
        .output()
        .unwrap();
    let text = std::str::from_utf8(&out.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert_eq!(text.lines().next().unwrap().trim(), "5 1 3 5");
}
