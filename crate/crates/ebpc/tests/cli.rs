//! End-to-end checks of the command-line tool through its real binary.

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ebpc"))
        .args(args)
        .output()
        .expect("spawn ebpc binary")
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn gen_compress_verify_decompress_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = dir.path().join("t.tnsr");
    let packed = dir.path().join("t.ebpc");
    let back = dir.path().join("back.tnsr");

    let out = run(&[
        "gen", "--output", s(&tensor), "--shape", "1,2,8,8", "--sparsity", "0.5", "--seed", "3",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["compress", "-i", s(&tensor), "-o", s(&packed)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = run(&["verify", "-i", s(&tensor)]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));

    let out = run(&["decompress", "-i", s(&packed), "-o", s(&back)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let original = std::fs::read(&tensor).unwrap();
    let decoded = std::fs::read(&back).unwrap();
    // decompress emits a flat (1,1,1,N) tensor, so compare payloads only
    assert_eq!(original[24..], decoded[24..]);
}

#[test]
fn corrupted_magic_is_a_clean_error() {
    let dir = tempfile::tempdir().unwrap();
    let tensor = dir.path().join("t.tnsr");
    let packed = dir.path().join("t.ebpc");
    let back = dir.path().join("back.tnsr");

    assert!(run(&["gen", "--output", s(&tensor), "--shape", "1,1,16,16", "--seed", "1"])
        .status
        .success());
    assert!(run(&["compress", "-i", s(&tensor), "-o", s(&packed)]).status.success());

    let mut bytes = std::fs::read(&packed).unwrap();
    bytes[0] ^= 0xFF;
    std::fs::write(&packed, bytes).unwrap();

    let out = run(&["decompress", "-i", s(&packed), "-o", s(&back)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert!(!back.exists(), "no partial output on failure");
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["compress", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}
