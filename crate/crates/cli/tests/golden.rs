//! Golden-file tests: each case runs one invocation and compares stdout, stderr and the exit
//! code with the files under `tests/golden/expected`. Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;

#[path = "common/golden_cases.rs"]
mod golden_cases;

use golden_cases::CASES;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn invoke(args: &[&str]) -> torquad::Outcome {
    let input = golden_dir().join("input");
    let argv = std::iter::once("torquad".to_string()).chain(args.iter().map(|a| {
        if a.ends_with(".json") {
            input.join(a).to_string_lossy().into_owned()
        } else {
            a.to_string()
        }
    }));
    torquad::run(argv.collect::<Vec<_>>())
}

fn render(out: &torquad::Outcome) -> String {
    format!("exit: {}\nstdout:\n{}stderr:\n{}", out.code, out.stdout, out.stderr)
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, args) in CASES {
        let got = render(&invoke(args));
        let path = golden_dir().join("expected").join(format!("{name}.txt"));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_default();
        if got != want {
            mismatches.push(format!("{name}:\n--- expected\n{want}--- got\n{got}"));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn output_is_byte_stable() {
    for (name, args) in CASES {
        assert_eq!(invoke(args), invoke(args), "{name}");
    }
}

#[test]
fn errors_never_emit_partial_payloads() {
    for (name, args) in CASES {
        let out = invoke(args);
        if out.code != 0 {
            assert!(out.stdout.is_empty(), "{name}");
            assert!(out.stderr.starts_with("error: "), "{name}");
        } else {
            assert!(out.stderr.is_empty(), "{name}");
            assert!(serde_json::from_str::<serde_json::Value>(&out.stdout).is_ok(), "{name}");
        }
    }
}

#[test]
fn canonical_files_round_trip() {
    for file in ["z2_quarter.json", "hyperbolic.json", "mixed.json", "degenerate_quad.json"] {
        let text = std::fs::read_to_string(golden_dir().join("input").join(file)).unwrap();
        let once = torquad::format::canonical_quad(&text).unwrap();
        assert_eq!(torquad::format::canonical_quad(&once).unwrap(), once, "{file}");
    }
    let canonical = r#"{"orders":[2,4],"b":[["0","1/2"],["1/2","1/4"]],"q":["1/2","1/8"],"divisible_rank":1,"kernel_hom":[2]}"#;
    assert_eq!(torquad::format::canonical_quad(canonical).unwrap(), canonical);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_torquad");
    let input = golden_dir().join("input");
    let status = |args: &[&str]| {
        std::process::Command::new(bin)
            .args(args.iter().map(|a| if a.ends_with(".json") { input.join(a) } else { PathBuf::from(a) }))
            .output()
            .unwrap()
    };
    let ok = status(&["isomorphic", "z2_quarter.json", "z2_three_quarters.json"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "{\"isomorphic\":false,\"reason\":\"gauss\"}\n");
    assert_eq!(status(&["discriminant", "bad_char.json"]).status.code(), Some(1));
    assert_eq!(status(&["gauss", "--max-group-order", "100", "large.json"]).status.code(), Some(2));
    assert_eq!(status(&["no-such-command"]).status.code(), Some(1));
}
