//! Criterion 8: identical arguments produce byte-identical primary output
//! (stdout and artifact files), and exit codes follow the contract.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Output};

fn criterion(name: &str, f: impl FnOnce() + UnwindSafe) {
    match catch_unwind(f) {
        Ok(()) => println!("ACCEPTANCE {}: PASS", name),
        Err(e) => {
            println!("ACCEPTANCE {}: FAIL", name);
            resume_unwind(e);
        }
    }
}

fn ufh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ufh"))
        .args(args)
        .output()
        .expect("failed to spawn ufh")
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("ufh-determinism");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn assert_identical_reruns(args: &[&str]) {
    let a = ufh(args);
    let b = ufh(args);
    assert_eq!(
        a.status.code(),
        b.status.code(),
        "exit codes differ for {:?}",
        args
    );
    assert_eq!(a.stdout, b.stdout, "stdout differs between reruns of {:?}", args);
}

#[test]
fn c8_determinism() {
    criterion("C8 determinism", || {
        let triangle = tmp("triangle.txt");
        std::fs::write(&triangle, "3 2\n0 1\n0 2\n1 2\n").unwrap();
        let tri = triangle.to_str().unwrap();

        // deterministic stdout across reruns, including seeded subcommands
        assert_identical_reruns(&["check", tri, "--union-free", "2", "--json"]);
        assert_identical_reruns(&["extremal", "u", "--n", "5", "--r", "2", "--t", "2"]);
        assert_identical_reruns(&[
            "pack", "--template", "builtin:shadow:2,2", "--n", "10", "--e", "6", "--seed", "9",
            "--json",
        ]);
        assert_identical_reruns(&[
            "endtoend", "--t", "3", "--k", "2", "--a", "2", "--n", "12", "--seed", "7",
        ]);
        assert_identical_reruns(&["table", "--n-max", "5", "--r", "2", "--t", "2"]);

        // artifact files are byte-identical too
        let out1 = tmp("e2e-1.json");
        let out2 = tmp("e2e-2.json");
        for out in [&out1, &out2] {
            let o = ufh(&[
                "endtoend", "--t", "3", "--k", "2", "--a", "2", "--n", "12", "--seed", "7",
                "--json", "--out", out.to_str().unwrap(),
            ]);
            assert!(o.status.success(), "endtoend failed: {:?}", o);
        }
        assert_eq!(
            std::fs::read(&out1).unwrap(),
            std::fs::read(&out2).unwrap(),
            "artifact files differ between identical runs"
        );

        // exit-code contract: 0 pass, 1 property fails with witness,
        // 2 usage/parse error
        let pass = ufh(&["check", tri, "--cover-free", "1"]);
        assert_eq!(pass.status.code(), Some(0));
        let fail = ufh(&["check", tri, "--union-free", "2"]);
        assert_eq!(fail.status.code(), Some(1));
        let stdout = String::from_utf8(fail.stdout).unwrap();
        assert!(stdout.contains("FAIL"), "expected FAIL verdict: {}", stdout);

        let bad = tmp("bad.txt");
        std::fs::write(&bad, "4 2\n0 1\nnot an edge\n").unwrap();
        let parse = ufh(&["check", bad.to_str().unwrap(), "--union-free", "2"]);
        assert_eq!(parse.status.code(), Some(2));
    });
}
