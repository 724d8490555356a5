#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

/// One golden file per case; every shipped input appears at least once.
pub const CASES: &[Case] = &[
    Case {
        name: "frob_kz2_genus2",
        args: &["frob", "--in", "data/kz2.frob", "--genus", "2"],
        exit: 0,
    },
    Case {
        name: "frob_kz3_axioms",
        args: &[
            "frob",
            "--in",
            "data/kz3.frob",
            "--emit",
            "axioms",
            "--genus",
            "3",
        ],
        exit: 0,
    },
    Case {
        name: "frob_kz2_word",
        args: &[
            "frob",
            "--in",
            "data/kz2.frob",
            "--word",
            "copants; pants",
            "--format",
            "machine",
        ],
        exit: 0,
    },
    Case {
        name: "double_z2_s",
        args: &["double", "--group", "data/z2.grp", "--emit", "s"],
        exit: 0,
    },
    Case {
        name: "double_z3_st",
        args: &["double", "--group", "data/z3.grp", "--approx"],
        exit: 0,
    },
    Case {
        name: "double_z4_fusion",
        args: &["double", "--group", "data/z4.grp", "--emit", "fusion"],
        exit: 0,
    },
    Case {
        name: "double_s3_all",
        args: &["double", "--group", "data/s3.grp", "--emit", "s,t,fusion"],
        exit: 0,
    },
    Case {
        name: "double_q8_machine",
        args: &["double", "--group", "data/q8.grp", "--format", "machine"],
        exit: 0,
    },
    Case {
        name: "xmod_z3s3_all",
        args: &[
            "xmod",
            "--in",
            "data/z3s3.xmod",
            "--emit",
            "simples,st,center,modularize",
        ],
        exit: 0,
    },
    Case {
        name: "xmod_s3id_machine",
        args: &[
            "xmod",
            "--in",
            "data/s3id.xmod",
            "--emit",
            "st,center",
            "--format",
            "machine",
        ],
        exit: 0,
    },
    Case {
        name: "eqdw_s3_all",
        args: &[
            "eqdw",
            "--sequence",
            "data/s3.seq",
            "--emit",
            "sectors,cocycle,orbifold-report",
        ],
        exit: 0,
    },
    Case {
        name: "eqdw_z4_maximal",
        args: &[
            "eqdw",
            "--sequence",
            "data/z4.seq",
            "--emit",
            "sectors,cocycle,orbifold-report",
            "--section",
            "maximal",
        ],
        exit: 0,
    },
    Case {
        name: "hopf_sweedler_all",
        args: &[
            "hopf",
            "--in",
            "data/sweedler.hopf",
            "--emit",
            "axioms,integrals,radford",
        ],
        exit: 0,
    },
    Case {
        name: "hopf_taft3_machine",
        args: &[
            "hopf",
            "--in",
            "data/taft3.hopf",
            "--emit",
            "integrals,radford",
            "--format",
            "machine",
        ],
        exit: 0,
    },
    Case {
        name: "pdual_sweedler",
        args: &[
            "pdual",
            "--hopf",
            "data/sweedler.hopf",
            "--proj",
            "data/sweedler.proj",
            "--pairing",
            "data/sweedler.pair",
            "--emit",
            "result,involution-report",
        ],
        exit: 0,
    },
    Case {
        name: "pdual_taft3_machine",
        args: &[
            "pdual",
            "--hopf",
            "data/taft3.hopf",
            "--proj",
            "data/taft3.proj",
            "--pairing",
            "data/taft3.pair",
            "--format",
            "machine",
        ],
        exit: 0,
    },
];

pub fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.out"))
}

pub fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

pub fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tftalg"));
    cmd.current_dir(workspace_root())
        .args(args)
        .env_remove("TFTALG_MAX_ORDER");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

pub fn run_with_threads(case: &Case, threads: usize) -> Output {
    let mut args: Vec<&str> = case.args.to_vec();
    let t = threads.to_string();
    args.push("--threads");
    args.push(&t);
    run(&args)
}

/// Compares a case against its golden file, writing it instead when `TFTALG_BLESS` is set.
/// Returns a description of the first mismatch.
pub fn check_golden(case: &Case) -> Result<(), String> {
    let first = run_with_threads(case, 1);
    let second = run_with_threads(case, 4);
    let code = first.status.code().unwrap_or(-1);
    if code != case.exit {
        return Err(format!(
            "{}: exit {code}, expected {}; stderr: {}",
            case.name,
            case.exit,
            String::from_utf8_lossy(&first.stderr)
        ));
    }
    if first.stdout != second.stdout || second.status.code() != Some(code) {
        return Err(format!(
            "{}: output differs between 1 and 4 threads",
            case.name
        ));
    }
    let third = run_with_threads(case, 1);
    if third.stdout != first.stdout {
        return Err(format!("{}: output differs between two runs", case.name));
    }
    let path = golden_path(case.name);
    if std::env::var_os("TFTALG_BLESS").is_some() {
        std::fs::write(&path, &first.stdout).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != first.stdout {
        return Err(format!(
            "{}: output differs from {}",
            case.name,
            path.display()
        ));
    }
    Ok(())
}
