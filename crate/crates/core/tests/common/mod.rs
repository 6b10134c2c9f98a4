#![allow(dead_code)]

pub mod dot_reader;
pub mod latex_reader;
pub mod oracles;
pub mod random_expr;

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn exgen_bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_exgen"))
}

pub fn exgen(args: &[&str]) -> Output {
    Command::new(exgen_bin()).args(args).output().expect("exgen runs")
}

/// A fresh scratch directory under the target dir.
pub fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

/// Shell-quotes a path for use inside `--run`.
pub fn sh_quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', "'\\''"))
}
