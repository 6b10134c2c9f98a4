//! Grades two shell "solutions" against a generated bundle.
//!
//! A real solution reads one JSON array of arguments per line and answers
//! with one JSON array of results per line.

use std::time::Duration;

use exgen::{generate_bundle, grade, ExerciseKind, GenParams, Request};

fn main() {
    let bundle = generate_bundle(&Request::new("demo", "grading", 0, ExerciseKind::Bitfields), &GenParams::default())
        .unwrap();
    println!("{}\n", bundle.statement);

    // Echoes the input word back: right only if the layouts happen to agree.
    let echo = "while read line; do echo \"$line\"; done";
    let report = grade(&bundle, echo, Duration::from_secs(5)).unwrap();
    println!("echo: {}", serde_json::to_string(&report).unwrap());

    let quitter = "read line; exit 1";
    let report = grade(&bundle, quitter, Duration::from_secs(5)).unwrap();
    println!("quitter: {}", serde_json::to_string(&report).unwrap());
}
