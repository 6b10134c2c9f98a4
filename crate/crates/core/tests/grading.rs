mod common;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{exgen_bin, scratch, sh_quote};
use exgen::{generate_bundle, grade, ExerciseBundle, ExerciseKind, GenParams, Request, TestCase, Verdict};

fn write_bundle(dir: &PathBuf, kind: ExerciseKind, variant: u64) -> (PathBuf, ExerciseBundle) {
    let b = generate_bundle(&Request::new("grader", "it", variant, kind), &GenParams::default()).unwrap();
    let path = dir.join(format!("{}-{variant}.exercise.json", kind.name()));
    std::fs::write(&path, b.to_canonical_json()).unwrap();
    (path, b)
}

fn oracle_cmd(bundle: &PathBuf, corrupt: Option<usize>) -> String {
    let mut cmd = format!("{} oracle --bundle {}", sh_quote(exgen_bin().to_str().unwrap()), sh_quote(bundle.to_str().unwrap()));
    if let Some(k) = corrupt {
        cmd.push_str(&format!(" --corrupt-case {k}"));
    }
    cmd
}

const LIMIT: Duration = Duration::from_secs(20);

#[test]
fn reference_runner_is_accepted_for_every_kind() {
    let dir = scratch("grading-accept");
    for kind in ExerciseKind::ALL {
        let (path, b) = write_bundle(&dir, kind, 1);
        let r = grade(&b, &oracle_cmd(&path, None), LIMIT).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted, "{kind}: {r:?}");
        assert_eq!(r.passed, r.total);
        assert!(r.failure.is_none());
    }
}

#[test]
fn corrupted_case_is_pinpointed() {
    let dir = scratch("grading-corrupt");
    for kind in [ExerciseKind::Math, ExerciseKind::Fsm, ExerciseKind::Binary] {
        let (path, b) = write_bundle(&dir, kind, 2);
        let r = grade(&b, &oracle_cmd(&path, Some(2)), LIMIT).unwrap();
        assert_eq!(r.verdict, Verdict::WrongAnswer, "{kind}");
        assert_eq!(r.passed, 2);
        assert_eq!(r.failure.unwrap().case, 2);
    }
}

#[test]
fn constant_answer_fails_first_case() {
    let dir = scratch("grading-const");
    // Pick a variant whose first expected value is not zero.
    let (_, b) = (0..50)
        .map(|v| write_bundle(&dir, ExerciseKind::Math, v))
        .find(|(_, b)| matches!(&b.visible_tests[0], TestCase::Pure { output, .. } if output[0].as_f64() != Some(0.0)))
        .unwrap();
    let r = grade(&b, "while read l; do echo '[0]'; done", LIMIT).unwrap();
    assert_eq!(r.verdict, Verdict::WrongAnswer);
    let f = r.failure.unwrap();
    assert_eq!(f.case, 0);
    assert_eq!(f.actual, serde_json::json!([0]));
}

#[test]
fn silent_runner_times_out_on_schedule() {
    let dir = scratch("grading-timeout");
    let (_, b) = write_bundle(&dir, ExerciseKind::Bitfields, 0);
    let limit = Duration::from_secs(1);
    let start = Instant::now();
    let r = grade(&b, "sleep 30", limit).unwrap();
    let took = start.elapsed().as_secs_f64();
    assert_eq!(r.verdict, Verdict::Timeout);
    assert!((took - 1.0).abs() <= 0.5, "took {took}s");
}

#[test]
fn crashing_runner_is_a_runtime_error() {
    let dir = scratch("grading-crash");
    let (_, b) = write_bundle(&dir, ExerciseKind::Tree, 0);
    let r = grade(&b, "read l; echo boom >&2; exit 3", LIMIT).unwrap();
    assert_eq!(r.verdict, Verdict::RuntimeError);
    assert_eq!(r.failure.unwrap().case, 0);
}

#[test]
fn garbage_output_is_a_protocol_error() {
    let dir = scratch("grading-garbage");
    let (_, b) = write_bundle(&dir, ExerciseKind::Table, 0);
    let r = grade(&b, "while read l; do echo 'not json'; done", LIMIT).unwrap();
    assert_eq!(r.verdict, Verdict::ProtocolError);
    let r = grade(&b, "exit 0", LIMIT).unwrap();
    assert_eq!(r.verdict, Verdict::ProtocolError);
}

#[test]
fn tolerant_float_answers_pass() {
    // Echo the reference answer with a relative error far below 1e-6.
    let dir = scratch("grading-tolerance");
    let (path, b) = write_bundle(&dir, ExerciseKind::Math, 4);
    let cmd = format!(
        "{} | while read l; do echo \"$l\" | sed 's/\\]$/ /' | awk '{{ printf \"[%.12g]\\n\", substr($0, 2) * (1 + 1e-9) }}'; done",
        oracle_cmd(&path, None)
    );
    let r = grade(&b, &cmd, LIMIT).unwrap();
    assert_eq!(r.verdict, Verdict::Accepted, "{r:?}");
}
