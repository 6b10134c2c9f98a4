//! Grading a solution process over the line protocol.
//!
//! The runner is started once. Pure suites send one JSON array of arguments
//! per line and expect one JSON array of results back. Stateful suites send
//! `["method"]` per call and the literal line `RESET` between traces. The
//! first failing case stops grading, and only its outputs are reported.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::io::{BufRead, BufReader, Write};
use std::process::{Child, ChildStdin, Command, Stdio};
use std::sync::mpsc::{self, Receiver, RecvTimeoutError};
use std::thread;
use std::time::{Duration, Instant};

use crate::error::Error;
use crate::exercise::Exercise;
use crate::render::ExerciseBundle;
use crate::testset::TestCase;

pub const RESET: &str = "RESET";
pub const REL_TOLERANCE: f64 = 1e-6;
pub const ABS_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    WrongAnswer,
    RuntimeError,
    Timeout,
    ProtocolError,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub case: usize,
    pub expected: Value,
    pub actual: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradeReport {
    pub verdict: Verdict,
    pub passed: usize,
    pub total: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
}

impl GradeReport {
    pub fn accepted(&self) -> bool {
        self.verdict == Verdict::Accepted
    }
}

/// Numbers within `1e-6` relative (`1e-9` absolute) when the expected value
/// is a float, exact otherwise; lists and objects element-wise.
pub fn values_match(expected: &Value, actual: &Value) -> bool {
    match (expected, actual) {
        (Value::Number(e), Value::Number(a)) => {
            if e.is_f64() {
                let (e, a) = (e.as_f64().unwrap_or(f64::NAN), a.as_f64().unwrap_or(f64::NAN));
                (e - a).abs() <= ABS_TOLERANCE.max(REL_TOLERANCE * e.abs())
            } else if let (Some(e), Some(a)) = (e.as_i64(), a.as_i64()) {
                e == a
            } else if let (Some(e), Some(a)) = (e.as_u64(), a.as_u64()) {
                e == a
            } else {
                // Integer expected, float given: only an exact match counts.
                matches!((e.as_f64(), a.as_f64()), (Some(x), Some(y)) if x == y)
            }
        }
        (Value::Array(e), Value::Array(a)) => e.len() == a.len() && e.iter().zip(a).all(|(x, y)| values_match(x, y)),
        (Value::Object(e), Value::Object(a)) => {
            e.len() == a.len() && e.iter().all(|(k, x)| a.get(k).map_or(false, |y| values_match(x, y)))
        }
        _ => expected == actual,
    }
}

enum Line {
    Text(String),
    Closed,
}

struct Session {
    child: Child,
    stdin: Option<ChildStdin>,
    lines: Receiver<String>,
    deadline: Instant,
}

impl Session {
    fn start(cmd: &str, timeout: Duration) -> Result<Session, Error> {
        let mut child = Command::new("sh")
            .arg("-c")
            .arg(cmd)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::inherit())
            .spawn()?;
        let stdin = child.stdin.take();
        let stdout = child.stdout.take().expect("stdout is piped");
        let (tx, rx) = mpsc::channel();
        thread::spawn(move || {
            for line in BufReader::new(stdout).lines() {
                let Ok(line) = line else { break };
                if tx.send(line).is_err() {
                    break;
                }
            }
        });
        Ok(Session { child, stdin, lines: rx, deadline: Instant::now() + timeout })
    }

    /// False if the runner no longer accepts input.
    fn send(&mut self, line: &str) -> bool {
        let Some(stdin) = self.stdin.as_mut() else { return false };
        stdin.write_all(line.as_bytes()).and_then(|_| stdin.write_all(b"\n")).and_then(|_| stdin.flush()).is_ok()
    }

    fn recv(&mut self) -> Result<Line, ()> {
        let left = self.deadline.saturating_duration_since(Instant::now());
        match self.lines.recv_timeout(left) {
            Ok(l) => Ok(Line::Text(l)),
            Err(RecvTimeoutError::Disconnected) => Ok(Line::Closed),
            Err(RecvTimeoutError::Timeout) => Err(()),
        }
    }

    /// Verdict for a runner that stopped answering: crashed or just quit.
    fn closed_verdict(&mut self) -> (Verdict, String) {
        let left = self.deadline.saturating_duration_since(Instant::now());
        let until = Instant::now() + left.min(Duration::from_millis(500));
        loop {
            match self.child.try_wait() {
                Ok(Some(status)) if status.success() => {
                    return (Verdict::ProtocolError, "runner exited before answering every request".into())
                }
                Ok(Some(status)) => return (Verdict::RuntimeError, format!("runner exited with {status}")),
                Ok(None) if Instant::now() < until => thread::sleep(Duration::from_millis(5)),
                _ => return (Verdict::ProtocolError, "runner closed its output".into()),
            }
        }
    }

    fn finish(mut self) {
        drop(self.stdin.take());
        let until = Instant::now() + Duration::from_millis(200);
        while Instant::now() < until {
            if let Ok(Some(_)) = self.child.try_wait() {
                return;
            }
            thread::sleep(Duration::from_millis(5));
        }
        let _ = self.child.kill();
        let _ = self.child.wait();
    }
}

enum Step {
    Answer(Value),
    Stop(Verdict, String),
}

fn exchange(s: &mut Session, request: &str) -> Step {
    if !s.send(request) {
        let (v, m) = s.closed_verdict();
        return Step::Stop(v, m);
    }
    match s.recv() {
        Err(()) => Step::Stop(Verdict::Timeout, "time limit exceeded".into()),
        Ok(Line::Closed) => {
            let (v, m) = s.closed_verdict();
            Step::Stop(v, m)
        }
        Ok(Line::Text(text)) => match serde_json::from_str::<Value>(&text) {
            Ok(v @ Value::Array(_)) => Step::Answer(v),
            _ => Step::Stop(Verdict::ProtocolError, "response is not a JSON array".into()),
        },
    }
}

fn case_expected(case: &TestCase) -> Value {
    match case {
        TestCase::Pure { output, .. } => Value::Array(output.clone()),
        TestCase::Stateful { results, .. } => Value::from(results.clone()),
    }
}

/// Grades `cmd` against every case of `bundle`, visible first.
pub fn grade(bundle: &ExerciseBundle, cmd: &str, timeout: Duration) -> Result<GradeReport, Error> {
    let cases: Vec<&TestCase> = bundle.tests().collect();
    let total = cases.len();
    let mut session = Session::start(cmd, timeout)?;
    let mut passed = 0;
    let mut failure = None;
    let mut verdict = Verdict::Accepted;

    'cases: for (index, case) in cases.iter().enumerate() {
        let fail = |verdict: Verdict, actual: Value, message: Option<String>| {
            (verdict, Failure { case: index, expected: case_expected(case), actual, message })
        };
        let outcome = match case {
            TestCase::Pure { input, output } => {
                let request = Value::Array(input.clone()).to_string();
                match exchange(&mut session, &request) {
                    Step::Answer(actual) => {
                        if values_match(&Value::Array(output.clone()), &actual) {
                            None
                        } else {
                            Some(fail(Verdict::WrongAnswer, actual, None))
                        }
                    }
                    Step::Stop(v, m) => Some(fail(v, Value::Null, Some(m))),
                }
            }
            TestCase::Stateful { calls, results } => {
                if index > 0 && !session.send(RESET) {
                    let (v, m) = session.closed_verdict();
                    Some(fail(v, Value::Null, Some(m)))
                } else {
                    let mut actual = Vec::with_capacity(calls.len());
                    let mut bad = None;
                    for (call, want) in calls.iter().zip(results) {
                        match exchange(&mut session, &Value::from(vec![call.as_str()]).to_string()) {
                            Step::Answer(Value::Array(mut got)) if got.len() == 1 => {
                                let got = got.remove(0);
                                let ok = got.as_str() == Some(want.as_str());
                                actual.push(got);
                                if !ok {
                                    bad = Some(fail(Verdict::WrongAnswer, Value::Array(actual.clone()), None));
                                    break;
                                }
                            }
                            Step::Answer(other) => {
                                actual.push(other);
                                bad = Some(fail(Verdict::WrongAnswer, Value::Array(actual.clone()), None));
                                break;
                            }
                            Step::Stop(v, m) => {
                                bad = Some(fail(v, Value::Array(actual.clone()), Some(m)));
                                break;
                            }
                        }
                    }
                    bad
                }
            }
        };
        match outcome {
            None => passed += 1,
            Some((v, f)) => {
                verdict = v;
                failure = Some(f);
                break 'cases;
            }
        }
    }
    if verdict == Verdict::Timeout {
        let _ = session.child.kill();
        let _ = session.child.wait();
    } else {
        session.finish();
    }
    Ok(GradeReport { verdict, passed, total, failure })
}

/// Perturbs a value so it no longer matches.
pub fn corrupt(v: &Value) -> Value {
    match v {
        Value::Number(n) => {
            if let Some(u) = n.as_u64() {
                Value::from(u ^ 1)
            } else if let Some(i) = n.as_i64() {
                Value::from(i ^ 1)
            } else {
                // A plain +1 vanishes in rounding for large magnitudes.
                let x = n.as_f64().unwrap_or(0.0);
                Value::from(x + 1.0 + x.abs())
            }
        }
        Value::String(s) => Value::from(format!("{s}_")),
        Value::Bool(b) => Value::from(!b),
        Value::Null => Value::from(0),
        Value::Array(items) if items.is_empty() => Value::Array(vec![Value::Null]),
        Value::Array(items) => {
            let mut items = items.clone();
            items[0] = corrupt(&items[0]);
            Value::Array(items)
        }
        Value::Object(map) => {
            let mut map = map.clone();
            match map.iter_mut().next() {
                Some((_, first)) => *first = corrupt(first),
                None => {
                    map.insert("_".into(), Value::Null);
                }
            }
            Value::Object(map)
        }
    }
}

/// Reference solution speaking the runner protocol. With `corrupt_case`,
/// the answers for that case are perturbed.
pub fn serve_reference<R: BufRead, W: Write>(
    ex: &Exercise,
    corrupt_case: Option<usize>,
    input: R,
    mut output: W,
) -> Result<(), Error> {
    let mut case = 0;
    let mut history: Vec<String> = Vec::new();
    for line in input.lines() {
        let line = line?;
        if line == RESET {
            history.clear();
            case += 1;
            continue;
        }
        let args: Vec<Value> = serde_json::from_str(&line)?;
        let mut answer = if ex.kind().is_stateful() {
            let call = args
                .first()
                .and_then(Value::as_str)
                .ok_or_else(|| Error::InvalidInput("expected [\"method\"]".into()))?;
            history.push(call.to_string());
            let outs = ex.answer_trace(&history)?;
            Value::from(vec![outs.last().cloned().unwrap_or_default()])
        } else {
            Value::Array(ex.answer(&args)?)
        };
        if corrupt_case == Some(case) {
            answer = corrupt(&answer);
        }
        writeln!(output, "{answer}")?;
        output.flush()?;
        if !ex.kind().is_stateful() {
            case += 1;
        }
    }
    Ok(())
}
