//! Test-suite generation: random inputs run through the reference semantics,
//! deduplicated, with per-kind coverage requirements.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Exhausted};
use crate::exercise::{Exercise, ExerciseKind, BASE64};
use base64::Engine;
use crate::format::binary::serialize_instance;
use crate::notation::fsm::gen_walk_trace;
use crate::notation::tree::Domain;
use crate::seed::{RngStream, SAMPLING_ATTEMPTS};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TestCase {
    /// One call with positional arguments and expected results.
    Pure { input: Vec<Value>, output: Vec<Value> },
    /// A sequence of method calls on one fresh instance.
    Stateful { calls: Vec<String>, results: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConstraints {
    pub total: usize,
    pub visible: usize,
    pub coverage: bool,
    /// Call-trace length range for stateful exercises.
    pub trace_len: (usize, usize),
    pub max_attempts: u32,
}

impl SuiteConstraints {
    pub fn for_kind(kind: ExerciseKind) -> Self {
        let total = match kind {
            ExerciseKind::Fsm => 5,
            ExerciseKind::Table => 1,
            _ => 10,
        };
        Self { total, visible: 3.min(total), coverage: true, trace_len: (8, 16), max_attempts: SAMPLING_ATTEMPTS }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestSuite {
    pub cases: Vec<TestCase>,
    pub visible: usize,
}

impl TestSuite {
    pub fn visible_cases(&self) -> &[TestCase] {
        &self.cases[..self.visible.min(self.cases.len())]
    }

    pub fn hidden_cases(&self) -> &[TestCase] {
        &self.cases[self.visible.min(self.cases.len())..]
    }
}

struct Sampler<'a> {
    stream: &'a mut RngStream,
    attempts: u32,
    budget: u32,
    seen: HashSet<String>,
    cases: Vec<TestCase>,
}

impl<'a> Sampler<'a> {
    fn tick(&mut self) -> Result<(), Exhausted> {
        if self.attempts >= self.budget {
            return Err(Exhausted { what: "test suite".into(), attempts: self.attempts });
        }
        self.attempts += 1;
        Ok(())
    }

    /// Keeps `input` if it is new and the reference accepts it.
    fn offer(&mut self, ex: &Exercise, input: Vec<Value>) -> bool {
        let key = Value::Array(input.clone()).to_string();
        if self.seen.contains(&key) {
            return false;
        }
        match ex.answer(&input) {
            Ok(output) => {
                self.seen.insert(key);
                self.cases.push(TestCase::Pure { input, output });
                true
            }
            Err(_) => false,
        }
    }
}

fn random_input(ex: &Exercise, rng: &mut RngStream) -> Result<Vec<Value>, Error> {
    Ok(match ex {
        Exercise::Math(m) => m.parameters.iter().map(|_| Value::from(rng.uniform_i64(m.inputs.0, m.inputs.1))).collect(),
        Exercise::Tree(t) => t.attributes.iter().map(|a| Domain::full(&a.ty).sample(rng)).collect(),
        Exercise::Bitfields(b) => {
            let mask = crate::format::bitfield::word_mask(b.input.word_size);
            vec![Value::from(rng.next_u64() & mask)]
        }
        Exercise::Binary(tree) => {
            let (bytes, _) = serialize_instance(tree, rng)?;
            vec![Value::from(BASE64.encode(bytes))]
        }
        Exercise::Table(t) => vec![serde_json::to_value(&t.input)?],
        Exercise::Fsm(_) => unreachable!("stateful exercises use traces"),
    })
}

fn pure_suite(ex: &Exercise, c: &SuiteConstraints, s: &mut Sampler) -> Result<(), Error> {
    if let Exercise::Table(t) = ex {
        // The exercise fixes its own input table.
        s.tick()?;
        let input = vec![serde_json::to_value(&t.input)?];
        if !s.offer(ex, input) {
            return Err(Exhausted { what: "test suite".into(), attempts: s.attempts }.into());
        }
        return Ok(());
    }
    if c.coverage {
        match ex {
            Exercise::Tree(t) => {
                let leaves = t.leaf_domains();
                let labels: BTreeSet<String> = leaves.iter().map(|(l, _)| l.to_value().to_string()).collect();
                let per_leaf = leaves.len() <= c.total;
                let mut covered: BTreeSet<String> = BTreeSet::new();
                for (label, doms) in &leaves {
                    let key = label.to_value().to_string();
                    if !per_leaf && covered.contains(&key) {
                        continue;
                    }
                    loop {
                        s.tick()?;
                        let input: Vec<Value> = doms.iter().map(|d| d.sample(s.stream)).collect();
                        if s.offer(ex, input) {
                            break;
                        }
                    }
                    covered.insert(key);
                }
                if covered != labels || s.cases.len() > c.total {
                    return Err(Exhausted { what: "covering test suite".into(), attempts: s.attempts }.into());
                }
            }
            Exercise::Bitfields(b) => {
                s.tick()?;
                s.offer(ex, vec![Value::from(b.all_ones_word())]);
            }
            _ => {}
        }
    }
    while s.cases.len() < c.total {
        s.tick()?;
        let input = random_input(ex, s.stream)?;
        s.offer(ex, input);
    }
    Ok(())
}

fn trace_suite(ex: &Exercise, c: &SuiteConstraints, s: &mut Sampler) -> Result<(), Error> {
    let Exercise::Fsm(m) = ex else { unreachable!() };
    loop {
        while s.cases.len() < c.total {
            s.tick()?;
            let t = gen_walk_trace(m, c.trace_len, s.stream)?;
            let key = t.inputs.join("\u{1f}");
            if s.seen.insert(key) {
                s.cases.push(TestCase::Stateful { calls: t.inputs, results: t.outputs });
            }
        }
        if !c.coverage || visits_all_states(m, &s.cases) {
            return Ok(());
        }
        // Start over; the spent attempts stay spent.
        s.cases.clear();
        s.seen.clear();
    }
}

fn visits_all_states(m: &crate::notation::fsm::FsmSpec, cases: &[TestCase]) -> bool {
    let mut seen = vec![false; m.states.len()];
    seen[m.initial] = true;
    for case in cases {
        if let TestCase::Stateful { calls, .. } = case {
            let mut state = m.initial;
            for call in calls {
                let Some(col) = m.symbol_index(call) else { return false };
                state = m.transitions[state][col];
                seen[state] = true;
            }
        }
    }
    seen.into_iter().all(|v| v)
}

/// Builds `c.total` distinct cases for `ex`, the first `c.visible` of which
/// are shown to the student. Fails with `Exhausted` once `c.max_attempts`
/// samples have been drawn without completing the suite.
pub fn gen_test_suite(ex: &Exercise, c: &SuiteConstraints, stream: &mut RngStream) -> Result<TestSuite, Error> {
    if c.total == 0 || c.visible > c.total {
        return Err(Error::InvalidInput("need 0 < total and visible <= total".into()));
    }
    if c.trace_len.0 == 0 || c.trace_len.0 > c.trace_len.1 {
        return Err(Error::InvalidInput("trace length range must be positive and non-empty".into()));
    }
    let mut s = Sampler { stream, attempts: 0, budget: c.max_attempts, seen: HashSet::new(), cases: Vec::new() };
    if ex.kind().is_stateful() {
        trace_suite(ex, c, &mut s)?;
    } else {
        pure_suite(ex, c, &mut s)?;
    }
    Ok(TestSuite { cases: s.cases, visible: c.visible })
}
