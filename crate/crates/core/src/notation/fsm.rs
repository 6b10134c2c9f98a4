//! Finite-state automaton exercises.
//!
//! Machines are Moore machines: each state carries an output label, and a
//! call returns the label of the state it moves to. Generation lays down a
//! chain through every state first, so everything is reachable from the
//! initial state, then sprinkles extra edges, then turns every remaining
//! `(state, symbol)` slot into a self-loop.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Exhausted};
use crate::seed::{generate_with_retry, RetryPolicy, RngStream};

pub const SYMBOL_POOL: [&str; 10] = ["step", "push", "tick", "pull", "move", "jump", "spin", "fold", "load", "send"];
pub const OUTPUT_POOL: [&str; 12] = [
    "idle", "ready", "busy", "open", "closed", "locked", "armed", "done", "wait", "run", "stop", "sleep",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct State {
    pub name: String,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsmSpec {
    pub states: Vec<State>,
    pub alphabet: Vec<String>,
    /// `transitions[state][symbol]` is the destination state index.
    pub transitions: Vec<Vec<usize>>,
    pub initial: usize,
    /// Edges placed before totalization (chain plus random extras).
    pub edge_count: usize,
}

impl FsmSpec {
    pub fn symbol_index(&self, sym: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == sym)
    }

    pub fn is_total(&self) -> bool {
        self.transitions.len() == self.states.len()
            && self
                .transitions
                .iter()
                .all(|row| row.len() == self.alphabet.len() && row.iter().all(|&d| d < self.states.len()))
    }

    pub fn non_self_loop_edges(&self) -> usize {
        self.transitions
            .iter()
            .enumerate()
            .map(|(s, row)| row.iter().filter(|&&d| d != s).count())
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FsmParams {
    pub states: (usize, usize),
    pub alphabet: (usize, usize),
    /// Edges before totalization; the chain alone contributes `states - 1`.
    pub edges: (usize, usize),
}

impl Default for FsmParams {
    fn default() -> Self {
        Self { states: (4, 6), alphabet: (2, 3), edges: (6, 10) }
    }
}

impl FsmParams {
    pub fn validate(&self) -> Result<(), Error> {
        let (s, a, e) = (self.states, self.alphabet, self.edges);
        if s.0 < 2 || s.0 > s.1 || s.1 > OUTPUT_POOL.len() {
            return Err(Error::InvalidInput(format!("state count range must lie in [2, {}]", OUTPUT_POOL.len())));
        }
        if a.0 < 1 || a.0 > a.1 || a.1 > SYMBOL_POOL.len() {
            return Err(Error::InvalidInput(format!("alphabet size range must lie in [1, {}]", SYMBOL_POOL.len())));
        }
        if e.0 > e.1 || e.1 + 1 < s.0 {
            return Err(Error::InvalidInput("edge count must be at least states - 1".into()));
        }
        Ok(())
    }
}

fn state_name(i: usize) -> String {
    let letter = (b'A' + (i % 26) as u8) as char;
    if i < 26 {
        letter.to_string()
    } else {
        format!("{letter}{}", i / 26)
    }
}

fn build_candidate(params: &FsmParams, rng: &mut RngStream) -> Option<FsmSpec> {
    let n = rng.uniform_usize(params.states.0, params.states.1);
    let a = rng.uniform_usize(params.alphabet.0, params.alphabet.1);
    let e = rng.uniform_usize(params.edges.0.max(n - 1), params.edges.1.max(n - 1));
    if e > n * a {
        return None;
    }
    let mut symbols = SYMBOL_POOL.to_vec();
    rng.shuffle(&mut symbols);
    let mut outputs = OUTPUT_POOL.to_vec();
    rng.shuffle(&mut outputs);

    let mut slots: Vec<Vec<Option<usize>>> = vec![vec![None; a]; n];
    for s in 0..n - 1 {
        let sym = rng.below(a);
        slots[s][sym] = Some(s + 1);
    }
    let mut placed = n - 1;
    while placed < e {
        let free: Vec<(usize, usize)> = (0..n)
            .flat_map(|s| (0..a).map(move |c| (s, c)))
            .filter(|&(s, c)| slots[s][c].is_none())
            .collect();
        let (s, c) = free[rng.below(free.len())];
        let mut dest = rng.below(n - 1);
        if dest >= s {
            dest += 1;
        }
        slots[s][c] = Some(dest);
        placed += 1;
    }
    let transitions = slots
        .into_iter()
        .enumerate()
        .map(|(s, row)| row.into_iter().map(|d| d.unwrap_or(s)).collect())
        .collect();
    Some(FsmSpec {
        states: (0..n).map(|i| State { name: state_name(i), output: outputs[i].to_string() }).collect(),
        alphabet: symbols[..a].iter().map(|s| s.to_string()).collect(),
        transitions,
        initial: 0,
        edge_count: e,
    })
}

/// Chain first, then random extra edges, then self-loop totalization.
pub fn gen_fsm(params: &FsmParams, stream: &mut RngStream) -> Result<FsmSpec, Error> {
    params.validate()?;
    let policy = RetryPolicy::exercise("finite-state machine");
    let accepted = generate_with_retry(stream, &policy, |r| build_candidate(params, r), |m| {
        m.is_total() && m.non_self_loop_edges() >= m.edge_count
    })?;
    Ok(accepted.value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkTrace {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

/// Random walk from the initial state with a uniformly chosen symbol at each step.
pub fn gen_walk_trace(machine: &FsmSpec, length: (usize, usize), stream: &mut RngStream) -> Result<WalkTrace, Error> {
    if length.0 > length.1 {
        return Err(Error::InvalidInput("empty trace length range".into()));
    }
    if machine.alphabet.is_empty() {
        return Err(Exhausted { what: "walk over an empty alphabet".into(), attempts: 0 }.into());
    }
    let len = stream.uniform_usize(length.0, length.1);
    let mut state = machine.initial;
    let mut trace = WalkTrace { inputs: Vec::with_capacity(len), outputs: Vec::with_capacity(len) };
    for _ in 0..len {
        let col = stream.below(machine.alphabet.len());
        state = machine.transitions[state][col];
        trace.inputs.push(machine.alphabet[col].clone());
        trace.outputs.push(machine.states[state].output.clone());
    }
    Ok(trace)
}
