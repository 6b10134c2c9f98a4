//! Reference evaluation: expressions over an environment, and automaton traces.
//!
//! These are the oracles that produce every expected output in a test suite.
//! Domain failures are values, not panics, so randomly generated programs can
//! be evaluated on arbitrary inputs and the bad inputs filtered out.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::expr::{BinaryOp, Expr, UnaryOp};
use crate::notation::fsm::FsmSpec;

pub type Env = BTreeMap<String, f64>;

/// Denominators closer to zero than this are treated as division by zero.
pub const DIV_EPSILON: f64 = 1e-9;
/// Longest summation and deepest self-recursion the evaluator will follow.
pub const MAX_ITERATIONS: usize = 10_000;
pub const MAX_RECURSION: usize = 10_000;
/// Total node visits per evaluation, so exponential recursions stay bounded.
pub const MAX_STEPS: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainErrorKind {
    DivByZero,
    LogNonpositive,
    SqrtNegative,
    UnboundVar,
    StepLimit,
    /// Overflow or an undefined power produced NaN or an infinity.
    NonFinite,
}

/// A failed evaluation and the preorder index of the node that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainError {
    pub kind: DomainErrorKind,
    pub node: usize,
}

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} at node {}", self.kind, self.node)
    }
}

pub type EvalOutcome = Result<f64, DomainError>;

struct Fault {
    kind: DomainErrorKind,
    /// Child slots from the failing node up to the tree root, innermost first.
    path: Vec<usize>,
    /// Set once the path reaches the root of a self-call, after which outer
    /// frames must not extend it.
    sealed: bool,
}

impl Fault {
    fn new(kind: DomainErrorKind) -> Self {
        Fault { kind, path: Vec::new(), sealed: false }
    }

    fn at(mut self, slot: usize) -> Self {
        if !self.sealed {
            self.path.push(slot);
        }
        self
    }
}

struct Evaluator<'a> {
    root: &'a Expr,
    steps: u64,
    recursion: usize,
}

fn finite(v: f64) -> Result<f64, Fault> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Fault::new(DomainErrorKind::NonFinite))
    }
}

impl Evaluator<'_> {
    fn child(&mut self, e: &Expr, slot: usize, env: &mut Env) -> Result<f64, Fault> {
        self.eval(e, env).map_err(|f| f.at(slot))
    }

    fn eval(&mut self, e: &Expr, env: &mut Env) -> Result<f64, Fault> {
        self.steps += 1;
        if self.steps > MAX_STEPS {
            return Err(Fault::new(DomainErrorKind::StepLimit));
        }
        stacker::maybe_grow(64 * 1024, 2 * 1024 * 1024, || self.eval_node(e, env))
    }

    fn eval_node(&mut self, e: &Expr, env: &mut Env) -> Result<f64, Fault> {
        match e {
            Expr::Const { value } => Ok(value.to_f64()),
            Expr::Var { name } => env.get(name).copied().ok_or(Fault::new(DomainErrorKind::UnboundVar)),
            Expr::Unary { op, arg } => {
                let a = self.child(arg, 0, env)?;
                match op {
                    UnaryOp::Neg => Ok(-a),
                    UnaryOp::Abs => Ok(a.abs()),
                    UnaryOp::Sqrt if a < 0.0 => Err(Fault::new(DomainErrorKind::SqrtNegative)),
                    UnaryOp::Sqrt => Ok(libm::sqrt(a)),
                    UnaryOp::Ln if a <= 0.0 => Err(Fault::new(DomainErrorKind::LogNonpositive)),
                    UnaryOp::Ln => finite(libm::log(a)),
                    UnaryOp::Exp => finite(libm::exp(a)),
                }
            }
            Expr::Binary { op, lhs, rhs } => {
                let a = self.child(lhs, 0, env)?;
                let b = self.child(rhs, 1, env)?;
                match op {
                    BinaryOp::Add => finite(a + b),
                    BinaryOp::Sub => finite(a - b),
                    BinaryOp::Mul => finite(a * b),
                    BinaryOp::Div if b.abs() < DIV_EPSILON => Err(Fault::new(DomainErrorKind::DivByZero)),
                    BinaryOp::Div => finite(a / b),
                    BinaryOp::Pow => finite(libm::pow(a, b)),
                }
            }
            Expr::Piecewise { branches, otherwise } => {
                for (i, b) in branches.iter().enumerate() {
                    let l = self.child(&b.guard.lhs, 3 * i, env)?;
                    let r = self.child(&b.guard.rhs, 3 * i + 1, env)?;
                    if b.guard.op.holds(l, r) {
                        return self.child(&b.value, 3 * i + 2, env);
                    }
                }
                self.child(otherwise, 3 * branches.len(), env)
            }
            Expr::Sum { index, lo, hi, body } => {
                let lo = self.child(lo, 0, env)?.round();
                let hi = self.child(hi, 1, env)?.round();
                if hi - lo + 1.0 > MAX_ITERATIONS as f64 {
                    return Err(Fault::new(DomainErrorKind::StepLimit));
                }
                let saved = env.get(index).copied();
                let mut total = 0.0;
                let mut i = lo;
                let mut result = Ok(());
                while i <= hi {
                    env.insert(index.clone(), i);
                    match self.child(body, 2, env).and_then(|v| finite(total + v)) {
                        Ok(t) => total = t,
                        Err(f) => {
                            result = Err(f);
                            break;
                        }
                    }
                    i += 1.0;
                }
                match saved {
                    Some(v) => env.insert(index.clone(), v),
                    None => env.remove(index),
                };
                result.map(|_| total)
            }
            Expr::Recur { args } => {
                let mut callee = env.clone();
                for (slot, b) in args.iter().enumerate() {
                    let v = self.child(&b.value, slot, env)?;
                    callee.insert(b.name.clone(), v);
                }
                if self.recursion >= MAX_RECURSION {
                    return Err(Fault::new(DomainErrorKind::StepLimit));
                }
                self.recursion += 1;
                let root = self.root;
                let out = self.eval(root, &mut callee).map_err(|mut f| {
                    f.sealed = true;
                    f
                });
                self.recursion -= 1;
                out
            }
        }
    }
}

/// Strict evaluation of `e` in `env`. A `Recur` node re-enters `e` itself
/// with its bindings applied on top of the caller's environment.
pub fn eval_expr(e: &Expr, env: &Env) -> EvalOutcome {
    let mut scratch = env.clone();
    let mut ev = Evaluator { root: e, steps: 0, recursion: 0 };
    ev.eval(e, &mut scratch).map_err(|f| {
        let path: Vec<usize> = f.path.into_iter().rev().collect();
        DomainError { kind: f.kind, node: e.preorder_index(&path) }
    })
}

/// Feeds `trace` to a Moore machine from its initial state and collects the
/// output label of every state entered.
pub fn run_machine<S: AsRef<str>>(machine: &FsmSpec, trace: &[S]) -> Result<Vec<String>, Error> {
    let mut state = machine.initial;
    let mut out = Vec::with_capacity(trace.len());
    for sym in trace {
        let sym = sym.as_ref();
        let col = machine.symbol_index(sym).ok_or_else(|| Error::UnknownSymbol(sym.to_string()))?;
        state = machine.transitions[state][col];
        out.push(machine.states[state].output.clone());
    }
    Ok(out)
}
