//! Combinator-driven random expression generation and algebraic simplification.
//!
//! A [`CombinatorSpec`] is a small executable BNF: a start combinator plus
//! named rules that may refer to each other. Generation is a random
//! depth-first expansion under a [`GenBudget`]. When an `alt` cannot afford
//! the child it picked, it falls back to its `end` leaf (the forced-leaf rule),
//! which is what keeps recursive rules from growing without bound.

use num_integer::Roots;
use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

use crate::expr::{BinaryOp, Binding, Branch, CmpOp, Comparison, Expr, NodeKind, Rational, UnaryOp};
use crate::seed::RngStream;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("malformed combinator spec: {0}")]
    InvalidSpec(String),
    #[error("no construction fits the budget: {0}")]
    BudgetUnsatisfiable(String),
    /// This particular random expansion ran out of budget; another attempt may succeed.
    #[error("candidate ran out of budget")]
    CandidateFailed,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Spec {
    Alt { children: Vec<Spec>, weights: Option<Vec<f64>>, end: Option<Box<Spec>> },
    Const { lo: i64, hi: i64 },
    Var { pool: Vec<String> },
    Unary { ops: Vec<UnaryOp>, arg: Box<Spec> },
    Binary { ops: Vec<BinaryOp>, lhs: Box<Spec>, rhs: Box<Spec> },
    Piecewise {
        min_branches: usize,
        max_branches: usize,
        ops: Vec<CmpOp>,
        operand: Box<Spec>,
        value: Box<Spec>,
    },
    Sum { index: String, lo: Box<Spec>, hi: Box<Spec>, body: Box<Spec> },
    Recur { args: Vec<(String, Spec)> },
    Rule(String),
    /// Tightens the budget for the subtree rooted here.
    Limit { max_depth: Option<usize>, max_nodes: Option<usize>, inner: Box<Spec> },
}

pub fn alt(children: Vec<Spec>) -> Spec {
    Spec::Alt { children, weights: None, end: None }
}

pub fn alt_weighted(children: Vec<Spec>, weights: Vec<f64>, end: Option<Spec>) -> Spec {
    Spec::Alt { children, weights: Some(weights), end: end.map(Box::new) }
}

pub fn alt_end(children: Vec<Spec>, end: Spec) -> Spec {
    Spec::Alt { children, weights: None, end: Some(Box::new(end)) }
}

pub fn konst(lo: i64, hi: i64) -> Spec {
    Spec::Const { lo, hi }
}

pub fn var<S: AsRef<str>>(pool: &[S]) -> Spec {
    Spec::Var { pool: pool.iter().map(|s| s.as_ref().to_string()).collect() }
}

pub fn unop(ops: &[UnaryOp], arg: Spec) -> Spec {
    Spec::Unary { ops: ops.to_vec(), arg: Box::new(arg) }
}

pub fn binop(ops: &[BinaryOp], lhs: Spec, rhs: Spec) -> Spec {
    Spec::Binary { ops: ops.to_vec(), lhs: Box::new(lhs), rhs: Box::new(rhs) }
}

pub fn piecewise(branches: (usize, usize), ops: &[CmpOp], operand: Spec, value: Spec) -> Spec {
    Spec::Piecewise {
        min_branches: branches.0,
        max_branches: branches.1,
        ops: ops.to_vec(),
        operand: Box::new(operand),
        value: Box::new(value),
    }
}

pub fn sumloop(index: &str, lo: Spec, hi: Spec, body: Spec) -> Spec {
    Spec::Sum { index: index.to_string(), lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }
}

pub fn recur(args: Vec<(&str, Spec)>) -> Spec {
    Spec::Recur { args: args.into_iter().map(|(n, s)| (n.to_string(), s)).collect() }
}

pub fn rule(name: &str) -> Spec {
    Spec::Rule(name.to_string())
}

pub fn limit(max_depth: Option<usize>, max_nodes: Option<usize>, inner: Spec) -> Spec {
    Spec::Limit { max_depth, max_nodes, inner: Box::new(inner) }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct GenBudget {
    pub max_depth: usize,
    pub max_nodes_total: usize,
    pub max_nodes_by_kind: BTreeMap<NodeKind, usize>,
}

impl GenBudget {
    pub fn new(max_depth: usize, max_nodes_total: usize) -> Self {
        Self { max_depth, max_nodes_total, max_nodes_by_kind: BTreeMap::new() }
    }

    pub fn with_cap(mut self, kind: NodeKind, cap: usize) -> Self {
        self.max_nodes_by_kind.insert(kind, cap);
        self
    }

    pub fn validate(&self) -> Result<(), GrammarError> {
        if self.max_depth == 0 || self.max_nodes_total == 0 {
            return Err(GrammarError::InvalidSpec("budget needs max_depth and max_nodes >= 1".into()));
        }
        Ok(())
    }

    /// True when `e` respects every cap.
    pub fn admits(&self, e: &Expr) -> bool {
        e.depth() <= self.max_depth
            && e.node_count() <= self.max_nodes_total
            && self.max_nodes_by_kind.iter().all(|(k, cap)| e.count_kind(*k) <= *cap)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Cost {
    depth: usize,
    nodes: usize,
}

const UNREACHABLE: Cost = Cost { depth: usize::MAX / 4, nodes: usize::MAX / 4 };

impl Cost {
    fn leaf() -> Self {
        Cost { depth: 1, nodes: 1 }
    }

    fn min(self, other: Cost) -> Cost {
        Cost { depth: self.depth.min(other.depth), nodes: self.nodes.min(other.nodes) }
    }

    fn fits(self, depth: usize, nodes: usize) -> bool {
        self.depth <= depth && self.nodes <= nodes
    }
}

/// A start combinator together with the named rules it may reference.
#[derive(Clone, Debug, PartialEq)]
pub struct CombinatorSpec {
    pub start: Spec,
    pub rules: BTreeMap<String, Spec>,
}

impl CombinatorSpec {
    pub fn new(start: Spec) -> Self {
        Self { start, rules: BTreeMap::new() }
    }

    pub fn rule(mut self, name: &str, spec: Spec) -> Self {
        self.rules.insert(name.to_string(), spec);
        self
    }

    pub fn validate(&self) -> Result<(), GrammarError> {
        self.validate_spec(&self.start)?;
        for s in self.rules.values() {
            self.validate_spec(s)?;
        }
        Ok(())
    }

    fn validate_spec(&self, spec: &Spec) -> Result<(), GrammarError> {
        let bad = |m: &str| Err(GrammarError::InvalidSpec(m.to_string()));
        match spec {
            Spec::Alt { children, weights, end } => {
                if children.is_empty() {
                    return bad("alt needs at least one child");
                }
                if let Some(w) = weights {
                    if w.len() != children.len() {
                        return bad("alt needs one weight per child");
                    }
                    if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().sum::<f64>() <= 0.0 {
                        return bad("alt weights must be non-negative with a positive sum");
                    }
                }
                if let Some(end) = end {
                    self.validate_spec(end)?;
                    let costs = self.costs();
                    if self.cost_of(end, &costs).depth > 1 {
                        return bad("alt end must be able to produce a leaf");
                    }
                }
                children.iter().try_for_each(|c| self.validate_spec(c))
            }
            Spec::Const { lo, hi } => {
                if lo > hi {
                    return bad("const range is empty");
                }
                Ok(())
            }
            Spec::Var { pool } => {
                if pool.is_empty() {
                    return bad("var pool is empty");
                }
                Ok(())
            }
            Spec::Unary { ops, arg } => {
                if ops.is_empty() {
                    return bad("unop needs an operator");
                }
                self.validate_spec(arg)
            }
            Spec::Binary { ops, lhs, rhs } => {
                if ops.is_empty() {
                    return bad("binop needs an operator");
                }
                self.validate_spec(lhs)?;
                self.validate_spec(rhs)
            }
            Spec::Piecewise { min_branches, max_branches, ops, operand, value } => {
                if *min_branches == 0 || min_branches > max_branches {
                    return bad("piecewise branch range must be non-empty and start at 1 or more");
                }
                if ops.is_empty() {
                    return bad("piecewise needs a comparison operator");
                }
                self.validate_spec(operand)?;
                self.validate_spec(value)
            }
            Spec::Sum { lo, hi, body, .. } => {
                self.validate_spec(lo)?;
                self.validate_spec(hi)?;
                self.validate_spec(body)
            }
            Spec::Recur { args } => args.iter().try_for_each(|(_, s)| self.validate_spec(s)),
            Spec::Rule(name) => {
                if !self.rules.contains_key(name) {
                    return bad(&format!("unknown rule {name:?}"));
                }
                Ok(())
            }
            Spec::Limit { max_depth, max_nodes, inner } => {
                if *max_depth == Some(0) || *max_nodes == Some(0) {
                    return bad("local caps must be positive");
                }
                self.validate_spec(inner)
            }
        }
    }

    /// Least depth and node count of any expansion of each rule, by fixpoint.
    fn costs(&self) -> BTreeMap<String, Cost> {
        let mut costs: BTreeMap<String, Cost> =
            self.rules.keys().map(|k| (k.clone(), UNREACHABLE)).collect();
        loop {
            let mut changed = false;
            for (name, spec) in &self.rules {
                let c = self.cost_of(spec, &costs);
                if c != costs[name] {
                    costs.insert(name.clone(), c);
                    changed = true;
                }
            }
            if !changed {
                return costs;
            }
        }
    }

    fn cost_of(&self, spec: &Spec, costs: &BTreeMap<String, Cost>) -> Cost {
        let sat = |c: Cost| Cost { depth: c.depth.min(UNREACHABLE.depth), nodes: c.nodes.min(UNREACHABLE.nodes) };
        let c = match spec {
            Spec::Alt { children, end, .. } => {
                let mut best = UNREACHABLE;
                for c in children {
                    best = best.min(self.cost_of(c, costs));
                }
                if let Some(e) = end {
                    best = best.min(self.cost_of(e, costs));
                }
                best
            }
            Spec::Const { .. } | Spec::Var { .. } => Cost::leaf(),
            Spec::Unary { arg, .. } => {
                let a = self.cost_of(arg, costs);
                Cost { depth: a.depth + 1, nodes: a.nodes + 1 }
            }
            Spec::Binary { lhs, rhs, .. } => {
                let (l, r) = (self.cost_of(lhs, costs), self.cost_of(rhs, costs));
                Cost { depth: 1 + l.depth.max(r.depth), nodes: 1 + l.nodes + r.nodes }
            }
            Spec::Piecewise { min_branches, operand, value, .. } => {
                let (o, v) = (self.cost_of(operand, costs), self.cost_of(value, costs));
                Cost {
                    depth: 1 + o.depth.max(v.depth),
                    nodes: 1 + min_branches * (2 * o.nodes + v.nodes) + v.nodes,
                }
            }
            Spec::Sum { lo, hi, body, .. } => {
                let parts = [lo, hi, body].map(|s| self.cost_of(s, costs));
                Cost {
                    depth: 1 + parts.iter().map(|c| c.depth).max().unwrap_or(0),
                    nodes: 1 + parts.iter().map(|c| c.nodes).sum::<usize>(),
                }
            }
            Spec::Recur { args } => {
                let parts: Vec<Cost> = args.iter().map(|(_, s)| self.cost_of(s, costs)).collect();
                Cost {
                    depth: 1 + parts.iter().map(|c| c.depth).max().unwrap_or(0),
                    nodes: 1 + parts.iter().map(|c| c.nodes).sum::<usize>(),
                }
            }
            Spec::Rule(name) => costs.get(name).copied().unwrap_or(UNREACHABLE),
            Spec::Limit { inner, .. } => self.cost_of(inner, costs),
        };
        sat(c)
    }
}

struct Expander<'a> {
    spec: &'a CombinatorSpec,
    costs: BTreeMap<String, Cost>,
    caps: &'a BTreeMap<NodeKind, usize>,
    used: BTreeMap<NodeKind, usize>,
    stream: &'a mut RngStream,
}

type Expansion = Result<Expr, GrammarError>;

impl Expander<'_> {
    fn cost(&self, spec: &Spec) -> Cost {
        self.spec.cost_of(spec, &self.costs)
    }

    fn head_kind(&self, spec: &Spec) -> Option<NodeKind> {
        match spec {
            Spec::Const { .. } => Some(NodeKind::Const),
            Spec::Var { .. } => Some(NodeKind::Var),
            Spec::Unary { .. } => Some(NodeKind::Unary),
            Spec::Binary { .. } => Some(NodeKind::Binary),
            Spec::Piecewise { .. } => Some(NodeKind::Piecewise),
            Spec::Sum { .. } => Some(NodeKind::Sum),
            Spec::Recur { .. } => Some(NodeKind::Recur),
            Spec::Limit { inner, .. } => self.head_kind(inner),
            Spec::Rule(name) => self.spec.rules.get(name).and_then(|s| self.head_kind(s)),
            Spec::Alt { .. } => None,
        }
    }

    fn kind_available(&self, kind: NodeKind) -> bool {
        match self.caps.get(&kind) {
            Some(cap) => self.used.get(&kind).copied().unwrap_or(0) < *cap,
            None => true,
        }
    }

    fn affordable(&self, spec: &Spec, depth: usize, nodes: usize) -> bool {
        self.cost(spec).fits(depth, nodes)
            && self.head_kind(spec).map_or(true, |k| self.kind_available(k))
    }

    fn claim(&mut self, kind: NodeKind, depth: usize, nodes: usize) -> Result<(), GrammarError> {
        if depth == 0 || nodes == 0 || !self.kind_available(kind) {
            return Err(GrammarError::CandidateFailed);
        }
        *self.used.entry(kind).or_insert(0) += 1;
        Ok(())
    }

    /// Expands a sequence of sibling specs, reserving the minimum node cost
    /// of the siblings still to come.
    fn expand_seq(&mut self, specs: &[&Spec], depth: usize, nodes: usize) -> Result<Vec<Expr>, GrammarError> {
        let mins: Vec<usize> = specs.iter().map(|s| self.cost(s).nodes).collect();
        let mut left = nodes;
        let mut out = Vec::with_capacity(specs.len());
        for (i, s) in specs.iter().enumerate() {
            let reserve: usize = mins[i + 1..].iter().sum();
            let allot = left.checked_sub(reserve).ok_or(GrammarError::CandidateFailed)?;
            let e = self.expand(s, depth, allot)?;
            left -= e.node_count();
            out.push(e);
        }
        Ok(out)
    }

    fn expand(&mut self, spec: &Spec, depth: usize, nodes: usize) -> Expansion {
        match spec {
            Spec::Alt { children, weights, end } => {
                let fallback = |me: &mut Self| match end {
                    Some(e) => me.expand(e, depth, nodes),
                    None => Err(GrammarError::CandidateFailed),
                };
                if !children.iter().any(|c| self.affordable(c, depth, nodes)) {
                    return fallback(self);
                }
                let pick = match weights {
                    Some(w) => self.stream.weighted(w),
                    None => self.stream.below(children.len()),
                };
                if self.affordable(&children[pick], depth, nodes) {
                    self.expand(&children[pick], depth, nodes)
                } else {
                    fallback(self)
                }
            }
            Spec::Const { lo, hi } => {
                self.claim(NodeKind::Const, depth, nodes)?;
                Ok(Expr::int(self.stream.uniform_i64(*lo, *hi)))
            }
            Spec::Var { pool } => {
                self.claim(NodeKind::Var, depth, nodes)?;
                Ok(Expr::var(self.stream.pick(pool).clone()))
            }
            Spec::Unary { ops, arg } => {
                self.claim(NodeKind::Unary, depth, nodes)?;
                let op = *self.stream.pick(ops);
                let a = self.expand(arg, depth - 1, nodes - 1)?;
                Ok(Expr::unary(op, a))
            }
            Spec::Binary { ops, lhs, rhs } => {
                self.claim(NodeKind::Binary, depth, nodes)?;
                let op = *self.stream.pick(ops);
                let mut parts = self.expand_seq(&[lhs, rhs], depth - 1, nodes - 1)?.into_iter();
                let (l, r) = (parts.next().unwrap(), parts.next().unwrap());
                Ok(Expr::binary(op, l, r))
            }
            Spec::Piecewise { min_branches, max_branches, ops, operand, value } => {
                self.claim(NodeKind::Piecewise, depth, nodes)?;
                let count = self.stream.uniform_usize(*min_branches, *max_branches);
                let mut seq: Vec<&Spec> = Vec::with_capacity(count * 3 + 1);
                for _ in 0..count {
                    seq.extend([&**operand, &**operand, &**value]);
                }
                seq.push(value);
                let mut parts = self.expand_seq(&seq, depth - 1, nodes - 1)?.into_iter();
                let mut branches = Vec::with_capacity(count);
                for _ in 0..count {
                    let op = *self.stream.pick(ops);
                    let lhs = parts.next().unwrap();
                    let rhs = parts.next().unwrap();
                    let value = parts.next().unwrap();
                    branches.push(Branch { guard: Comparison { op, lhs, rhs }, value });
                }
                Ok(Expr::Piecewise { branches, otherwise: Box::new(parts.next().unwrap()) })
            }
            Spec::Sum { index, lo, hi, body } => {
                self.claim(NodeKind::Sum, depth, nodes)?;
                let mut parts = self.expand_seq(&[lo, hi, body], depth - 1, nodes - 1)?.into_iter();
                Ok(Expr::Sum {
                    index: index.clone(),
                    lo: Box::new(parts.next().unwrap()),
                    hi: Box::new(parts.next().unwrap()),
                    body: Box::new(parts.next().unwrap()),
                })
            }
            Spec::Recur { args } => {
                self.claim(NodeKind::Recur, depth, nodes)?;
                let specs: Vec<&Spec> = args.iter().map(|(_, s)| s).collect();
                let values = self.expand_seq(&specs, depth - 1, nodes - 1)?;
                Ok(Expr::Recur {
                    args: args
                        .iter()
                        .zip(values)
                        .map(|((name, _), value)| Binding { name: name.clone(), value })
                        .collect(),
                })
            }
            Spec::Rule(name) => {
                let inner = self.spec.rules.get(name).ok_or_else(|| {
                    GrammarError::InvalidSpec(format!("unknown rule {name:?}"))
                })?;
                self.expand(inner, depth, nodes)
            }
            Spec::Limit { max_depth, max_nodes, inner } => {
                let d = max_depth.map_or(depth, |m| m.min(depth));
                let n = max_nodes.map_or(nodes, |m| m.min(nodes));
                self.expand(inner, d, n)
            }
        }
    }
}

/// Expands `spec` once under `budget`.
///
/// Returns [`GrammarError::CandidateFailed`] when this particular expansion
/// dead-ends (an `alt` without `end` could not afford its choice, or a kind
/// cap was hit); callers retry with the same stream.
pub fn gen_expr(spec: &CombinatorSpec, budget: &GenBudget, stream: &mut RngStream) -> Result<Expr, GrammarError> {
    spec.validate()?;
    budget.validate()?;
    let costs = spec.costs();
    let start_cost = spec.cost_of(&spec.start, &costs);
    if !start_cost.fits(budget.max_depth, budget.max_nodes_total) {
        return Err(GrammarError::BudgetUnsatisfiable(format!(
            "smallest expansion needs depth {} and {} nodes, budget allows depth {} and {} nodes",
            start_cost.depth, start_cost.nodes, budget.max_depth, budget.max_nodes_total
        )));
    }
    let mut expander = Expander {
        spec,
        costs,
        caps: &budget.max_nodes_by_kind,
        used: BTreeMap::new(),
        stream,
    };
    expander.expand(&spec.start, budget.max_depth, budget.max_nodes_total)
}

fn checked_pow(base: Rational64, exp: i64) -> Option<Rational64> {
    if exp.unsigned_abs() > 64 {
        return None;
    }
    if base.is_zero() && exp < 0 {
        return None;
    }
    let mut acc = Rational64::one();
    for _ in 0..exp.unsigned_abs() {
        acc = acc.checked_mul(&base)?;
    }
    if exp < 0 {
        Rational64::one().checked_div(&acc)
    } else {
        Some(acc)
    }
}

fn exact_root(n: i64, k: u32) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = n.nth_root(k);
    (r.checked_pow(k)? == n).then_some(r)
}

fn fold_pow(base: Rational64, exp: Rational64) -> Option<Rational64> {
    if exp.is_integer() {
        return checked_pow(base, *exp.numer());
    }
    let q = u32::try_from(*exp.denom()).ok()?;
    if base.is_negative() || q > 64 {
        return None;
    }
    let root = Rational64::new(exact_root(*base.numer(), q)?, exact_root(*base.denom(), q)?);
    checked_pow(root, *exp.numer())
}

fn fold_binary(op: BinaryOp, a: Rational64, b: Rational64) -> Option<Rational64> {
    match op {
        BinaryOp::Add => a.checked_add(&b),
        BinaryOp::Sub => a.checked_sub(&b),
        BinaryOp::Mul => a.checked_mul(&b),
        BinaryOp::Div if b.is_zero() => None,
        BinaryOp::Div => a.checked_div(&b),
        BinaryOp::Pow => fold_pow(a, b),
    }
}

fn fold_unary(op: UnaryOp, a: Rational64) -> Option<Rational64> {
    match op {
        UnaryOp::Neg => a.numer().checked_neg().map(|n| Rational64::new(n, *a.denom())),
        UnaryOp::Abs => a.numer().checked_abs().map(|n| Rational64::new(n, *a.denom())),
        UnaryOp::Sqrt => fold_pow(a, Rational64::new(1, 2)),
        UnaryOp::Ln if a.is_one() => Some(Rational64::zero()),
        UnaryOp::Exp if a.is_zero() => Some(Rational64::one()),
        UnaryOp::Ln | UnaryOp::Exp => None,
    }
}

fn is_const(e: &Expr, value: i64) -> bool {
    matches!(e, Expr::Const { value: v } if *v == Rational::int(value))
}

/// Bottom-up constant folding over exact rationals plus the identity and
/// annihilator rules for `+ - * / ^` and double negation.
///
/// Children are simplified before their parent and every rewrite returns
/// either a constant or an already simplified child, so one pass reaches the
/// fixpoint and the function is idempotent.
pub fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Const { .. } | Expr::Var { .. } => e.clone(),
        Expr::Unary { op, arg } => {
            let arg = simplify(arg);
            if let Some(v) = arg.as_const().and_then(|c| fold_unary(*op, c.0)) {
                return Expr::rational(Rational(v));
            }
            if let (UnaryOp::Neg, Expr::Unary { op: UnaryOp::Neg, arg: inner }) = (op, &arg) {
                return (**inner).clone();
            }
            Expr::unary(*op, arg)
        }
        Expr::Binary { op, lhs, rhs } => {
            let (l, r) = (simplify(lhs), simplify(rhs));
            if let (Some(a), Some(b)) = (l.as_const(), r.as_const()) {
                if let Some(v) = fold_binary(*op, a.0, b.0) {
                    return Expr::rational(Rational(v));
                }
            }
            match op {
                BinaryOp::Add if is_const(&r, 0) => l,
                BinaryOp::Add if is_const(&l, 0) => r,
                BinaryOp::Sub if is_const(&r, 0) => l,
                BinaryOp::Mul if is_const(&r, 0) || is_const(&l, 0) => Expr::int(0),
                BinaryOp::Mul if is_const(&r, 1) => l,
                BinaryOp::Mul if is_const(&l, 1) => r,
                BinaryOp::Div if is_const(&r, 1) => l,
                BinaryOp::Pow if is_const(&r, 1) => l,
                _ => Expr::binary(*op, l, r),
            }
        }
        Expr::Piecewise { branches, otherwise } => Expr::Piecewise {
            branches: branches
                .iter()
                .map(|b| Branch {
                    guard: Comparison {
                        op: b.guard.op,
                        lhs: simplify(&b.guard.lhs),
                        rhs: simplify(&b.guard.rhs),
                    },
                    value: simplify(&b.value),
                })
                .collect(),
            otherwise: Box::new(simplify(otherwise)),
        },
        Expr::Sum { index, lo, hi, body } => Expr::Sum {
            index: index.clone(),
            lo: Box::new(simplify(lo)),
            hi: Box::new(simplify(hi)),
            body: Box::new(simplify(body)),
        },
        Expr::Recur { args } => Expr::Recur {
            args: args.iter().map(|b| Binding { name: b.name.clone(), value: simplify(&b.value) }).collect(),
        },
    }
}
