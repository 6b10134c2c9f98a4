//! Math-notation exercises: closed-form expressions, piecewise definitions,
//! summations, and simple recurrences.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::expr::{BinaryOp, Branch, CmpOp, Comparison, Expr, NodeKind, UnaryOp};
use crate::grammar::{
    alt, alt_end, alt_weighted, binop, gen_expr, konst, piecewise, recur, rule, sumloop, unop, var,
    simplify, CombinatorSpec, GenBudget, GrammarError,
};
use crate::interp::{eval_expr, Env, EvalOutcome};
use crate::seed::{generate_with_retry, RetryPolicy, RngStream};

pub const VARIABLE_POOL: [&str; 6] = ["x", "y", "z", "a", "b", "c"];
pub const INDEX_VAR: &str = "i";
pub const RECURSION_VAR: &str = "n";
pub const FUNCTION_NAME: &str = "f";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MathParams {
    pub variables: (usize, usize),
    pub max_depth: usize,
    pub max_nodes: usize,
    pub piecewise: bool,
    pub sum_loop: bool,
    pub recursion: bool,
    pub constants: (i64, i64),
    /// Test inputs are integers drawn from this range.
    pub inputs: (i64, i64),
    /// Input range for the recurrence parameter.
    pub recursion_inputs: (i64, i64),
    /// Simplified trees smaller than this are rejected as degenerate.
    pub min_nodes: usize,
}

impl Default for MathParams {
    fn default() -> Self {
        Self {
            variables: (1, 3),
            max_depth: 6,
            max_nodes: 24,
            piecewise: true,
            sum_loop: true,
            recursion: false,
            constants: (1, 9),
            inputs: (-50, 50),
            recursion_inputs: (0, 15),
            min_nodes: 4,
        }
    }
}

impl MathParams {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if self.variables.0 < 1 || self.variables.0 > self.variables.1 || self.variables.1 > VARIABLE_POOL.len() {
            return bad("variable count range must lie in [1, 6]");
        }
        if self.max_depth < 1 || self.max_nodes < 1 {
            return bad("budget must allow at least one node");
        }
        if self.constants.0 > self.constants.1 || self.inputs.0 > self.inputs.1 {
            return bad("constant and input ranges must be non-empty");
        }
        if self.recursion_inputs.0 > self.recursion_inputs.1 {
            return bad("recursion input range must be non-empty");
        }
        Ok(())
    }

    pub fn budget(&self) -> GenBudget {
        GenBudget::new(self.max_depth, self.max_nodes)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MathExercise {
    pub function: String,
    pub parameters: Vec<String>,
    pub body: Expr,
    pub recursive: bool,
    pub inputs: (i64, i64),
}

impl MathExercise {
    pub fn evaluate(&self, args: &[f64]) -> EvalOutcome {
        let env: Env = self.parameters.iter().cloned().zip(args.iter().copied()).collect();
        eval_expr(&self.body, &env)
    }
}

fn leaf(vars: &[&str], consts: (i64, i64)) -> crate::grammar::Spec {
    alt_weighted(vec![var(vars), konst(consts.0, consts.1)], vec![3.0, 2.0], None)
}

fn arithmetic_rule(vars: &[&str], consts: (i64, i64), self_rule: &str) -> crate::grammar::Spec {
    let r = || rule(self_rule);
    alt_weighted(
        vec![
            binop(&[BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul], r(), r()),
            binop(&[BinaryOp::Div], r(), r()),
            binop(&[BinaryOp::Pow], var(vars), konst(2, 3)),
            unop(&[UnaryOp::Neg, UnaryOp::Abs, UnaryOp::Sqrt, UnaryOp::Ln, UnaryOp::Exp], r()),
            var(vars),
            konst(consts.0, consts.1),
        ],
        vec![5.0, 1.0, 1.0, 1.5, 3.0, 2.0],
        Some(leaf(vars, consts)),
    )
}

/// The shipped grammar for closed-form exercises over `vars`.
pub fn expression_grammar(params: &MathParams, vars: &[&str]) -> CombinatorSpec {
    let mut top = vec![rule("expr")];
    if params.piecewise {
        top.push(piecewise(
            (1, 2),
            &[CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge],
            alt(vec![var(vars), konst(params.constants.0, params.constants.1)]),
            rule("expr"),
        ));
    }
    if params.sum_loop {
        let sum = sumloop(
            INDEX_VAR,
            konst(0, 2),
            alt(vec![var(vars), konst(3, 9)]),
            rule("body"),
        );
        top.push(alt(vec![
            sum.clone(),
            binop(&[BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul], rule("expr"), sum),
        ]));
    }
    let mut body_vars: Vec<&str> = vars.to_vec();
    body_vars.push(INDEX_VAR);
    CombinatorSpec::new(alt(top))
        .rule("expr", arithmetic_rule(vars, params.constants, "expr"))
        .rule("body", arithmetic_rule(&body_vars, params.constants, "body"))
}

/// Grammar for the step case of a recurrence in `n`.
pub fn recurrence_grammar(params: &MathParams) -> CombinatorSpec {
    let n = [RECURSION_VAR];
    let call = recur(vec![(RECURSION_VAR, binop(&[BinaryOp::Sub], var(&n), konst(1, 2)))]);
    let atom = alt_weighted(vec![var(&n), konst(params.constants.0, params.constants.1)], vec![1.0, 1.0], None);
    CombinatorSpec::new(binop(&[BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul], rule("step"), rule("step"))).rule(
        "step",
        alt_end(
            vec![
                binop(&[BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul], rule("step"), rule("step")),
                call.clone(),
                call,
                var(&n),
                konst(params.constants.0, params.constants.1),
            ],
            atom,
        ),
    )
}

fn closed_form_candidate(params: &MathParams, rng: &mut RngStream) -> Option<MathExercise> {
    let count = rng.uniform_usize(params.variables.0, params.variables.1);
    let vars: Vec<&str> = VARIABLE_POOL[..count].to_vec();
    let grammar = expression_grammar(params, &vars);
    let raw = match gen_expr(&grammar, &params.budget(), rng) {
        Ok(e) => e,
        Err(GrammarError::CandidateFailed) => return None,
        Err(_) => return None,
    };
    Some(MathExercise {
        function: FUNCTION_NAME.into(),
        parameters: vars.iter().map(|v| v.to_string()).collect(),
        body: simplify(&raw),
        recursive: false,
        inputs: params.inputs,
    })
}

fn recurrence_candidate(params: &MathParams, rng: &mut RngStream) -> Option<MathExercise> {
    let n = RECURSION_VAR;
    let base_grammar = CombinatorSpec::new(alt(vec![
        konst(params.constants.0, params.constants.1),
        binop(&[BinaryOp::Add, BinaryOp::Mul], var(&[n]), konst(params.constants.0, params.constants.1)),
    ]));
    let base = gen_expr(&base_grammar, &GenBudget::new(2, 3), rng).ok()?;
    let step_budget = GenBudget::new(params.max_depth.saturating_sub(1).max(2), params.max_nodes)
        .with_cap(NodeKind::Recur, 2);
    let step = gen_expr(&recurrence_grammar(params), &step_budget, rng).ok()?;
    let cutoff = rng.uniform_i64(0, 2);
    let body = Expr::Piecewise {
        branches: vec![Branch {
            guard: Comparison { op: CmpOp::Le, lhs: Expr::var(n), rhs: Expr::int(cutoff) },
            value: base,
        }],
        otherwise: Box::new(step),
    };
    Some(MathExercise {
        function: FUNCTION_NAME.into(),
        parameters: vec![n.to_string()],
        body: simplify(&body),
        recursive: true,
        inputs: params.recursion_inputs,
    })
}

/// Non-degenerate: big enough after simplification and every parameter used.
pub fn is_meaningful(ex: &MathExercise, min_nodes: usize) -> bool {
    let free = ex.body.free_vars();
    ex.body.node_count() >= min_nodes
        && ex.parameters.iter().all(|p| free.contains(p))
        && free.iter().all(|v| ex.parameters.contains(v))
        && (!ex.recursive || ex.body.contains_kind(NodeKind::Recur))
}

pub fn gen_math_exercise(params: &MathParams, stream: &mut RngStream) -> Result<MathExercise, Error> {
    params.validate()?;
    let policy = RetryPolicy::exercise("math expression");
    let accepted = generate_with_retry(
        stream,
        &policy,
        |r| {
            if params.recursion {
                recurrence_candidate(params, r)
            } else {
                closed_form_candidate(params, r)
            }
        },
        |ex| is_meaningful(ex, params.min_nodes) && (ex.recursive || params.budget().admits(&ex.body)),
    )?;
    Ok(accepted.value)
}
