//! Random expression trees built directly, without the grammar module.

use exgen::expr::{BinaryOp, Binding, Branch, CmpOp, Comparison, Expr, Rational, UnaryOp};
use exgen::RngStream;

pub struct TreeShape {
    pub vars: Vec<&'static str>,
    pub max_depth: usize,
    pub piecewise: bool,
    pub sums: bool,
    /// Parameter name for `Recur` nodes; none when absent.
    pub recur: Option<&'static str>,
}

impl Default for TreeShape {
    fn default() -> Self {
        Self { vars: vec!["x", "y"], max_depth: 5, piecewise: true, sums: true, recur: None }
    }
}

fn constant(rng: &mut RngStream) -> Expr {
    let n = rng.uniform_i64(-9, 9);
    if rng.chance(0.25) {
        Expr::rational(Rational::new(n, rng.uniform_i64(1, 4)))
    } else {
        Expr::int(n)
    }
}

fn leaf(shape: &TreeShape, bound: &[&'static str], rng: &mut RngStream) -> Expr {
    let pool: Vec<&str> = shape.vars.iter().chain(bound).copied().collect();
    if rng.chance(0.5) {
        Expr::var(*rng.pick(&pool))
    } else {
        constant(rng)
    }
}

fn build(shape: &TreeShape, depth: usize, bound: &mut Vec<&'static str>, guard: bool, rng: &mut RngStream) -> Expr {
    if depth <= 1 || rng.chance(0.2) {
        return leaf(shape, bound, rng);
    }
    let unary = [UnaryOp::Neg, UnaryOp::Abs, UnaryOp::Sqrt, UnaryOp::Ln, UnaryOp::Exp];
    let binary = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div, BinaryOp::Pow];
    match rng.weighted(&[
        3.0,
        6.0,
        if shape.piecewise && !guard && depth >= 3 { 1.0 } else { 0.0 },
        if shape.sums && depth >= 3 && bound.is_empty() { 1.0 } else { 0.0 },
        if shape.recur.is_some() { 0.5 } else { 0.0 },
    ]) {
        0 => Expr::unary(*rng.pick(&unary), build(shape, depth - 1, bound, guard, rng)),
        1 => {
            let op = *rng.pick(&binary);
            let lhs = build(shape, depth - 1, bound, guard, rng);
            let rhs = if op == BinaryOp::Pow {
                Expr::int(rng.uniform_i64(0, 3))
            } else {
                build(shape, depth - 1, bound, guard, rng)
            };
            Expr::binary(op, lhs, rhs)
        }
        2 => {
            let n = rng.uniform_usize(1, 2);
            let ops = CmpOp::ALL;
            let branches = (0..n)
                .map(|_| Branch {
                    guard: Comparison {
                        op: *rng.pick(&ops),
                        lhs: build(shape, depth - 2, bound, true, rng),
                        rhs: build(shape, depth - 2, bound, true, rng),
                    },
                    value: build(shape, depth - 1, bound, false, rng),
                })
                .collect();
            Expr::Piecewise { branches, otherwise: Box::new(build(shape, depth - 1, bound, false, rng)) }
        }
        3 => {
            let lo = Expr::int(rng.uniform_i64(-2, 2));
            let hi = if rng.chance(0.5) { Expr::var(*rng.pick(&shape.vars)) } else { Expr::int(rng.uniform_i64(0, 6)) };
            bound.push("i");
            let body = build(shape, depth - 1, bound, guard, rng);
            bound.pop();
            Expr::Sum { index: "i".into(), lo: Box::new(lo), hi: Box::new(hi), body: Box::new(body) }
        }
        _ => {
            let name = shape.recur.expect("weight is zero without recursion");
            let arg = build(shape, depth - 1, bound, guard, rng);
            Expr::Recur { args: vec![Binding { name: name.into(), value: arg }] }
        }
    }
}

pub fn random_expr(shape: &TreeShape, rng: &mut RngStream) -> Expr {
    build(shape, shape.max_depth, &mut Vec::new(), false, rng)
}
