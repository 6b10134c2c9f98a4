mod common;

use common::random_expr::{random_expr, TreeShape};
use exgen::expr::{BinaryOp, Expr, NodeKind, UnaryOp};
use exgen::grammar::{
    alt_end, alt_weighted, binop, gen_expr, konst, rule, simplify, unop, var, CombinatorSpec, GenBudget, GrammarError,
};
use exgen::interp::{eval_expr, Env};
use exgen::notation::math::{gen_math_exercise, MathParams};
use exgen::{derive_seed, split_stream, RngStream};
use proptest::prelude::*;

fn arith() -> CombinatorSpec {
    let leaf = alt_end(vec![var(&["x", "y"]), konst(-5, 5)], konst(1, 1));
    CombinatorSpec::new(rule("e")).rule(
        "e",
        alt_end(
            vec![
                binop(&[BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div], rule("e"), rule("e")),
                unop(&[UnaryOp::Neg, UnaryOp::Abs], rule("e")),
                var(&["x", "y"]),
                konst(-5, 5),
            ],
            leaf,
        ),
    )
}

fn gen_retrying(spec: &CombinatorSpec, budget: &GenBudget, s: &mut RngStream) -> Expr {
    loop {
        match gen_expr(spec, budget, s) {
            Ok(e) => return e,
            Err(GrammarError::CandidateFailed) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn budget_holds_over_many_seeds() {
    let spec = arith();
    let budget = GenBudget::new(4, 15);
    for v in 0..1000 {
        let mut s = split_stream(derive_seed("grammar", "budget", v).unwrap(), "exercise");
        let e = gen_retrying(&spec, &budget, &mut s);
        assert!(e.depth() <= 4, "depth {} in {e:?}", e.depth());
        assert!(e.node_count() <= 15, "{} nodes", e.node_count());
    }
}

#[test]
fn kind_caps_hold() {
    let spec = arith();
    let budget = GenBudget::new(6, 30).with_cap(NodeKind::Unary, 1);
    let mut s = RngStream::from_state(11);
    for _ in 0..300 {
        let e = gen_retrying(&spec, &budget, &mut s);
        assert!(e.count_kind(NodeKind::Unary) <= 1);
    }
}

#[test]
fn weighted_alt_frequency() {
    // Weights [3, 1]: the first branch should come up 3/4 of the time.
    let spec = CombinatorSpec::new(alt_weighted(vec![konst(1, 1), konst(2, 2)], vec![3.0, 1.0], None));
    let budget = GenBudget::new(1, 1);
    let mut s = RngStream::from_state(2024);
    let n = 20_000;
    let ones = (0..n).filter(|_| gen_expr(&spec, &budget, &mut s).unwrap() == Expr::int(1)).count();
    let freq = ones as f64 / n as f64;
    assert!((0.72..=0.78).contains(&freq), "frequency {freq}");
}

#[test]
fn piecewise_shows_up_often_enough() {
    let p = MathParams { piecewise: true, ..MathParams::default() };
    let n = 500;
    let hits = (0..n)
        .filter(|&v| {
            let mut s = split_stream(derive_seed("math", "pw", v).unwrap(), "exercise");
            gen_math_exercise(&p, &mut s).unwrap().body.contains_kind(NodeKind::Piecewise)
        })
        .count();
    assert!(hits as f64 / n as f64 >= 0.30, "{hits}/{n} piecewise");
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn simplify_is_idempotent(state in any::<u64>()) {
        let e = random_expr(&TreeShape { sums: false, ..TreeShape::default() }, &mut RngStream::from_state(state));
        let once = simplify(&e);
        prop_assert_eq!(simplify(&once), once.clone());
        prop_assert!(once.node_count() <= e.node_count());
    }

    #[test]
    fn simplify_keeps_value(state in any::<u64>(), x in -20i64..20, y in -20i64..20) {
        let e = random_expr(&TreeShape { sums: false, ..TreeShape::default() }, &mut RngStream::from_state(state));
        let env: Env = [("x".to_string(), x as f64), ("y".to_string(), y as f64)].into();
        if let (Ok(a), Ok(b)) = (eval_expr(&e, &env), eval_expr(&simplify(&e), &env)) {
            if a.is_finite() && b.is_finite() && a.abs() < 1e12 {
                prop_assert!(close(a, b), "{} vs {}", a, b);
            }
        }
    }
}
