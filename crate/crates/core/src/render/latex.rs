//! LaTeX for expression trees.
//!
//! Parentheses are inserted only where precedence requires them, with two
//! exceptions kept for readability and unambiguous re-reading: a negative
//! right operand is always wrapped, and `-` in front of a plain constant is
//! written `-\left(3\right)` so it cannot be mistaken for the literal `-3`.

use crate::expr::{BinaryOp, CmpOp, Comparison, Expr, Rational, UnaryOp};
use crate::notation::math::MathExercise;

const SUM_LEVEL: u8 = 0;
const ADD_LEVEL: u8 = 1;
const MUL_LEVEL: u8 = 2;
const NEG_LEVEL: u8 = 3;
const POW_LEVEL: u8 = 4;
const ATOM_LEVEL: u8 = 5;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Const { value } if value.is_negative() => NEG_LEVEL,
        Expr::Const { .. } | Expr::Var { .. } | Expr::Recur { .. } => ATOM_LEVEL,
        Expr::Unary { op: UnaryOp::Neg, .. } => NEG_LEVEL,
        Expr::Unary { .. } => ATOM_LEVEL,
        Expr::Binary { op, .. } => match op {
            BinaryOp::Add | BinaryOp::Sub => ADD_LEVEL,
            BinaryOp::Mul => MUL_LEVEL,
            BinaryOp::Div => ATOM_LEVEL,
            BinaryOp::Pow => POW_LEVEL,
        },
        Expr::Piecewise { .. } | Expr::Sum { .. } => SUM_LEVEL,
    }
}

fn paren(s: String) -> String {
    format!("\\left({s}\\right)")
}

fn constant(value: Rational) -> String {
    let sign = if value.is_negative() { "-" } else { "" };
    let (n, d) = (value.numer().unsigned_abs(), value.denom());
    if d == 1 {
        format!("{sign}{n}")
    } else {
        format!("{sign}\\tfrac{{{n}}}{{{d}}}")
    }
}

fn at_least(e: &Expr, min: u8, fname: &str) -> String {
    let s = render(e, fname);
    if level(e) < min {
        paren(s)
    } else {
        s
    }
}

/// A right operand: wrapped when below `min` or when it starts with a sign.
fn right_operand(e: &Expr, min: u8, fname: &str) -> String {
    let s = render(e, fname);
    if level(e) < min || level(e) == NEG_LEVEL {
        paren(s)
    } else {
        s
    }
}

pub fn cmp_symbol(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Lt => "<",
        CmpOp::Le => "\\le",
        CmpOp::Gt => ">",
        CmpOp::Ge => "\\ge",
        CmpOp::Eq => "=",
        CmpOp::Ne => "\\ne",
    }
}

fn comparison(c: &Comparison, fname: &str) -> String {
    format!("{} {} {}", at_least(&c.lhs, ADD_LEVEL, fname), cmp_symbol(c.op), at_least(&c.rhs, ADD_LEVEL, fname))
}

fn render(e: &Expr, fname: &str) -> String {
    match e {
        Expr::Const { value } => constant(*value),
        Expr::Var { name } => name.clone(),
        Expr::Unary { op, arg } => match op {
            UnaryOp::Neg => {
                let inner = render(arg, fname);
                if level(arg) <= NEG_LEVEL || arg.as_const().is_some() {
                    format!("-{}", paren(inner))
                } else {
                    format!("-{inner}")
                }
            }
            UnaryOp::Abs => format!("\\left|{}\\right|", render(arg, fname)),
            UnaryOp::Sqrt => format!("\\sqrt{{{}}}", render(arg, fname)),
            UnaryOp::Ln => format!("\\ln{}", paren(render(arg, fname))),
            UnaryOp::Exp => format!("\\exp{}", paren(render(arg, fname))),
        },
        Expr::Binary { op, lhs, rhs } => match op {
            BinaryOp::Add => format!("{} + {}", at_least(lhs, ADD_LEVEL, fname), right_operand(rhs, MUL_LEVEL, fname)),
            BinaryOp::Sub => format!("{} - {}", at_least(lhs, ADD_LEVEL, fname), right_operand(rhs, MUL_LEVEL, fname)),
            BinaryOp::Mul => {
                format!("{} \\cdot {}", at_least(lhs, MUL_LEVEL, fname), right_operand(rhs, NEG_LEVEL, fname))
            }
            BinaryOp::Div => format!("\\frac{{{}}}{{{}}}", render(lhs, fname), render(rhs, fname)),
            BinaryOp::Pow => {
                let base = render(lhs, fname);
                let plain = match &**lhs {
                    Expr::Var { .. } => true,
                    Expr::Const { value } => value.is_integer() && !value.is_negative(),
                    _ => false,
                };
                let base = if plain { base } else { paren(base) };
                format!("{base}^{{{}}}", render(rhs, fname))
            }
        },
        Expr::Piecewise { branches, otherwise } => {
            let mut rows: Vec<String> = branches
                .iter()
                .map(|b| format!("{} & \\text{{if }} {}", render(&b.value, fname), comparison(&b.guard, fname)))
                .collect();
            rows.push(format!("{} & \\text{{otherwise}}", render(otherwise, fname)));
            format!("\\begin{{cases}} {} \\end{{cases}}", rows.join(" \\\\ "))
        }
        Expr::Sum { index, lo, hi, body } => format!(
            "\\sum_{{{index}={}}}^{{{}}} {}",
            render(lo, fname),
            render(hi, fname),
            at_least(body, POW_LEVEL, fname)
        ),
        Expr::Recur { args } => {
            let args: Vec<String> = args.iter().map(|b| render(&b.value, fname)).collect();
            format!("{fname}{}", paren(args.join(", ")))
        }
    }
}

/// Renders `e`; recursive calls are written as applications of `fname`.
pub fn latex_expr_in(e: &Expr, fname: &str) -> String {
    render(e, fname)
}

pub fn latex_expr(e: &Expr) -> String {
    render(e, "f")
}

/// The full definition, e.g. `f\left(x, y\right) = x + y`.
pub fn latex_definition(ex: &MathExercise) -> String {
    format!("{}{} = {}", ex.function, paren(ex.parameters.join(", ")), render(&ex.body, &ex.function))
}
