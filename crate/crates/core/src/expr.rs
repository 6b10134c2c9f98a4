//! Expression trees for math-notation exercises.

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;

/// Exact rational constant. Serialized as `"n"` or `"n/d"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub Rational64);

impl Rational {
    pub fn int(n: i64) -> Self {
        Rational(Rational64::from_integer(n))
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(Rational64::new(numer, denom))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self.0.numer() == 1 && *self.0.denom() == 1
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let text = String::deserialize(d)?;
        let parse = |s: &str| s.trim().parse::<i64>().map_err(D::Error::custom);
        match text.split_once('/') {
            None => Ok(Rational::int(parse(&text)?)),
            Some((n, d)) => {
                let d = parse(d)?;
                if d == 0 {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Rational::new(parse(n)?, d))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnaryOp {
    Neg,
    Abs,
    Sqrt,
    Ln,
    Exp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CmpOp {
    pub const ALL: [CmpOp; 6] = [CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq, CmpOp::Ne];

    pub fn holds(self, a: f64, b: f64) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Comparison {
    pub op: CmpOp,
    pub lhs: Expr,
    pub rhs: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Branch {
    pub guard: Comparison,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Binding {
    pub name: String,
    pub value: Expr,
}

/// Node kinds, used for per-kind generation caps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Const,
    Var,
    Unary,
    Binary,
    Piecewise,
    Sum,
    Recur,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum Expr {
    Const { value: Rational },
    Var { name: String },
    Unary { op: UnaryOp, arg: Box<Expr> },
    Binary { op: BinaryOp, lhs: Box<Expr>, rhs: Box<Expr> },
    /// First branch whose guard holds, else `otherwise`.
    Piecewise { branches: Vec<Branch>, otherwise: Box<Expr> },
    /// Sum of `body` for `index` from `lo` to `hi` inclusive (bounds rounded).
    Sum { index: String, lo: Box<Expr>, hi: Box<Expr>, body: Box<Expr> },
    /// Re-evaluates the enclosing function with the given parameters rebound.
    Recur { args: Vec<Binding> },
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const { value: Rational::int(n) }
    }

    pub fn rational(value: Rational) -> Expr {
        Expr::Const { value }
    }

    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var { name: name.into() }
    }

    pub fn unary(op: UnaryOp, arg: Expr) -> Expr {
        Expr::Unary { op, arg: Box::new(arg) }
    }

    pub fn binary(op: BinaryOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    pub fn add(lhs: Expr, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Add, lhs, rhs)
    }

    pub fn sub(lhs: Expr, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Sub, lhs, rhs)
    }

    pub fn mul(lhs: Expr, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Mul, lhs, rhs)
    }

    pub fn div(lhs: Expr, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Div, lhs, rhs)
    }

    pub fn pow(lhs: Expr, rhs: Expr) -> Expr {
        Expr::binary(BinaryOp::Pow, lhs, rhs)
    }

    pub fn neg(arg: Expr) -> Expr {
        Expr::unary(UnaryOp::Neg, arg)
    }

    pub fn kind(&self) -> NodeKind {
        match self {
            Expr::Const { .. } => NodeKind::Const,
            Expr::Var { .. } => NodeKind::Var,
            Expr::Unary { .. } => NodeKind::Unary,
            Expr::Binary { .. } => NodeKind::Binary,
            Expr::Piecewise { .. } => NodeKind::Piecewise,
            Expr::Sum { .. } => NodeKind::Sum,
            Expr::Recur { .. } => NodeKind::Recur,
        }
    }

    pub fn as_const(&self) -> Option<Rational> {
        match self {
            Expr::Const { value } => Some(*value),
            _ => None,
        }
    }

    /// Direct children in preorder: guard operands come before their branch
    /// value, and `otherwise` comes last.
    pub fn children(&self) -> Vec<&Expr> {
        match self {
            Expr::Const { .. } | Expr::Var { .. } => vec![],
            Expr::Unary { arg, .. } => vec![arg],
            Expr::Binary { lhs, rhs, .. } => vec![lhs, rhs],
            Expr::Piecewise { branches, otherwise } => {
                let mut out = Vec::with_capacity(branches.len() * 3 + 1);
                for b in branches {
                    out.push(&b.guard.lhs);
                    out.push(&b.guard.rhs);
                    out.push(&b.value);
                }
                out.push(otherwise);
                out
            }
            Expr::Sum { lo, hi, body, .. } => vec![lo, hi, body],
            Expr::Recur { args } => args.iter().map(|b| &b.value).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().into_iter().map(Expr::node_count).sum::<usize>()
    }

    /// Nodes on the longest root-to-leaf path; a lone leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(Expr::depth).max().unwrap_or(0)
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        let own = usize::from(self.kind() == kind);
        own + self.children().into_iter().map(|c| c.count_kind(kind)).sum::<usize>()
    }

    pub fn contains_kind(&self, kind: NodeKind) -> bool {
        self.kind() == kind || self.children().into_iter().any(|c| c.contains_kind(kind))
    }

    /// Variables referenced outside the scope of any summation binding them.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Expr::Var { name } => {
                if !bound.contains(&name.as_str()) {
                    out.insert(name.clone());
                }
            }
            Expr::Sum { index, lo, hi, body } => {
                lo.collect_free(bound, out);
                hi.collect_free(bound, out);
                bound.push(index);
                body.collect_free(bound, out);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(bound, out);
                }
            }
        }
    }

    /// Preorder index of the node reached by following child slots from the root.
    pub fn preorder_index(&self, path: &[usize]) -> usize {
        let mut node = self;
        let mut index = 0;
        for &slot in path {
            let children = node.children();
            index += 1 + children[..slot].iter().map(|c| c.node_count()).sum::<usize>();
            node = children[slot];
        }
        index
    }
}
