//! Decision-tree exercises.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::expr::CmpOp;
use crate::seed::{generate_with_retry, RetryPolicy, RngStream};

pub const INT_ATTRIBUTES: [&str; 5] = ["age", "height", "weight", "score", "level"];
pub const BOOL_ATTRIBUTES: [&str; 3] = ["member", "active", "verified"];
pub const ENUM_ATTRIBUTES: [(&str, &[&str]); 3] = [
    ("color", &["red", "green", "blue", "black", "white"]),
    ("size", &["small", "medium", "large", "huge"]),
    ("shape", &["round", "square", "oval", "flat"]),
];
pub const MAX_ATTRIBUTES: usize = INT_ATTRIBUTES.len() + BOOL_ATTRIBUTES.len() + ENUM_ATTRIBUTES.len();
pub const TEXT_LABELS: [&str; 8] = ["alpha", "beta", "gamma", "delta", "omega", "sigma", "kappa", "theta"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AttrType {
    IntRange { lo: i64, hi: i64 },
    Boolean,
    Enum { labels: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    #[serde(flatten)]
    pub ty: AttrType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum Test {
    /// `value <op> threshold`, op one of `< <= > >=`.
    Threshold { op: CmpOp, threshold: i64 },
    IsTrue,
    Equals { label: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl Label {
    pub fn to_value(&self) -> Value {
        match self {
            Label::Int(n) => Value::from(*n),
            Label::Text(s) => Value::from(s.as_str()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum TreeNode {
    Leaf { label: Label },
    Split { attribute: usize, test: Test, yes: Box<TreeNode>, no: Box<TreeNode> },
}

impl TreeNode {
    /// Tests on the longest root-to-leaf path; a lone leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 0,
            TreeNode::Split { yes, no, .. } => 1 + yes.depth().max(no.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<&Label> {
        match self {
            TreeNode::Leaf { label } => vec![label],
            TreeNode::Split { yes, no, .. } => {
                let mut v = yes.leaves();
                v.extend(no.leaves());
                v
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionTree {
    pub attributes: Vec<Attribute>,
    pub labels: Vec<Label>,
    pub root: TreeNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TreeParams {
    pub attributes: (usize, usize),
    /// Integer attributes take sub-ranges of this interval.
    pub int_bounds: (i64, i64),
    pub max_depth: usize,
    pub labels: usize,
    pub text_labels: bool,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self { attributes: (2, 4), int_bounds: (0, 100), max_depth: 3, labels: 3, text_labels: false }
    }
}

impl TreeParams {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if self.attributes.0 < 1 || self.attributes.0 > self.attributes.1 || self.attributes.1 > MAX_ATTRIBUTES {
            return bad("attribute count range must lie in [1, 11]");
        }
        if self.max_depth < 1 {
            return bad("max depth must be at least 1");
        }
        if self.labels < 2 || self.labels > TEXT_LABELS.len() {
            return bad("leaf label count must lie in [2, 8]");
        }
        if self.int_bounds.1 - self.int_bounds.0 < 1 {
            return bad("integer bounds must span at least two values");
        }
        Ok(())
    }
}

/// What a root-to-node path still allows for one attribute.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Domain {
    Int { lo: i64, hi: i64 },
    Bool(Option<bool>),
    Enum(Vec<String>),
}

impl Domain {
    pub fn full(ty: &AttrType) -> Domain {
        match ty {
            AttrType::IntRange { lo, hi } => Domain::Int { lo: *lo, hi: *hi },
            AttrType::Boolean => Domain::Bool(None),
            AttrType::Enum { labels } => Domain::Enum(labels.clone()),
        }
    }

    fn splittable(&self) -> bool {
        match self {
            Domain::Int { lo, hi } => hi > lo,
            Domain::Bool(fixed) => fixed.is_none(),
            Domain::Enum(allowed) => allowed.len() >= 2,
        }
    }

    /// The (yes, no) restrictions of `self` under `test`.
    pub fn split(&self, test: &Test) -> (Domain, Domain) {
        match (self, test) {
            (Domain::Int { lo, hi }, Test::Threshold { op, threshold: t }) => {
                let (lo, hi, t) = (*lo, *hi, *t);
                match op {
                    CmpOp::Lt => (Domain::Int { lo, hi: hi.min(t - 1) }, Domain::Int { lo: lo.max(t), hi }),
                    CmpOp::Le => (Domain::Int { lo, hi: hi.min(t) }, Domain::Int { lo: lo.max(t + 1), hi }),
                    CmpOp::Gt => (Domain::Int { lo: lo.max(t + 1), hi }, Domain::Int { lo, hi: hi.min(t) }),
                    _ => (Domain::Int { lo: lo.max(t), hi }, Domain::Int { lo, hi: hi.min(t - 1) }),
                }
            }
            (Domain::Bool(_), Test::IsTrue) => (Domain::Bool(Some(true)), Domain::Bool(Some(false))),
            (Domain::Enum(allowed), Test::Equals { label }) => (
                Domain::Enum(allowed.iter().filter(|l| *l == label).cloned().collect()),
                Domain::Enum(allowed.iter().filter(|l| *l != label).cloned().collect()),
            ),
            _ => (self.clone(), self.clone()),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Domain::Int { lo, hi } => lo > hi,
            Domain::Bool(_) => false,
            Domain::Enum(allowed) => allowed.is_empty(),
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> Value {
        match self {
            Domain::Int { lo, hi } => Value::from(rng.uniform_i64(*lo, *hi)),
            Domain::Bool(Some(b)) => Value::from(*b),
            Domain::Bool(None) => Value::from(rng.below(2) == 1),
            Domain::Enum(allowed) => Value::from(rng.pick(allowed).as_str()),
        }
    }
}

impl DecisionTree {
    pub fn classify(&self, input: &[Value]) -> Result<&Label, Error> {
        if input.len() != self.attributes.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} attribute values, got {}",
                self.attributes.len(),
                input.len()
            )));
        }
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { label } => return Ok(label),
                TreeNode::Split { attribute, test, yes, no } => {
                    let v = &input[*attribute];
                    let passed = match test {
                        Test::Threshold { op, threshold } => {
                            let x = v.as_i64().ok_or_else(|| Error::InvalidInput(format!("{v} is not an integer")))?;
                            op.holds(x as f64, *threshold as f64)
                        }
                        Test::IsTrue => v.as_bool().ok_or_else(|| Error::InvalidInput(format!("{v} is not a boolean")))?,
                        Test::Equals { label } => {
                            v.as_str().ok_or_else(|| Error::InvalidInput(format!("{v} is not a string")))? == label
                        }
                    };
                    node = if passed { yes } else { no };
                }
            }
        }
    }

    /// Every leaf with the per-attribute domains that reach it, left to right.
    pub fn leaf_domains(&self) -> Vec<(&Label, Vec<Domain>)> {
        fn walk<'a>(node: &'a TreeNode, doms: Vec<Domain>, out: &mut Vec<(&'a Label, Vec<Domain>)>) {
            match node {
                TreeNode::Leaf { label } => out.push((label, doms)),
                TreeNode::Split { attribute, test, yes, no } => {
                    let (y, n) = doms[*attribute].split(test);
                    let mut yd = doms.clone();
                    yd[*attribute] = y;
                    let mut nd = doms;
                    nd[*attribute] = n;
                    walk(yes, yd, out);
                    walk(no, nd, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, self.attributes.iter().map(|a| Domain::full(&a.ty)).collect(), &mut out);
        out
    }
}

fn gen_attributes(params: &TreeParams, rng: &mut RngStream) -> Vec<Attribute> {
    let count = rng.uniform_usize(params.attributes.0, params.attributes.1);
    let mut ints = INT_ATTRIBUTES.to_vec();
    let mut bools = BOOL_ATTRIBUTES.to_vec();
    let mut enums = ENUM_ATTRIBUTES.to_vec();
    rng.shuffle(&mut ints);
    rng.shuffle(&mut bools);
    rng.shuffle(&mut enums);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let weights = [ints.len() as f64, bools.len() as f64, enums.len() as f64];
        let attr = match rng.weighted(&weights) {
            0 => {
                let (lo, hi) = params.int_bounds;
                let a = rng.uniform_i64(lo, hi - 1);
                let b = rng.uniform_i64(a + 1, hi);
                Attribute { name: ints.pop().expect("weighted").to_string(), ty: AttrType::IntRange { lo: a, hi: b } }
            }
            1 => Attribute { name: bools.pop().expect("weighted").to_string(), ty: AttrType::Boolean },
            _ => {
                let (name, values) = enums.pop().expect("weighted");
                let mut pool = values.to_vec();
                rng.shuffle(&mut pool);
                let k = rng.uniform_usize(2, pool.len().min(4));
                Attribute { name: name.to_string(), ty: AttrType::Enum { labels: pool[..k].iter().map(|s| s.to_string()).collect() } }
            }
        };
        out.push(attr);
    }
    out
}

fn pick_test(domain: &Domain, rng: &mut RngStream) -> Test {
    match domain {
        Domain::Int { lo, hi } => {
            let op = *rng.pick(&[CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge]);
            let threshold = match op {
                CmpOp::Le | CmpOp::Gt => rng.uniform_i64(*lo, hi - 1),
                _ => rng.uniform_i64(lo + 1, *hi),
            };
            Test::Threshold { op, threshold }
        }
        Domain::Bool(_) => Test::IsTrue,
        Domain::Enum(allowed) => Test::Equals { label: rng.pick(allowed).clone() },
    }
}

/// Grows a tree of unlabeled leaves. Every test splits a still-open domain,
/// so both branches of every split are reachable.
fn grow(doms: &[Domain], depth_left: usize, is_root: bool, rng: &mut RngStream) -> TreeNode {
    let open: Vec<usize> = (0..doms.len()).filter(|&i| doms[i].splittable()).collect();
    let stop = depth_left == 0 || open.is_empty() || (!is_root && rng.chance(0.3));
    if stop {
        return TreeNode::Leaf { label: Label::Int(-1) };
    }
    let attribute = *rng.pick(&open);
    let test = pick_test(&doms[attribute], rng);
    let (y, n) = doms[attribute].split(&test);
    let mut yd = doms.to_vec();
    yd[attribute] = y;
    let mut nd = doms.to_vec();
    nd[attribute] = n;
    let yes = grow(&yd, depth_left - 1, false, rng);
    let no = grow(&nd, depth_left - 1, false, rng);
    TreeNode::Split { attribute, test, yes: Box::new(yes), no: Box::new(no) }
}

fn assign_labels(node: &mut TreeNode, labels: &mut impl Iterator<Item = Label>) {
    match node {
        TreeNode::Leaf { label } => *label = labels.next().expect("one label per leaf"),
        TreeNode::Split { yes, no, .. } => {
            assign_labels(yes, labels);
            assign_labels(no, labels);
        }
    }
}

fn redundant_split(node: &TreeNode) -> bool {
    match node {
        TreeNode::Leaf { .. } => false,
        TreeNode::Split { yes, no, .. } => {
            if let (TreeNode::Leaf { label: a }, TreeNode::Leaf { label: b }) = (&**yes, &**no) {
                if a == b {
                    return true;
                }
            }
            redundant_split(yes) || redundant_split(no)
        }
    }
}

fn build_candidate(params: &TreeParams, rng: &mut RngStream) -> Option<DecisionTree> {
    let attributes = gen_attributes(params, rng);
    let labels: Vec<Label> = if params.text_labels {
        let mut pool = TEXT_LABELS.to_vec();
        rng.shuffle(&mut pool);
        pool[..params.labels].iter().map(|s| Label::Text(s.to_string())).collect()
    } else {
        (1..=params.labels as i64).map(Label::Int).collect()
    };
    let doms: Vec<Domain> = attributes.iter().map(|a| Domain::full(&a.ty)).collect();
    let mut root = grow(&doms, params.max_depth, true, rng);
    let leaf_count = root.leaves().len();
    if leaf_count < labels.len() {
        return None;
    }
    let mut assignment = labels.clone();
    for _ in labels.len()..leaf_count {
        assignment.push(rng.pick(&labels).clone());
    }
    rng.shuffle(&mut assignment);
    assign_labels(&mut root, &mut assignment.into_iter());
    Some(DecisionTree { attributes, labels, root })
}

/// Path-consistency: every leaf's path constraints leave a non-empty domain.
pub fn all_leaves_reachable(tree: &DecisionTree) -> bool {
    tree.leaf_domains().iter().all(|(_, doms)| doms.iter().all(|d| !d.is_empty()))
}

pub fn gen_decision_tree(params: &TreeParams, stream: &mut RngStream) -> Result<DecisionTree, Error> {
    params.validate()?;
    let policy = RetryPolicy::exercise("decision tree");
    let accepted = generate_with_retry(stream, &policy, |r| build_candidate(params, r), |t| {
        let used: Vec<&Label> = t.root.leaves();
        t.root.depth() <= params.max_depth
            && t.labels.iter().all(|l| used.contains(&l))
            && !redundant_split(&t.root)
            && all_leaves_reachable(t)
    })?;
    Ok(accepted.value)
}
