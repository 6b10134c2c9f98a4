//! Graphviz DOT for automata and decision trees. One statement per line.

use crate::notation::fsm::FsmSpec;
use crate::notation::tree::{DecisionTree, Label, Test, TreeNode};
use crate::expr::CmpOp;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

/// States become `s<i>` nodes labeled `name / output`; the initial state is
/// drawn bold with a `start` external label. Every `(state, symbol)` slot
/// gets its own edge line.
pub fn fsm_dot(m: &FsmSpec) -> String {
    let mut out = String::from("digraph fsm {\n  rankdir=LR;\n");
    for (i, s) in m.states.iter().enumerate() {
        let label = quote(&format!("{} / {}", s.name, s.output));
        if i == m.initial {
            out.push_str(&format!("  s{i} [label={label}, style=bold, xlabel=\"start\"];\n"));
        } else {
            out.push_str(&format!("  s{i} [label={label}];\n"));
        }
    }
    for (from, row) in m.transitions.iter().enumerate() {
        for (sym, to) in row.iter().enumerate() {
            out.push_str(&format!("  s{from} -> s{to} [label={}];\n", quote(&m.alphabet[sym])));
        }
    }
    out.push_str("}\n");
    out
}

fn plain_cmp(op: CmpOp) -> &'static str {
    match op {
        CmpOp::Lt => "<",
        CmpOp::Le => "<=",
        CmpOp::Gt => ">",
        CmpOp::Ge => ">=",
        CmpOp::Eq => "==",
        CmpOp::Ne => "!=",
    }
}

pub fn test_text(attr: &str, test: &Test) -> String {
    match test {
        Test::Threshold { op, threshold } => format!("{attr} {} {threshold}", plain_cmp(*op)),
        Test::IsTrue => attr.to_string(),
        Test::Equals { label } => format!("{attr} == {label}"),
    }
}

fn label_text(l: &Label) -> String {
    match l {
        Label::Int(n) => n.to_string(),
        Label::Text(s) => s.clone(),
    }
}

/// Splits are boxes, leaves are ellipses; edges are labeled `yes`/`no`.
pub fn tree_dot(t: &DecisionTree) -> String {
    fn walk(t: &DecisionTree, node: &TreeNode, next: &mut usize, nodes: &mut String, edges: &mut String) -> usize {
        let id = *next;
        *next += 1;
        match node {
            TreeNode::Leaf { label } => {
                nodes.push_str(&format!("  n{id} [shape=ellipse, label={}];\n", quote(&label_text(label))));
            }
            TreeNode::Split { attribute, test, yes, no } => {
                let text = test_text(&t.attributes[*attribute].name, test);
                nodes.push_str(&format!("  n{id} [shape=box, label={}];\n", quote(&text)));
                let y = walk(t, yes, next, nodes, edges);
                edges.push_str(&format!("  n{id} -> n{y} [label=\"yes\"];\n"));
                let n = walk(t, no, next, nodes, edges);
                edges.push_str(&format!("  n{id} -> n{n} [label=\"no\"];\n"));
            }
        }
        id
    }
    let (mut nodes, mut edges) = (String::new(), String::new());
    walk(t, &t.root, &mut 0, &mut nodes, &mut edges);
    format!("digraph tree {{\n{nodes}{edges}}}\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::fsm::State;

    #[test]
    fn fsm_lines() {
        let m = FsmSpec {
            states: vec![
                State { name: "A".into(), output: "idle".into() },
                State { name: "B".into(), output: "busy".into() },
            ],
            alphabet: vec!["go".into(), "stop".into()],
            transitions: vec![vec![1, 0], vec![1, 0]],
            initial: 0,
            edge_count: 2,
        };
        let dot = fsm_dot(&m);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 4);
        assert!(dot.contains("s0 [label=\"A / idle\", style=bold, xlabel=\"start\"];"));
        assert!(dot.contains("s1 -> s0 [label=\"stop\"];"));
    }

    #[test]
    fn quoting() {
        assert_eq!(quote("a\"b\\"), "\"a\\\"b\\\\\"");
    }
}
