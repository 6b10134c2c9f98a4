mod common;

use common::dot_reader::read_dot;
use exgen::notation::fsm::{gen_fsm, FsmParams, FsmSpec, State};
use exgen::notation::tree::{gen_decision_tree, TreeNode, TreeParams};
use exgen::render::{fsm_dot, tree_dot};
use exgen::RngStream;

fn three_states() -> FsmSpec {
    FsmSpec {
        states: vec![
            State { name: "A".into(), output: "idle".into() },
            State { name: "B".into(), output: "busy".into() },
            State { name: "C".into(), output: "done".into() },
        ],
        alphabet: vec!["go".into(), "stop".into()],
        transitions: vec![vec![1, 0], vec![2, 0], vec![2, 2]],
        initial: 0,
        edge_count: 3,
    }
}

#[test]
fn three_state_machine() {
    let g = read_dot(&fsm_dot(&three_states())).unwrap();
    assert_eq!(g.nodes.len(), 3);
    // One edge per (state, symbol), self-loops included.
    assert_eq!(g.edges.len(), 6);
    let start: Vec<&String> =
        g.nodes.iter().filter(|(_, a)| a.get("xlabel").map(String::as_str) == Some("start")).map(|(id, _)| id).collect();
    assert_eq!(start.len(), 1);
    assert_eq!(g.nodes[0].1["label"], "A / idle");
    let go_from_b = g.edges.iter().find(|(f, _, a)| f == "s1" && a["label"] == "go").unwrap();
    assert_eq!(go_from_b.1, "s2");
}

#[test]
fn generated_machines_parse_and_match() {
    let mut s = RngStream::from_state(8);
    for _ in 0..200 {
        let m = gen_fsm(&FsmParams::default(), &mut s).unwrap();
        let g = read_dot(&fsm_dot(&m)).unwrap();
        assert_eq!(g.name, "fsm");
        assert_eq!(g.nodes.len(), m.states.len());
        assert_eq!(g.edges.len(), m.states.len() * m.alphabet.len());
        for (from, to, attrs) in &g.edges {
            let f: usize = from[1..].parse().unwrap();
            let t: usize = to[1..].parse().unwrap();
            let c = m.symbol_index(&attrs["label"]).unwrap();
            assert_eq!(m.transitions[f][c], t);
        }
    }
}

fn count(node: &TreeNode) -> (usize, usize) {
    match node {
        TreeNode::Leaf { .. } => (0, 1),
        TreeNode::Split { yes, no, .. } => {
            let (a, b) = count(yes);
            let (c, d) = count(no);
            (a + c + 1, b + d)
        }
    }
}

#[test]
fn generated_trees_parse_and_match() {
    let mut s = RngStream::from_state(9);
    for _ in 0..200 {
        let t = gen_decision_tree(&TreeParams::default(), &mut s).unwrap();
        let g = read_dot(&tree_dot(&t)).unwrap();
        let (splits, leaves) = count(&t.root);
        assert_eq!(g.nodes.len(), splits + leaves);
        assert_eq!(g.edges.len(), 2 * splits);
        let boxes = g.nodes.iter().filter(|(_, a)| a["shape"] == "box").count();
        assert_eq!(boxes, splits);
        for (_, _, a) in &g.edges {
            assert!(a["label"] == "yes" || a["label"] == "no");
        }
    }
}

#[test]
fn quotes_are_escaped() {
    let mut m = three_states();
    m.states[0].output = "say \"hi\"".into();
    let g = read_dot(&fsm_dot(&m)).unwrap();
    assert_eq!(g.nodes[0].1["label"], "A / say \"hi\"");
}
