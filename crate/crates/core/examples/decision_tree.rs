//! A decision tree drawn as DOT, with one sample input per leaf.

use exgen::notation::tree::{gen_decision_tree, TreeParams};
use exgen::render::tree_dot;
use exgen::RngStream;

fn main() {
    let mut rng = RngStream::from_state(7);
    let params = TreeParams { text_labels: true, ..TreeParams::default() };
    let tree = gen_decision_tree(&params, &mut rng).unwrap();

    print!("{}", tree_dot(&tree));
    let names: Vec<&str> = tree.attributes.iter().map(|a| a.name.as_str()).collect();
    println!("// attributes: {}", names.join(", "));
    for (label, domains) in tree.leaf_domains() {
        let input: Vec<_> = domains.iter().map(|d| d.sample(&mut rng)).collect();
        let got = tree.classify(&input).unwrap();
        println!("// {input:?} -> {got:?} (leaf {label:?})");
    }
}
