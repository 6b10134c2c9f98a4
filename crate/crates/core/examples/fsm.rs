//! A Moore machine, its diagram, and a random walk through it.

use exgen::interp::run_machine;
use exgen::notation::fsm::{gen_fsm, gen_walk_trace, FsmParams};
use exgen::render::fsm_dot;
use exgen::RngStream;

fn main() {
    let mut rng = RngStream::from_state(3);
    let m = gen_fsm(&FsmParams::default(), &mut rng).unwrap();
    print!("{}", fsm_dot(&m));

    let walk = gen_walk_trace(&m, (6, 10), &mut rng).unwrap();
    let replayed = run_machine(&m, &walk.inputs).unwrap();
    assert_eq!(replayed, walk.outputs);
    for (call, out) in walk.inputs.iter().zip(&walk.outputs) {
        println!("// {call}() -> {out}");
    }
}
