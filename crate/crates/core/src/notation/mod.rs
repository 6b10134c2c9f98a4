//! Notation-to-code exercise generators.

pub mod fsm;
pub mod math;
pub mod tree;

pub use fsm::{gen_fsm, gen_walk_trace, FsmParams, FsmSpec, WalkTrace};
pub use math::{gen_math_exercise, MathExercise, MathParams};
pub use tree::{gen_decision_tree, DecisionTree, TreeParams};
