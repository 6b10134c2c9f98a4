//! Deterministic generation of individual programming exercises.
//!
//! Every exercise is a pure function of a student id, a slot name, a variant
//! number, and generator parameters. Six families are provided: math
//! notation, decision trees, finite-state machines, bit-field permutations,
//! table wrangling, and binary formats. Each comes with a test suite checked
//! for uniqueness and coverage, a rendered statement, and a grader that runs
//! a solution process over a JSON-lines protocol.
//!
//! ```
//! use exgen::{generate_bundle, ExerciseKind, GenParams, Request};
//!
//! let req = Request::new("alice", "week3", 0, ExerciseKind::Bitfields);
//! let a = generate_bundle(&req, &GenParams::default()).unwrap();
//! let b = generate_bundle(&req, &GenParams::default()).unwrap();
//! assert_eq!(a.to_canonical_json(), b.to_canonical_json());
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod exercise;
pub mod expr;
pub mod format;
pub mod grader;
pub mod grammar;
pub mod interp;
pub mod notation;
pub mod pipeline;
pub mod render;
pub mod seed;
pub mod testset;

pub use error::{Error, Exhausted};
pub use exercise::{gen_exercise, Exercise, ExerciseKind, GenParams};
pub use grader::{grade, GradeReport, Verdict};
pub use pipeline::{generate, generate_bundle, Generated, Request};
pub use render::{canonical_digest, render_exercise, ExerciseBundle};
pub use seed::{derive_seed, split_stream, RngStream, Seed64};
pub use testset::{gen_test_suite, SuiteConstraints, TestCase, TestSuite};
