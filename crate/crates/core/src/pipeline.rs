//! Seed to bundle: derive the seed, generate an exercise, build its suite,
//! and start over with a fresh exercise whenever the suite cannot be built.

use crate::error::{Error, Exhausted};
use crate::exercise::{gen_exercise, Exercise, ExerciseKind, GenParams};
use crate::render::{render_exercise, ExerciseBundle, Provenance};
use crate::seed::{derive_seed, split_stream, Seed64, EXERCISE_ATTEMPTS};
use crate::testset::{gen_test_suite, SuiteConstraints, TestSuite};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Request {
    pub student: String,
    pub slot: String,
    pub variant: u64,
    pub kind: ExerciseKind,
}

impl Request {
    pub fn new(student: &str, slot: &str, variant: u64, kind: ExerciseKind) -> Self {
        Self { student: student.into(), slot: slot.into(), variant, kind }
    }
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub seed: Seed64,
    pub exercise: Exercise,
    pub suite: TestSuite,
    /// Exercises thrown away because no suite could be built for them.
    pub regenerations: u32,
}

/// Runs generation for an already derived seed.
pub fn generate_from_seed(
    seed: Seed64,
    kind: ExerciseKind,
    params: &GenParams,
    constraints: &SuiteConstraints,
) -> Result<Generated, Error> {
    let mut ex_stream = split_stream(seed, "exercise");
    let mut test_stream = split_stream(seed, "tests");
    for attempt in 0..EXERCISE_ATTEMPTS {
        let exercise = gen_exercise(kind, params, &mut ex_stream)?;
        match gen_test_suite(&exercise, constraints, &mut test_stream) {
            Ok(suite) => return Ok(Generated { seed, exercise, suite, regenerations: attempt }),
            Err(Error::Exhausted(_)) => continue,
            Err(other) => return Err(other),
        }
    }
    Err(Exhausted { what: format!("{kind} exercise with a complete test suite"), attempts: EXERCISE_ATTEMPTS }.into())
}

pub fn generate(req: &Request, params: &GenParams) -> Result<Generated, Error> {
    let seed = derive_seed(&req.student, &req.slot, req.variant)?;
    generate_from_seed(seed, req.kind, params, &SuiteConstraints::for_kind(req.kind))
}

pub fn provenance(req: &Request, seed: Seed64) -> Provenance {
    Provenance { student: req.student.clone(), slot: req.slot.clone(), variant: req.variant, seed: seed.to_string() }
}

/// The full pipeline: generate, build the suite, render.
pub fn generate_bundle(req: &Request, params: &GenParams) -> Result<ExerciseBundle, Error> {
    let g = generate(req, params)?;
    Ok(render_exercise(&g.exercise, &g.suite, provenance(req, g.seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::math::MathParams;

    #[test]
    fn small_domains_force_regeneration() {
        // One variable over [0, 3] has 4 inputs, two variables have 16: only
        // the latter can carry 10 distinct cases.
        let params = GenParams {
            math: MathParams { variables: (1, 2), inputs: (0, 3), piecewise: false, sum_loop: false, ..MathParams::default() },
            ..GenParams::default()
        };
        let mut regenerated = 0;
        for v in 0..20 {
            let g = generate(&Request::new("bob", "w1", v, ExerciseKind::Math), &params).unwrap();
            assert_eq!(g.suite.cases.len(), 10);
            let Exercise::Math(m) = &g.exercise else { unreachable!() };
            assert_eq!(m.parameters.len(), 2);
            regenerated += g.regenerations;
        }
        assert!(regenerated > 0);
    }
}
