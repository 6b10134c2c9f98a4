//! Generator throughput: full pipeline (exercise, suite, bundle) per iteration.

use std::time::{Duration, Instant};

use crate::error::Error;
use crate::exercise::{ExerciseKind, GenParams};
use crate::pipeline::{generate_bundle, Request};

#[derive(Clone, Debug, PartialEq)]
pub struct BenchResult {
    pub kind: ExerciseKind,
    pub exercises: u64,
    pub elapsed: Duration,
}

impl BenchResult {
    pub fn rate(&self) -> f64 {
        self.exercises as f64 / self.elapsed.as_secs_f64().max(1e-9)
    }
}

/// Generates bundles for consecutive variants until `budget` has passed
/// (at least one bundle is always produced).
pub fn bench(kind: ExerciseKind, params: &GenParams, budget: Duration) -> Result<BenchResult, Error> {
    let start = Instant::now();
    let mut n = 0u64;
    loop {
        let bundle = generate_bundle(&Request::new("bench", "throughput", n, kind), params)?;
        std::hint::black_box(bundle.to_canonical_json());
        n += 1;
        if start.elapsed() >= budget {
            break;
        }
    }
    Ok(BenchResult { kind, exercises: n, elapsed: start.elapsed() })
}

const HEADER: &str = "Type of generated exercise";

pub fn format_table(results: &[BenchResult]) -> String {
    let w = results.iter().map(|r| r.kind.title().len()).chain([HEADER.len()]).max().unwrap_or(0);
    let mut out = format!("{HEADER:<w$}  Generator performance (exercises/sec)\n");
    for r in results {
        out.push_str(&format!("{:<w$}  {:.1}\n", r.kind.title(), r.rate()));
    }
    out
}
