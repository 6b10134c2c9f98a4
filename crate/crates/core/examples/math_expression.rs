//! A random function definition, its LaTeX, and a few values.

use exgen::notation::math::{gen_math_exercise, MathParams};
use exgen::render::latex::latex_definition;
use exgen::{derive_seed, split_stream};

fn main() {
    let seed = derive_seed("demo", "math", 0).unwrap();
    let mut stream = split_stream(seed, "exercise");
    let ex = gen_math_exercise(&MathParams::default(), &mut stream).unwrap();

    println!("{}", latex_definition(&ex));
    for x in -2..=2 {
        let args: Vec<f64> = ex.parameters.iter().map(|_| x as f64).collect();
        match ex.evaluate(&args) {
            Ok(y) => println!("f({x}, ...) = {y}"),
            Err(e) => println!("f({x}, ...) undefined: {e}"),
        }
    }

    // Recurrences: f(n) defined in terms of f(n-1), f(n-2).
    let rec = MathParams { recursion: true, ..MathParams::default() };
    let ex = gen_math_exercise(&rec, &mut stream).unwrap();
    println!("{}", latex_definition(&ex));
    let values: Vec<String> = (0..8).map(|n| ex.evaluate(&[n as f64]).map_or("-".into(), |v| v.to_string())).collect();
    println!("f(0..8) = {}", values.join(", "));
}
