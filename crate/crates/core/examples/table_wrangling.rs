//! A messy table and the pipeline that cleans it.

use exgen::format::table::{gen_table_exercise, render_text, TableParams};
use exgen::render::text::pipeline_steps;
use exgen::RngStream;

fn main() {
    let ex = gen_table_exercise(&TableParams::default(), &mut RngStream::from_state(5)).unwrap();
    println!("input:\n{}", render_text(&ex.input));
    println!("steps:\n{}", pipeline_steps(&ex.pipeline));
    println!("expected:\n{}", render_text(&ex.expected().unwrap()));
}
