//! Moving bit fields between two layouts of the same word.

use exgen::format::bitfield::{gen_bitfield_exercise, BitfieldParams};
use exgen::render::text::bit_diagram;
use exgen::RngStream;

fn main() {
    let params = BitfieldParams { word_size: 16, ..BitfieldParams::default() };
    let ex = gen_bitfield_exercise(&params, &mut RngStream::from_state(12)).unwrap();
    print!("{}", bit_diagram("input", &ex.input));
    print!("{}", bit_diagram("output", &ex.output));

    for word in [0x0001, 0x8000, ex.all_ones_word(), 0x1234] {
        println!("{word:#06x} -> {:#06x}", ex.apply(word).unwrap());
    }
}
