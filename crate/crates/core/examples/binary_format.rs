//! A binary record layout, one encoded instance, and its decoding.

use exgen::format::binary::{gen_binary_format, metrics, parse_instance, serialize_instance, BinaryParams};
use exgen::render::text::binary_description;
use exgen::RngStream;

fn main() {
    let mut rng = RngStream::from_state(21);
    let tree = gen_binary_format(&BinaryParams::default(), &mut rng).unwrap();
    print!("{}", binary_description(&tree));
    println!("{:?}", metrics(&tree));

    let (bytes, value) = serialize_instance(&tree, &mut rng).unwrap();
    let hex: Vec<String> = bytes.iter().map(|b| format!("{b:02x}")).collect();
    println!("{} bytes: {}", bytes.len(), hex.join(" "));
    let parsed = parse_instance(&tree, &bytes).unwrap();
    assert_eq!(parsed, value);
    println!("{}", serde_json::to_string_pretty(&parsed).unwrap());
}
