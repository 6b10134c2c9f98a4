//! Data-format conversion exercise generators.

pub mod binary;
pub mod bitfield;
pub mod table;

pub use binary::{
    check_format_constraints, gen_binary_format, parse_instance, serialize_instance, BinaryParams, FormatBounds,
    FormatMetrics, FormatNode, FormatTree,
};
pub use bitfield::{apply_bit_permutation, gen_bitfield_exercise, BitLayout, BitfieldExercise, BitfieldParams};
pub use table::{apply_table_pipeline, gen_table_exercise, Table, TableExercise, TableOp, TableParams};
