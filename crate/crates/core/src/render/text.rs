//! Monospace diagrams: bit layouts, table pipelines, binary record layouts.

use crate::format::binary::{FormatNode, FormatTree};
use crate::format::bitfield::BitLayout;
use crate::format::table::{Axis, CellTransform, SortOrder, TableOp};

/// One character per bit, most significant first. Fields repeat their
/// letter, unused bits are `.`, and `|` separates fields.
pub fn bit_diagram(title: &str, layout: &BitLayout) -> String {
    let mut row = String::from("|");
    for f in &layout.fields {
        let tag = f.name.chars().next().unwrap_or('?');
        row.extend(std::iter::repeat(tag).take(f.width as usize));
        row.push('|');
    }
    let unused = layout.word_size - layout.total_width();
    if unused > 0 {
        row.extend(std::iter::repeat('.').take(unused as usize));
        row.push('|');
    }
    let hi = (layout.word_size - 1).to_string();
    let ruler = format!(" {hi:<w$}0", w = row.chars().count() - 2);
    let mut out = format!("{title} ({} bits)\n{row}\n{ruler}\n", layout.word_size);
    for (f, p) in layout.fields.iter().zip(layout.placements()) {
        out.push_str(&format!("  {}: bits {}..{} ({} bits)\n", f.name, p.high_bit(), p.shift, f.width));
    }
    out
}

pub fn describe_op(op: &TableOp) -> String {
    match op {
        TableOp::SplitColumn { column, separator } => {
            format!("split column {column} at the first {separator:?} into two columns")
        }
        TableOp::DeleteEmptyRowsCols => "delete rows and columns whose cells are all empty".into(),
        TableOp::Dedupe { axis: Axis::Rows } => "delete duplicate rows, keeping the first occurrence".into(),
        TableOp::Dedupe { axis: Axis::Cols } => "delete duplicate columns, keeping the first occurrence".into(),
        TableOp::SortBy { column, order } => {
            let dir = match order {
                SortOrder::Asc => "ascending",
                SortOrder::Desc => "descending",
            };
            format!("sort rows by column {column}, {dir} (numbers before text, ties keep their order)")
        }
        TableOp::CellTransformByExample { column, transform } => {
            let example = match transform {
                CellTransform::PhoneAreaCode => "\"+7 (495) 123-45-67\" -> \"495\"",
                CellTransform::DateIso => "\"04.07.2021\" -> \"2021-07-04\"",
                CellTransform::Lowercase => "\"Ada Lovelace\" -> \"ada lovelace\"",
            };
            format!("rewrite every cell of column {column} by example: {example}")
        }
        TableOp::Transpose => "transpose the table".into(),
    }
}

pub fn pipeline_steps(pipeline: &[TableOp]) -> String {
    pipeline.iter().enumerate().map(|(i, op)| format!("{}. {}\n", i + 1, describe_op(op))).collect()
}

fn type_name(node: &FormatNode) -> String {
    match node {
        FormatNode::U8 => "u8".into(),
        FormatNode::U16 => "u16".into(),
        FormatNode::U32 => "u32".into(),
        FormatNode::Array { count, element } => format!("{}[{count}]", type_name(element)),
        FormatNode::Struct { .. } => "struct".into(),
        FormatNode::Ref { target } => format!("u16 offset -> {}", type_name(target)),
    }
}

fn describe_block(name: &str, node: &FormatNode, depth: usize, offset: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    out.push_str(&format!("{pad}+{offset:<4} {name}: {}\n", type_name(node)));
    match node {
        FormatNode::Struct { fields } => {
            let mut at = 0;
            for f in fields {
                describe_block(&f.name, &f.node, depth + 1, at, out);
                at += f.node.direct_size();
            }
        }
        FormatNode::Array { element, .. } => {
            if !matches!(**element, FormatNode::U8 | FormatNode::U16 | FormatNode::U32) {
                describe_block("item", element, depth + 1, 0, out);
            }
        }
        FormatNode::Ref { target } => {
            if !matches!(**target, FormatNode::U8 | FormatNode::U16 | FormatNode::U32) {
                describe_block("*", target, depth + 1, 0, out);
            }
        }
        _ => {}
    }
}

/// Field-by-field layout; `+n` is the byte offset inside the enclosing
/// block. `*` marks the block an offset points at.
pub fn binary_description(tree: &FormatTree) -> String {
    let mut out = String::new();
    describe_block("root", &tree.root, 0, 0, &mut out);
    out
}
