//! Straightforward re-implementations used as test oracles. None of these
//! call into the library's own algorithms.

use std::collections::{BTreeMap, VecDeque};

use exgen::expr::CmpOp;
use exgen::format::binary::FormatNode;
use exgen::format::bitfield::BitLayout;
use exgen::format::table::{Axis, CellTransform, SortOrder, TableOp};
use exgen::notation::fsm::FsmSpec;
use exgen::notation::tree::{DecisionTree, Test, TreeNode};
use serde_json::{Map, Value};

/// Seeds computed offline with Python's hashlib:
/// `int.from_bytes(sha256(f"{s}\x1f{slot}\x1f{v}".encode()).digest()[:8], "big")`.
pub const SEED_GOLDENS: [(&str, &str, u64, u64); 4] = [
    ("alice", "hw1", 0, 0x4e49_7193_4819_064d),
    ("alice", "hw1", 1, 0x4262_58a4_2f3f_f8ff),
    ("bob", "hw1", 0, 0xedac_a96c_6845_87a3),
    ("студент", "lab-2", 42, 0xc77a_095b_ce06_1681),
];

/// First three draws of the "exercise" and "tests" streams under alice/hw1/0.
pub const STREAM_GOLDENS: [(&str, [u64; 3]); 2] = [
    ("exercise", [0x3e71_34a2_9d8f_89ea, 0x266f_e037_675b_b6c9, 0x2ca1_99a4_ca2d_ad9c]),
    ("tests", [0x1db6_ebf6_05b1_b541, 0x0840_ec45_c3b8_41f4, 0x1c31_a902_75e4_6d21]),
];

// ---- tables ----

pub type Grid = Vec<Vec<String>>;

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn phone_area(cell: &str) -> Option<String> {
    // "+D{1,3} (DDD) DDD-DD-DD"
    let rest = cell.strip_prefix('+')?;
    let (cc, rest) = rest.split_once(' ')?;
    if !is_digits(cc) || cc.len() > 3 {
        return None;
    }
    let rest = rest.strip_prefix('(')?;
    let (area, rest) = rest.split_once(") ")?;
    let parts: Vec<&str> = rest.split('-').collect();
    let ok = area.len() == 3
        && is_digits(area)
        && parts.len() == 3
        && parts.iter().zip([3, 2, 2]).all(|(p, n)| p.len() == n && is_digits(p));
    ok.then(|| area.to_string())
}

fn iso_date(cell: &str) -> Option<String> {
    let parts: Vec<&str> = cell.split('.').collect();
    let ok = parts.len() == 3 && parts.iter().zip([2, 2, 4]).all(|(p, n)| p.len() == n && is_digits(p));
    ok.then(|| format!("{}-{}-{}", parts[2], parts[1], parts[0]))
}

fn transform_cell(t: CellTransform, cell: &str) -> Option<String> {
    if cell.is_empty() {
        return Some(String::new());
    }
    match t {
        CellTransform::PhoneAreaCode => phone_area(cell),
        CellTransform::DateIso => iso_date(cell),
        CellTransform::Lowercase => Some(cell.to_lowercase()),
    }
}

fn cols(g: &Grid) -> usize {
    if g.is_empty() {
        0
    } else {
        g[0].len()
    }
}

fn col_of(g: &Grid, c: usize) -> Vec<String> {
    g.iter().map(|r| r[c].clone()).collect()
}

fn keep_cols(g: &Grid, keep: &[usize]) -> Grid {
    g.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect()
}

/// Applies one op naively; `None` when its precondition fails.
pub fn naive_op(op: &TableOp, g: &Grid) -> Option<Grid> {
    let w = cols(g);
    match *op {
        TableOp::SplitColumn { column, separator } => {
            if column >= w || !g.iter().any(|r| r[column].contains(separator)) {
                return None;
            }
            let pieces: Vec<Vec<String>> =
                g.iter().map(|r| r[column].split(separator).map(String::from).collect()).collect();
            let n = pieces.iter().map(Vec::len).max().unwrap_or(1);
            let mut out = Vec::new();
            for (r, mut p) in g.iter().zip(pieces) {
                while p.len() < n {
                    p.push(String::new());
                }
                let mut row = r[..column].to_vec();
                row.extend(p);
                row.extend(r[column + 1..].iter().cloned());
                out.push(row);
            }
            Some(out)
        }
        TableOp::DeleteEmptyRowsCols => {
            let rows: Grid = g.iter().filter(|r| r.iter().any(|c| !c.is_empty())).cloned().collect();
            let keep: Vec<usize> = (0..cols(&rows)).filter(|&c| rows.iter().any(|r| !r[c].is_empty())).collect();
            Some(keep_cols(&rows, &keep))
        }
        TableOp::Dedupe { axis: Axis::Rows } => {
            let mut out: Grid = Vec::new();
            for r in g {
                if !out.iter().any(|o| o == r) {
                    out.push(r.clone());
                }
            }
            Some(out)
        }
        TableOp::Dedupe { axis: Axis::Cols } => {
            let mut keep: Vec<usize> = Vec::new();
            for c in 0..w {
                if !keep.iter().any(|&k| col_of(g, k) == col_of(g, c)) {
                    keep.push(c);
                }
            }
            Some(keep_cols(g, &keep))
        }
        TableOp::SortBy { column, order } => {
            if column >= w {
                return None;
            }
            // Numeric keys first (ascending), then text; insertion sort keeps ties in place.
            let key = |s: &str| match s.parse::<i64>() {
                Ok(n) => (0, n, String::new()),
                Err(_) => (1, 0, s.to_string()),
            };
            let mut out: Grid = Vec::new();
            for r in g {
                let k = key(&r[column]);
                let at = out
                    .iter()
                    .position(|o| {
                        let ko = key(&o[column]);
                        match order {
                            SortOrder::Asc => ko > k,
                            SortOrder::Desc => ko < k,
                        }
                    })
                    .unwrap_or(out.len());
                out.insert(at, r.clone());
            }
            Some(out)
        }
        TableOp::CellTransformByExample { column, transform } => {
            if column >= w || g.iter().all(|r| r[column].is_empty()) {
                return None;
            }
            let mut out = g.clone();
            for r in &mut out {
                r[column] = transform_cell(transform, &r[column])?;
            }
            Some(out)
        }
        TableOp::Transpose => Some((0..w).map(|c| col_of(g, c)).collect()),
    }
}

pub fn naive_pipeline(g: &Grid, ops: &[TableOp]) -> Option<Grid> {
    if ops.is_empty() {
        return None;
    }
    ops.iter().try_fold(g.clone(), |acc, op| naive_op(op, &acc))
}

// ---- binary formats ----

fn read_le(bytes: &[u8], at: usize, n: usize) -> Option<u64> {
    let chunk = bytes.get(at..at + n)?;
    Some(chunk.iter().rev().fold(0u64, |acc, &b| (acc << 8) | b as u64))
}

/// Decodes `node` at `at`; returns the value and the first byte after its in-place block.
pub fn naive_decode(node: &FormatNode, bytes: &[u8], at: usize) -> Option<(Value, usize)> {
    match node {
        FormatNode::U8 => Some((Value::from(read_le(bytes, at, 1)?), at + 1)),
        FormatNode::U16 => Some((Value::from(read_le(bytes, at, 2)?), at + 2)),
        FormatNode::U32 => Some((Value::from(read_le(bytes, at, 4)?), at + 4)),
        FormatNode::Ref { target } => {
            let off = read_le(bytes, at, 2)? as usize;
            let (v, _) = naive_decode(target, bytes, off)?;
            Some((v, at + 2))
        }
        FormatNode::Array { count, element } => {
            let mut items = Vec::new();
            let mut p = at;
            for _ in 0..*count {
                let (v, next) = naive_decode(element, bytes, p)?;
                items.push(v);
                p = next;
            }
            Some((Value::Array(items), p))
        }
        FormatNode::Struct { fields } => {
            let mut obj = Map::new();
            let mut p = at;
            for f in fields {
                let (v, next) = naive_decode(&f.node, bytes, p)?;
                obj.insert(f.name.clone(), v);
                p = next;
            }
            Some((Value::Object(obj), p))
        }
    }
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub depth: usize,
    pub size: usize,
    pub arrays: usize,
    pub structs: usize,
    pub arrays_of_structs: usize,
}

/// Explicit-stack traversal; size counts every byte written, payloads included.
pub fn naive_shape(root: &FormatNode) -> Shape {
    let mut s = Shape::default();
    let mut stack: Vec<(&FormatNode, usize, usize)> = vec![(root, 1, 1)];
    while let Some((node, level, copies)) = stack.pop() {
        s.depth = s.depth.max(level);
        match node {
            FormatNode::U8 => s.size += copies,
            FormatNode::U16 => s.size += 2 * copies,
            FormatNode::U32 => s.size += 4 * copies,
            FormatNode::Ref { target } => {
                s.size += 2 * copies;
                stack.push((target, level + 1, copies));
            }
            FormatNode::Array { count, element } => {
                s.arrays += 1;
                if let FormatNode::Struct { .. } = **element {
                    s.arrays_of_structs += 1;
                }
                stack.push((element, level + 1, copies * count));
            }
            FormatNode::Struct { fields } => {
                s.structs += 1;
                for f in fields {
                    stack.push((&f.node, level + 1, copies));
                }
            }
        }
    }
    s
}

// ---- bit fields ----

/// Moves one bit at a time.
pub fn bitwise_permute(word: u64, input: &BitLayout, output: &BitLayout) -> u64 {
    let positions = |l: &BitLayout| -> BTreeMap<String, (u32, u32)> {
        let mut top = l.word_size;
        let mut m = BTreeMap::new();
        for f in &l.fields {
            top -= f.width;
            m.insert(f.name.clone(), (top, f.width));
        }
        m
    };
    let from = positions(input);
    let to = positions(output);
    let mut out = 0u64;
    for (name, (src, width)) in &from {
        let (dst, _) = to[name];
        for b in 0..*width {
            if word >> (src + b) & 1 == 1 {
                out |= 1 << (dst + b);
            }
        }
    }
    out
}

// ---- automata ----

/// Every (state, symbol) has a valid target and every state is reachable.
pub fn fsm_total_and_reachable(m: &FsmSpec) -> bool {
    let n = m.states.len();
    if m.transitions.len() != n || m.transitions.iter().any(|r| r.len() != m.alphabet.len() || r.iter().any(|&d| d >= n)) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([m.initial]);
    seen[m.initial] = true;
    while let Some(s) = queue.pop_front() {
        for &d in &m.transitions[s] {
            if !seen[d] {
                seen[d] = true;
                queue.push_back(d);
            }
        }
    }
    seen.into_iter().all(|b| b)
}

/// Replays a trace through a name-keyed copy of the transition table.
pub fn replay(m: &FsmSpec, calls: &[String]) -> Option<Vec<String>> {
    let mut table: BTreeMap<(&str, &str), &str> = BTreeMap::new();
    for (s, row) in m.transitions.iter().enumerate() {
        for (c, &d) in row.iter().enumerate() {
            table.insert((&m.states[s].name, &m.alphabet[c]), &m.states[d].name);
        }
    }
    let output: BTreeMap<&str, &str> = m.states.iter().map(|s| (s.name.as_str(), s.output.as_str())).collect();
    let mut cur = m.states[m.initial].name.as_str();
    let mut out = Vec::new();
    for call in calls {
        cur = table.get(&(cur, call.as_str()))?;
        out.push(output[cur].to_string());
    }
    Some(out)
}

// ---- decision trees ----

fn cmp(op: CmpOp, a: i64, b: i64) -> bool {
    match op {
        CmpOp::Lt => a < b,
        CmpOp::Le => a <= b,
        CmpOp::Gt => a > b,
        CmpOp::Ge => a >= b,
        CmpOp::Eq => a == b,
        CmpOp::Ne => a != b,
    }
}

pub fn walk_tree(t: &DecisionTree, input: &[Value]) -> Option<Value> {
    let mut node = &t.root;
    loop {
        match node {
            TreeNode::Leaf { label } => return Some(serde_json::to_value(label).ok()?),
            TreeNode::Split { attribute, test, yes, no } => {
                let v = input.get(*attribute)?;
                let go = match test {
                    Test::Threshold { op, threshold } => cmp(*op, v.as_i64()?, *threshold),
                    Test::IsTrue => v.as_bool()?,
                    Test::Equals { label } => v.as_str()? == label,
                };
                node = if go { yes } else { no };
            }
        }
    }
}
