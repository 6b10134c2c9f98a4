//! Binary-format parsing exercises.
//!
//! A [`FormatTree`] describes a little-endian record layout built from
//! unsigned integers, fixed-count arrays, structs, and references. A reference
//! is a 16-bit absolute byte offset to a payload stored after the root block.
//! Payloads are appended depth-first in the order their references are
//! written, and every reference gets its own copy.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::Error;
use crate::seed::{generate_with_retry, RetryPolicy, RngStream};

pub const FIELD_POOL: [&str; 16] = [
    "id", "size", "flags", "kind", "count", "offset", "mode", "tag", "value", "width", "height", "code", "seq",
    "crc", "level", "mask",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructField {
    pub name: String,
    pub node: FormatNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FormatNode {
    U8,
    U16,
    U32,
    Array { count: usize, element: Box<FormatNode> },
    Struct { fields: Vec<StructField> },
    Ref { target: Box<FormatNode> },
}

impl FormatNode {
    /// Bytes this node occupies in place (a reference counts its 2-byte offset only).
    pub fn direct_size(&self) -> usize {
        match self {
            FormatNode::U8 => 1,
            FormatNode::U16 => 2,
            FormatNode::U32 => 4,
            FormatNode::Ref { .. } => 2,
            FormatNode::Array { count, element } => count * element.direct_size(),
            FormatNode::Struct { fields } => fields.iter().map(|f| f.node.direct_size()).sum(),
        }
    }

    /// Bytes including every referenced payload.
    pub fn total_size(&self) -> usize {
        match self {
            FormatNode::U8 => 1,
            FormatNode::U16 => 2,
            FormatNode::U32 => 4,
            FormatNode::Ref { target } => 2 + target.total_size(),
            FormatNode::Array { count, element } => count * element.total_size(),
            FormatNode::Struct { fields } => fields.iter().map(|f| f.node.total_size()).sum(),
        }
    }

    fn children(&self) -> Vec<&FormatNode> {
        match self {
            FormatNode::U8 | FormatNode::U16 | FormatNode::U32 => vec![],
            FormatNode::Array { element, .. } => vec![element],
            FormatNode::Struct { fields } => fields.iter().map(|f| &f.node).collect(),
            FormatNode::Ref { target } => vec![target],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormatTree {
    pub root: FormatNode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormatMetrics {
    /// Nodes on the longest root-to-leaf path.
    pub depth: usize,
    /// Serialized bytes, referenced payloads included.
    pub size: usize,
    pub arrays: usize,
    pub structs: usize,
    pub arrays_of_structs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FormatBounds {
    pub depth: (usize, usize),
    pub size: (usize, usize),
    pub min_arrays: usize,
    pub min_structs: usize,
    pub min_arrays_of_structs: usize,
}

impl Default for FormatBounds {
    /// `2 <= D <= 4`, `40 <= S <= 160`, `A >= 4`, `R >= 4`, `A_r > 0`.
    fn default() -> Self {
        Self { depth: (2, 4), size: (40, 160), min_arrays: 4, min_structs: 4, min_arrays_of_structs: 1 }
    }
}

impl FormatBounds {
    pub fn admits(&self, m: &FormatMetrics) -> bool {
        (self.depth.0..=self.depth.1).contains(&m.depth)
            && (self.size.0..=self.size.1).contains(&m.size)
            && m.arrays >= self.min_arrays
            && m.structs >= self.min_structs
            && m.arrays_of_structs >= self.min_arrays_of_structs
    }
}

pub fn metrics(tree: &FormatTree) -> FormatMetrics {
    fn walk(node: &FormatNode, depth: usize, m: &mut FormatMetrics) {
        m.depth = m.depth.max(depth);
        match node {
            FormatNode::Array { element, .. } => {
                m.arrays += 1;
                if matches!(**element, FormatNode::Struct { .. }) {
                    m.arrays_of_structs += 1;
                }
            }
            FormatNode::Struct { .. } => m.structs += 1,
            _ => {}
        }
        for c in node.children() {
            walk(c, depth + 1, m);
        }
    }
    let mut m = FormatMetrics { depth: 0, size: tree.root.total_size(), arrays: 0, structs: 0, arrays_of_structs: 0 };
    walk(&tree.root, 1, &mut m);
    m
}

pub fn check_format_constraints(tree: &FormatTree, bounds: &FormatBounds) -> (bool, FormatMetrics) {
    let m = metrics(tree);
    (bounds.admits(&m), m)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BinaryParams {
    pub bounds: FormatBounds,
    pub fields: (usize, usize),
    pub array_len: (usize, usize),
    pub allow_structs: bool,
    pub allow_arrays: bool,
    pub allow_refs: bool,
}

impl Default for BinaryParams {
    fn default() -> Self {
        Self {
            bounds: FormatBounds::default(),
            fields: (2, 4),
            array_len: (2, 4),
            allow_structs: true,
            allow_arrays: true,
            allow_refs: true,
        }
    }
}

impl BinaryParams {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if self.fields.0 < 1 || self.fields.0 > self.fields.1 || self.fields.1 > FIELD_POOL.len() {
            return bad("struct field count range must lie in [1, 16]");
        }
        if self.array_len.0 < 1 || self.array_len.0 > self.array_len.1 {
            return bad("array length range must start at 1 or more");
        }
        if self.bounds.depth.0 > self.bounds.depth.1 || self.bounds.size.0 > self.bounds.size.1 {
            return bad("bounds must be non-empty");
        }
        if self.bounds.depth.1 == 0 {
            return bad("depth bound must allow at least the root");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    U8,
    U16,
    U32,
    Array,
    Struct,
    Ref,
}

struct Grower<'a> {
    params: &'a BinaryParams,
    rng: &'a mut RngStream,
}

impl Grower<'_> {
    fn leaf(&mut self) -> FormatNode {
        match self.rng.weighted(&[2.0, 2.0, 1.0]) {
            0 => FormatNode::U8,
            1 => FormatNode::U16,
            _ => FormatNode::U32,
        }
    }

    /// `depth_left` counts this node; at 1 only a base type fits (forced leaf).
    fn grow(&mut self, depth_left: usize, parent_is_array: bool) -> FormatNode {
        if depth_left <= 1 {
            return self.leaf();
        }
        let p = self.params;
        let shapes = [Shape::U8, Shape::U16, Shape::U32, Shape::Array, Shape::Struct, Shape::Ref];
        let struct_weight = if parent_is_array { 6.0 } else { 2.5 };
        let weights = [
            1.0,
            1.0,
            0.7,
            if p.allow_arrays && !parent_is_array { 2.5 } else { 0.0 },
            if p.allow_structs { struct_weight } else { 0.0 },
            if p.allow_refs && !parent_is_array { 0.8 } else { 0.0 },
        ];
        match shapes[self.rng.weighted(&weights)] {
            Shape::U8 => FormatNode::U8,
            Shape::U16 => FormatNode::U16,
            Shape::U32 => FormatNode::U32,
            Shape::Array => {
                let count = self.rng.uniform_usize(p.array_len.0, p.array_len.1);
                FormatNode::Array { count, element: Box::new(self.grow(depth_left - 1, true)) }
            }
            Shape::Struct => self.grow_struct(depth_left),
            Shape::Ref => FormatNode::Ref { target: Box::new(self.grow(depth_left - 1, false)) },
        }
    }

    fn grow_struct(&mut self, depth_left: usize) -> FormatNode {
        let n = self.rng.uniform_usize(self.params.fields.0, self.params.fields.1);
        let mut names = FIELD_POOL.to_vec();
        self.rng.shuffle(&mut names);
        let fields = names[..n]
            .iter()
            .map(|name| StructField { name: name.to_string(), node: self.grow(depth_left - 1, false) })
            .collect();
        FormatNode::Struct { fields }
    }
}

fn build_candidate(params: &BinaryParams, rng: &mut RngStream) -> FormatTree {
    let max_depth = params.bounds.depth.1;
    let mut g = Grower { params, rng };
    let root = if params.allow_structs && max_depth >= 2 { g.grow_struct(max_depth) } else { g.grow(max_depth, false) };
    FormatTree { root }
}

/// Random top-down growth with forced leaves at the depth limit, retried
/// until the metrics satisfy `params.bounds`.
pub fn gen_binary_format(params: &BinaryParams, stream: &mut RngStream) -> Result<FormatTree, Error> {
    params.validate()?;
    let policy = RetryPolicy::exercise("binary format");
    let accepted = generate_with_retry(
        stream,
        &policy,
        |r| Some(build_candidate(params, r)),
        |t| check_format_constraints(t, &params.bounds).0,
    )?;
    Ok(accepted.value)
}

/// Fills every leaf with a random value of its width.
pub fn random_value(node: &FormatNode, rng: &mut RngStream) -> Value {
    match node {
        FormatNode::U8 => Value::from(rng.uniform_u64(0, u8::MAX as u64)),
        FormatNode::U16 => Value::from(rng.uniform_u64(0, u16::MAX as u64)),
        FormatNode::U32 => Value::from(rng.uniform_u64(0, u32::MAX as u64)),
        FormatNode::Array { count, element } => Value::Array((0..*count).map(|_| random_value(element, rng)).collect()),
        FormatNode::Struct { fields } => {
            Value::Object(fields.iter().map(|f| (f.name.clone(), random_value(&f.node, rng))).collect::<Map<_, _>>())
        }
        FormatNode::Ref { target } => random_value(target, rng),
    }
}

fn shape_error(what: &str, v: &Value) -> Error {
    Error::InvalidInput(format!("value {v} does not match {what}"))
}

struct Pending<'a> {
    at: usize,
    target: &'a FormatNode,
    value: &'a Value,
}

fn write_direct<'a>(node: &'a FormatNode, value: &'a Value, buf: &mut Vec<u8>, pending: &mut Vec<Pending<'a>>) -> Result<(), Error> {
    let uint = |max: u64| value.as_u64().filter(|v| *v <= max).ok_or_else(|| shape_error("an unsigned integer", value));
    match node {
        FormatNode::U8 => buf.push(uint(u8::MAX as u64)? as u8),
        FormatNode::U16 => buf.extend_from_slice(&(uint(u16::MAX as u64)? as u16).to_le_bytes()),
        FormatNode::U32 => buf.extend_from_slice(&(uint(u32::MAX as u64)? as u32).to_le_bytes()),
        FormatNode::Array { count, element } => {
            let items = value.as_array().filter(|a| a.len() == *count).ok_or_else(|| shape_error("the array", value))?;
            for item in items {
                write_direct(element, item, buf, pending)?;
            }
        }
        FormatNode::Struct { fields } => {
            let obj = value.as_object().ok_or_else(|| shape_error("the struct", value))?;
            for f in fields {
                let v = obj.get(&f.name).ok_or_else(|| shape_error(&format!("field {}", f.name), value))?;
                write_direct(&f.node, v, buf, pending)?;
            }
        }
        FormatNode::Ref { target } => {
            pending.push(Pending { at: buf.len(), target, value });
            buf.extend_from_slice(&[0, 0]);
        }
    }
    Ok(())
}

fn write_block(node: &FormatNode, value: &Value, buf: &mut Vec<u8>) -> Result<(), Error> {
    let mut pending = Vec::new();
    write_direct(node, value, buf, &mut pending)?;
    for p in pending {
        let offset = buf.len();
        let offset16 = u16::try_from(offset).map_err(|_| Error::OffsetOverflow(offset))?;
        buf[p.at..p.at + 2].copy_from_slice(&offset16.to_le_bytes());
        write_block(p.target, p.value, buf)?;
    }
    Ok(())
}

/// Encodes `value` laid out as `tree`.
pub fn encode(tree: &FormatTree, value: &Value) -> Result<Vec<u8>, Error> {
    let mut buf = Vec::with_capacity(tree.root.total_size());
    write_block(&tree.root, value, &mut buf)?;
    if buf.len() > u16::MAX as usize {
        return Err(Error::OffsetOverflow(buf.len()));
    }
    Ok(buf)
}

/// A random instance: its bytes and the value a correct parser must return.
pub fn serialize_instance(tree: &FormatTree, stream: &mut RngStream) -> Result<(Vec<u8>, Value), Error> {
    let value = random_value(&tree.root, stream);
    let bytes = encode(tree, &value)?;
    Ok((bytes, value))
}

fn read_at(node: &FormatNode, bytes: &[u8], pos: &mut usize) -> Result<Value, Error> {
    let mut take = |n: usize| -> Result<&[u8], Error> {
        let chunk = bytes
            .get(*pos..*pos + n)
            .ok_or_else(|| Error::MalformedInstance(format!("read of {n} bytes at {} runs past the end", *pos)))?;
        *pos += n;
        Ok(chunk)
    };
    Ok(match node {
        FormatNode::U8 => Value::from(take(1)?[0]),
        FormatNode::U16 => {
            let b = take(2)?;
            Value::from(u16::from_le_bytes([b[0], b[1]]))
        }
        FormatNode::U32 => {
            let b = take(4)?;
            Value::from(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
        }
        FormatNode::Ref { target } => {
            let b = take(2)?;
            let mut at = u16::from_le_bytes([b[0], b[1]]) as usize;
            read_at(target, bytes, &mut at)?
        }
        FormatNode::Array { count, element } => {
            let mut items = Vec::with_capacity(*count);
            for _ in 0..*count {
                items.push(read_at(element, bytes, pos)?);
            }
            Value::Array(items)
        }
        FormatNode::Struct { fields } => {
            let mut obj = Map::new();
            for f in fields {
                obj.insert(f.name.clone(), read_at(&f.node, bytes, pos)?);
            }
            Value::Object(obj)
        }
    })
}

/// Reference parser: decodes `bytes` laid out as `tree`.
pub fn parse_instance(tree: &FormatTree, bytes: &[u8]) -> Result<Value, Error> {
    let mut pos = 0;
    read_at(&tree.root, bytes, &mut pos)
}
