//! Bit-field permutation exercises.
//!
//! Fields are packed from the most significant bit down; low bits left over
//! are unused. The task is to move every field from its input position to
//! its output position.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::seed::{generate_with_retry, RetryPolicy, RngStream};

pub const WORD_SIZES: [u32; 4] = [8, 16, 32, 64];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub name: String,
    pub width: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitLayout {
    pub word_size: u32,
    pub fields: Vec<Field>,
}

/// A field's position inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Placement {
    /// Index of the field's lowest bit.
    pub shift: u32,
    pub width: u32,
}

impl Placement {
    pub fn high_bit(&self) -> u32 {
        self.shift + self.width - 1
    }

    pub fn mask(&self) -> u64 {
        field_mask(self.width) << self.shift
    }
}

fn field_mask(width: u32) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

pub fn word_mask(word_size: u32) -> u64 {
    field_mask(word_size)
}

impl BitLayout {
    pub fn total_width(&self) -> u32 {
        self.fields.iter().map(|f| f.width).sum()
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !WORD_SIZES.contains(&self.word_size) {
            return Err(Error::InvalidInput(format!("word size {} not in {{8,16,32,64}}", self.word_size)));
        }
        if self.fields.iter().any(|f| f.width == 0) || self.total_width() > self.word_size {
            return Err(Error::InvalidInput("field widths must be positive and fit the word".into()));
        }
        let mut names: Vec<&str> = self.fields.iter().map(|f| f.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != self.fields.len() {
            return Err(Error::InvalidInput("field names must be distinct".into()));
        }
        Ok(())
    }

    pub fn placements(&self) -> Vec<Placement> {
        let mut top = self.word_size;
        self.fields
            .iter()
            .map(|f| {
                top -= f.width;
                Placement { shift: top, width: f.width }
            })
            .collect()
    }

    pub fn placement_of(&self, name: &str) -> Option<Placement> {
        let i = self.fields.iter().position(|f| f.name == name)?;
        Some(self.placements()[i])
    }

    pub fn used_mask(&self) -> u64 {
        self.placements().iter().fold(0, |m, p| m | p.mask())
    }

    pub fn extract(&self, word: u64, name: &str) -> Option<u64> {
        let p = self.placement_of(name)?;
        Some((word >> p.shift) & field_mask(p.width))
    }

    fn same_fields(&self, other: &BitLayout) -> bool {
        let key = |l: &BitLayout| {
            let mut v: Vec<(String, u32)> = l.fields.iter().map(|f| (f.name.clone(), f.width)).collect();
            v.sort();
            v
        };
        self.word_size == other.word_size && key(self) == key(other)
    }
}

/// Moves every field of `word` from its `input` position to its `output`
/// position. Bits outside the output fields are zero.
pub fn apply_bit_permutation(word: u64, input: &BitLayout, output: &BitLayout) -> Result<u64, Error> {
    if !input.same_fields(output) {
        return Err(Error::LayoutMismatch("layouts must hold the same named fields in the same word size".into()));
    }
    if word & !word_mask(input.word_size) != 0 {
        return Err(Error::InvalidInput(format!("{word:#x} does not fit in {} bits", input.word_size)));
    }
    let from = input.placements();
    let mut result = 0u64;
    for (field, to) in output.fields.iter().zip(output.placements()) {
        let i = input.fields.iter().position(|f| f.name == field.name).expect("fields checked above");
        let value = (word >> from[i].shift) & field_mask(from[i].width);
        result |= value << to.shift;
    }
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct BitfieldParams {
    pub word_size: u32,
    pub max_field_width: u32,
    pub max_fields: usize,
}

impl Default for BitfieldParams {
    fn default() -> Self {
        Self { word_size: 32, max_field_width: 8, max_fields: 6 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitfieldExercise {
    pub input: BitLayout,
    pub output: BitLayout,
}

impl BitfieldExercise {
    pub fn apply(&self, word: u64) -> Result<u64, Error> {
        apply_bit_permutation(word, &self.input, &self.output)
    }

    /// The word with every input field set to all ones.
    pub fn all_ones_word(&self) -> u64 {
        self.input.used_mask()
    }
}

fn field_name(i: usize) -> String {
    ((b'A' + i as u8) as char).to_string()
}

fn build_candidate(params: &BitfieldParams, rng: &mut RngStream) -> Option<BitfieldExercise> {
    if params.max_fields < 2 {
        return None;
    }
    let count = rng.uniform_usize(2, params.max_fields);
    let fields: Vec<Field> = (0..count)
        .map(|i| Field { name: field_name(i), width: rng.uniform_u64(1, params.max_field_width as u64) as u32 })
        .collect();
    let input = BitLayout { word_size: params.word_size, fields };
    if input.validate().is_err() {
        return None;
    }
    let mut order = input.fields.clone();
    rng.shuffle(&mut order);
    Some(BitfieldExercise { output: BitLayout { word_size: params.word_size, fields: order }, input })
}

pub fn gen_bitfield_exercise(params: &BitfieldParams, stream: &mut RngStream) -> Result<BitfieldExercise, Error> {
    if !WORD_SIZES.contains(&params.word_size) {
        return Err(Error::InvalidInput(format!("word size {} not in {{8,16,32,64}}", params.word_size)));
    }
    if params.max_field_width == 0 || params.max_fields > 26 {
        return Err(Error::InvalidInput("max field width must be positive and at most 26 fields".into()));
    }
    let policy = RetryPolicy::exercise("bit-field layout");
    let accepted =
        generate_with_retry(stream, &policy, |r| build_candidate(params, r), |ex| ex.input.fields != ex.output.fields)?;
    Ok(accepted.value)
}
