//! The six exercise families behind one enum, with their reference semantics.

use base64::Engine;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::format::binary::{gen_binary_format, parse_instance, BinaryParams, FormatTree};
use crate::format::bitfield::{gen_bitfield_exercise, BitfieldExercise, BitfieldParams};
use crate::format::table::{apply_table_pipeline, gen_table_exercise, Table, TableExercise, TableParams};
use crate::interp::run_machine;
use crate::notation::fsm::{gen_fsm, FsmParams, FsmSpec};
use crate::notation::math::{gen_math_exercise, MathExercise, MathParams};
use crate::notation::tree::{gen_decision_tree, DecisionTree, TreeParams};
use crate::seed::RngStream;

pub(crate) const BASE64: base64::engine::GeneralPurpose = base64::engine::general_purpose::STANDARD;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExerciseKind {
    Math,
    Tree,
    Fsm,
    Bitfields,
    Table,
    Binary,
}

impl ExerciseKind {
    pub const ALL: [ExerciseKind; 6] = [
        ExerciseKind::Math,
        ExerciseKind::Tree,
        ExerciseKind::Bitfields,
        ExerciseKind::Table,
        ExerciseKind::Binary,
        ExerciseKind::Fsm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExerciseKind::Math => "math",
            ExerciseKind::Tree => "tree",
            ExerciseKind::Fsm => "fsm",
            ExerciseKind::Bitfields => "bitfields",
            ExerciseKind::Table => "table",
            ExerciseKind::Binary => "binary",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            ExerciseKind::Math => "Translation of math notation",
            ExerciseKind::Tree => "Implementation of decision tree",
            ExerciseKind::Bitfields => "Permutation of bit fields",
            ExerciseKind::Table => "Table data wrangling",
            ExerciseKind::Binary => "Binary format parsing",
            ExerciseKind::Fsm => "Implementation of finite state automata",
        }
    }

    pub fn is_stateful(self) -> bool {
        self == ExerciseKind::Fsm
    }
}

impl fmt::Display for ExerciseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExerciseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExerciseKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown exercise kind {s:?}")))
    }
}

/// Generator parameters for every kind. Read from a JSON file; missing
/// sections and fields fall back to defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(default)]
pub struct GenParams {
    pub math: MathParams,
    pub tree: TreeParams,
    pub fsm: FsmParams,
    pub bitfields: BitfieldParams,
    pub table: TableParams,
    pub binary: BinaryParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "definition", rename_all = "snake_case")]
pub enum Exercise {
    Math(MathExercise),
    Tree(DecisionTree),
    Fsm(FsmSpec),
    Bitfields(BitfieldExercise),
    Table(TableExercise),
    Binary(FormatTree),
}

pub fn gen_exercise(kind: ExerciseKind, params: &GenParams, stream: &mut RngStream) -> Result<Exercise, Error> {
    Ok(match kind {
        ExerciseKind::Math => Exercise::Math(gen_math_exercise(&params.math, stream)?),
        ExerciseKind::Tree => Exercise::Tree(gen_decision_tree(&params.tree, stream)?),
        ExerciseKind::Fsm => Exercise::Fsm(gen_fsm(&params.fsm, stream)?),
        ExerciseKind::Bitfields => Exercise::Bitfields(gen_bitfield_exercise(&params.bitfields, stream)?),
        ExerciseKind::Table => Exercise::Table(gen_table_exercise(&params.table, stream)?),
        ExerciseKind::Binary => Exercise::Binary(gen_binary_format(&params.binary, stream)?),
    })
}

fn arity(args: &[Value], n: usize) -> Result<(), Error> {
    if args.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} argument(s), got {}", args.len())));
    }
    Ok(())
}

pub fn table_from_value(v: &Value) -> Result<Table, Error> {
    Ok(serde_json::from_value(v.clone())?)
}

impl Exercise {
    pub fn kind(&self) -> ExerciseKind {
        match self {
            Exercise::Math(_) => ExerciseKind::Math,
            Exercise::Tree(_) => ExerciseKind::Tree,
            Exercise::Fsm(_) => ExerciseKind::Fsm,
            Exercise::Bitfields(_) => ExerciseKind::Bitfields,
            Exercise::Table(_) => ExerciseKind::Table,
            Exercise::Binary(_) => ExerciseKind::Binary,
        }
    }

    /// Reference answer for one call of a pure exercise.
    pub fn answer(&self, args: &[Value]) -> Result<Vec<Value>, Error> {
        match self {
            Exercise::Math(m) => {
                arity(args, m.parameters.len())?;
                let xs = args
                    .iter()
                    .map(|a| a.as_f64().ok_or_else(|| Error::InvalidInput(format!("{a} is not a number"))))
                    .collect::<Result<Vec<f64>, Error>>()?;
                let y = m.evaluate(&xs).map_err(|e| Error::InvalidInput(format!("undefined: {e}")))?;
                Ok(vec![Value::from(y)])
            }
            Exercise::Tree(t) => Ok(vec![t.classify(args)?.to_value()]),
            Exercise::Bitfields(b) => {
                arity(args, 1)?;
                let w = args[0].as_u64().ok_or_else(|| Error::InvalidInput(format!("{} is not a word", args[0])))?;
                Ok(vec![Value::from(b.apply(w)?)])
            }
            Exercise::Table(t) => {
                arity(args, 1)?;
                let out = apply_table_pipeline(&table_from_value(&args[0])?, &t.pipeline)?;
                Ok(vec![serde_json::to_value(out)?])
            }
            Exercise::Binary(tree) => {
                arity(args, 1)?;
                let text = args[0].as_str().ok_or_else(|| Error::InvalidInput("expected a base64 string".into()))?;
                let bytes = BASE64.decode(text).map_err(|e| Error::InvalidInput(format!("bad base64: {e}")))?;
                Ok(vec![parse_instance(tree, &bytes)?])
            }
            Exercise::Fsm(_) => Err(Error::InvalidInput("automaton exercises are stateful".into())),
        }
    }

    /// Reference outputs for a whole call trace of a stateful exercise.
    pub fn answer_trace(&self, calls: &[String]) -> Result<Vec<String>, Error> {
        match self {
            Exercise::Fsm(m) => run_machine(m, calls),
            _ => Err(Error::InvalidInput("exercise is not stateful".into())),
        }
    }
}
