//! External form of an exercise: statement, assets, and the JSON bundle.

pub mod dot;
pub mod latex;
pub mod text;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::exercise::{Exercise, ExerciseKind};
use crate::format::table::render_text;
use crate::notation::tree::AttrType;
use crate::testset::{TestCase, TestSuite};

pub use dot::{fsm_dot, tree_dot};
pub use latex::{latex_definition, latex_expr};

pub const BUNDLE_EXTENSION: &str = ".exercise.json";

/// Where the seed came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub student: String,
    pub slot: String,
    pub variant: u64,
    /// The derived seed as 16 hex digits.
    pub seed: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assets {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dot: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Param {
    pub name: String,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Protocol {
    /// One JSON array of arguments per line, one JSON array of results back.
    Pure,
    /// One `["method"]` line per call, `RESET` between traces.
    Stateful,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IoSpec {
    pub protocol: Protocol,
    pub entry: String,
    pub arguments: Vec<Param>,
    pub returns: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub methods: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExerciseBundle {
    pub id: String,
    pub kind: ExerciseKind,
    pub provenance: Provenance,
    pub title: String,
    pub statement: String,
    pub assets: Assets,
    pub io_spec: IoSpec,
    pub visible_tests: Vec<TestCase>,
    pub hidden_tests: Vec<TestCase>,
    pub exercise: Exercise,
}

impl ExerciseBundle {
    pub fn tests(&self) -> impl Iterator<Item = &TestCase> {
        self.visible_tests.iter().chain(&self.hidden_tests)
    }

    /// The bundle file contents: pretty JSON, struct field order, trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("bundle serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, Error> {
        Ok(serde_json::from_str(text)?)
    }
}

/// SHA-256 over the compact bundle JSON without `id` and `provenance`, so
/// two bundles share a digest exactly when their content matches.
pub fn canonical_digest(bundle: &ExerciseBundle) -> String {
    let mut v = serde_json::to_value(bundle).expect("bundle serializes");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("id");
        obj.remove("provenance");
    }
    let bytes = serde_json::to_vec(&v).expect("value serializes");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn join_names<S: AsRef<str>>(items: &[S]) -> String {
    items.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(", ")
}

pub fn render_assets(ex: &Exercise) -> Assets {
    match ex {
        Exercise::Math(m) => Assets { latex: Some(latex_definition(m)), ..Assets::default() },
        Exercise::Tree(t) => Assets { dot: Some(tree_dot(t)), ..Assets::default() },
        Exercise::Fsm(m) => Assets { dot: Some(fsm_dot(m)), ..Assets::default() },
        Exercise::Bitfields(b) => Assets {
            text: Some(format!("{}\n{}", text::bit_diagram("input", &b.input), text::bit_diagram("output", &b.output))),
            ..Assets::default()
        },
        Exercise::Table(t) => Assets {
            text: Some(format!("{}\nsteps:\n{}", render_text(&t.input), text::pipeline_steps(&t.pipeline))),
            ..Assets::default()
        },
        Exercise::Binary(tree) => Assets { text: Some(text::binary_description(tree)), ..Assets::default() },
    }
}

fn io_spec(ex: &Exercise) -> IoSpec {
    let pure = |entry: &str, arguments: Vec<Param>, returns: &str| IoSpec {
        protocol: Protocol::Pure,
        entry: entry.into(),
        arguments,
        returns: returns.into(),
        methods: vec![],
    };
    let param = |name: &str, ty: &str| Param { name: name.into(), ty: ty.into() };
    match ex {
        Exercise::Math(m) => pure(&m.function, m.parameters.iter().map(|p| param(p, "int")).collect(), "float"),
        Exercise::Tree(t) => {
            let args = t
                .attributes
                .iter()
                .map(|a| {
                    let ty = match a.ty {
                        AttrType::IntRange { .. } => "int",
                        AttrType::Boolean => "bool",
                        AttrType::Enum { .. } => "str",
                    };
                    param(&a.name, ty)
                })
                .collect();
            let ret = if t.labels.iter().all(|l| matches!(l, crate::notation::tree::Label::Int(_))) { "int" } else { "str" };
            pure("classify", args, ret)
        }
        Exercise::Bitfields(b) => {
            let ty = format!("u{}", b.input.word_size);
            pure("convert", vec![param("word", &ty)], &ty)
        }
        Exercise::Table(_) => pure("transform", vec![param("table", "list[list[str]]")], "list[list[str]]"),
        Exercise::Binary(_) => pure("parse", vec![param("data", "base64")], "object"),
        Exercise::Fsm(m) => IoSpec {
            protocol: Protocol::Stateful,
            entry: "Machine".into(),
            arguments: vec![],
            returns: "str".into(),
            methods: m.alphabet.clone(),
        },
    }
}

fn statement(ex: &Exercise) -> String {
    match ex {
        Exercise::Math(m) => {
            let (lo, hi) = m.inputs;
            let mut s = format!(
                "Implement the function {}({}) defined by the formula in the LaTeX asset. \
                 Arguments are integers in [{lo}, {hi}]; return the value as a floating-point number.",
                m.function,
                join_names(&m.parameters)
            );
            if m.recursive {
                s.push_str(&format!(" The definition is recursive: {} refers to itself.", m.function));
            }
            s
        }
        Exercise::Tree(t) => {
            let attrs: Vec<String> = t
                .attributes
                .iter()
                .map(|a| match &a.ty {
                    AttrType::IntRange { lo, hi } => format!("{} is an integer in [{lo}, {hi}]", a.name),
                    AttrType::Boolean => format!("{} is a boolean", a.name),
                    AttrType::Enum { labels } => format!("{} is one of {}", a.name, join_names(labels)),
                })
                .collect();
            let names: Vec<&str> = t.attributes.iter().map(|a| a.name.as_str()).collect();
            format!(
                "Implement classify({}) returning the label the decision tree in the DOT asset assigns. {}.",
                join_names(&names),
                attrs.join("; ")
            )
        }
        Exercise::Fsm(m) => format!(
            "Implement a class Machine with methods {}, each taking no arguments. The automaton in the DOT asset starts in \
             state {}; each call follows the edge labeled with the method name and returns the output of the \
             state it arrives in.",
            join_names(&m.alphabet),
            m.states[m.initial].name
        ),
        Exercise::Bitfields(b) => format!(
            "Implement convert(word) for {}-bit unsigned words: move each field from its position in the input \
             layout to its position in the output layout. Bits outside the output fields must be zero.",
            b.input.word_size
        ),
        Exercise::Table(t) => format!(
            "Implement transform(table) for a table given as a list of rows of strings. Apply these steps in \
             order:\n{}",
            text::pipeline_steps(&t.pipeline)
        ),
        Exercise::Binary(_) => "Implement parse(data) for the little-endian record layout in the text asset. \
             Offsets are absolute 16-bit byte positions from the start of the data. Return structs as objects \
             keyed by field name, arrays as lists, and integers as numbers."
            .to_string(),
    }
}

/// Builds the bundle. `provenance` records the seed inputs; the id is
/// derived from the kind and seed.
pub fn render_exercise(ex: &Exercise, suite: &TestSuite, provenance: Provenance) -> ExerciseBundle {
    let kind = ex.kind();
    ExerciseBundle {
        id: format!("{kind}-{}", provenance.seed),
        kind,
        provenance,
        title: kind.title().to_string(),
        statement: statement(ex),
        assets: render_assets(ex),
        io_spec: io_spec(ex),
        visible_tests: suite.visible_cases().to_vec(),
        hidden_tests: suite.hidden_cases().to_vec(),
        exercise: ex.clone(),
    }
}
