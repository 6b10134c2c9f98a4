//! Table-wrangling exercises: a typed table with injected irregularities and a
//! short pipeline of row/column transformations to reproduce.

use regex::Regex;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::sync::LazyLock;

use crate::error::Error;
use crate::seed::{generate_with_retry, RetryPolicy, RngStream};

/// Rows of cells; every row has the same length.
pub type Table = Vec<Vec<String>>;

static PHONE: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"^\+\d{1,3} \((\d{3})\) \d{3}-\d{2}-\d{2}$").expect("phone pattern"));
static DATE: LazyLock<Regex> = LazyLock::new(|| Regex::new(r"^(\d{2})\.(\d{2})\.(\d{4})$").expect("date pattern"));

pub const FIRST_NAMES: [&str; 10] =
    ["Ivan", "Anna", "Petr", "Olga", "Maria", "Oleg", "Elena", "Denis", "Irina", "Pavel"];
pub const LAST_NAMES: [&str; 10] =
    ["Ivanov", "Petrova", "Smirnov", "Kuznetsova", "Popov", "Sokolova", "Lebedev", "Kozlova", "Novikov", "Morozova"];

pub const EMPTY_CELL_PROB: f64 = 0.10;
pub const DUPLICATE_ROW_PROB: f64 = 0.15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnType {
    Integer,
    Text,
    Phone,
    Date,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Rows,
    Cols,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SortOrder {
    Asc,
    Desc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellTransform {
    /// `+7 (495) 123-45-67` to `495`.
    PhoneAreaCode,
    /// `DD.MM.YYYY` to `YYYY-MM-DD`.
    DateIso,
    Lowercase,
}

impl CellTransform {
    /// Whether `cell` is a valid input; empty cells always are and stay empty.
    pub fn accepts(self, cell: &str) -> bool {
        match self {
            _ if cell.is_empty() => true,
            CellTransform::PhoneAreaCode => PHONE.is_match(cell),
            CellTransform::DateIso => DATE.is_match(cell),
            CellTransform::Lowercase => true,
        }
    }

    pub fn apply(self, cell: &str) -> String {
        match self {
            CellTransform::PhoneAreaCode => {
                PHONE.captures(cell).map(|c| c[1].to_string()).unwrap_or_default()
            }
            CellTransform::DateIso => DATE
                .captures(cell)
                .map(|c| format!("{}-{}-{}", &c[3], &c[2], &c[1]))
                .unwrap_or_default(),
            CellTransform::Lowercase => cell.to_lowercase(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum TableOp {
    SplitColumn { column: usize, separator: char },
    DeleteEmptyRowsCols,
    Dedupe { axis: Axis },
    SortBy { column: usize, order: SortOrder },
    CellTransformByExample { column: usize, transform: CellTransform },
    Transpose,
}

pub fn width(table: &Table) -> usize {
    table.first().map_or(0, Vec::len)
}

pub fn is_rectangular(table: &Table) -> bool {
    let w = width(table);
    table.iter().all(|r| r.len() == w)
}

fn column(table: &Table, c: usize) -> impl Iterator<Item = &String> {
    table.iter().map(move |r| &r[c])
}

fn sort_key_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

/// Checks `op`'s precondition against `table`; `Err` carries the reason.
pub fn check_precondition(op: &TableOp, table: &Table) -> Result<(), String> {
    let need_column = |c: usize| {
        if c < width(table) {
            Ok(())
        } else {
            Err(format!("column {c} does not exist (table has {})", width(table)))
        }
    };
    match op {
        TableOp::SplitColumn { column: c, separator } => {
            need_column(*c)?;
            if !column(table, *c).any(|cell| cell.contains(*separator)) {
                return Err(format!("no cell in column {c} contains {separator:?}"));
            }
            Ok(())
        }
        TableOp::SortBy { column: c, .. } => need_column(*c),
        TableOp::CellTransformByExample { column: c, transform } => {
            need_column(*c)?;
            if let Some(bad) = column(table, *c).find(|cell| !transform.accepts(cell)) {
                return Err(format!("cell {bad:?} is not valid input for {transform:?}"));
            }
            if column(table, *c).all(|cell| cell.is_empty()) {
                return Err(format!("column {c} has no values to transform"));
            }
            Ok(())
        }
        TableOp::DeleteEmptyRowsCols | TableOp::Dedupe { .. } | TableOp::Transpose => Ok(()),
    }
}

pub fn transpose(table: &Table) -> Table {
    let w = width(table);
    (0..w).map(|c| table.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Applies one op, assuming its precondition holds.
pub fn apply_op(op: &TableOp, table: &Table) -> Table {
    match op {
        TableOp::SplitColumn { column: c, separator } => {
            let parts = 1 + column(table, *c).map(|cell| cell.matches(*separator).count()).max().unwrap_or(0);
            table
                .iter()
                .map(|row| {
                    let mut out = Vec::with_capacity(row.len() + parts - 1);
                    out.extend_from_slice(&row[..*c]);
                    let mut pieces: Vec<String> = row[*c].split(*separator).map(str::to_string).collect();
                    pieces.resize(parts, String::new());
                    out.extend(pieces);
                    out.extend_from_slice(&row[c + 1..]);
                    out
                })
                .collect()
        }
        TableOp::DeleteEmptyRowsCols => {
            let rows: Table = table.iter().filter(|r| r.iter().any(|c| !c.is_empty())).cloned().collect();
            let keep: Vec<usize> = (0..width(&rows)).filter(|&c| column(&rows, c).any(|v| !v.is_empty())).collect();
            rows.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect()
        }
        TableOp::Dedupe { axis: Axis::Rows } => {
            let mut out: Table = Vec::new();
            for r in table {
                if !out.contains(r) {
                    out.push(r.clone());
                }
            }
            out
        }
        TableOp::Dedupe { axis: Axis::Cols } => {
            let mut seen: Vec<Vec<&String>> = Vec::new();
            let mut keep = Vec::new();
            for c in 0..width(table) {
                let col: Vec<&String> = column(table, c).collect();
                if !seen.contains(&col) {
                    seen.push(col);
                    keep.push(c);
                }
            }
            table.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect()
        }
        TableOp::SortBy { column: c, order } => {
            let mut out = table.clone();
            out.sort_by(|a, b| {
                let ord = sort_key_cmp(&a[*c], &b[*c]);
                match order {
                    SortOrder::Asc => ord,
                    SortOrder::Desc => ord.reverse(),
                }
            });
            out
        }
        TableOp::CellTransformByExample { column: c, transform } => table
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r[*c] = transform.apply(&r[*c]);
                r
            })
            .collect(),
        TableOp::Transpose => transpose(table),
    }
}

/// Runs `pipeline` left to right, checking each precondition on the table
/// the op actually sees.
pub fn apply_table_pipeline(table: &Table, pipeline: &[TableOp]) -> Result<Table, Error> {
    if pipeline.is_empty() {
        return Err(Error::InvalidInput("pipeline must contain at least one op".into()));
    }
    if !is_rectangular(table) {
        return Err(Error::InvalidInput("table rows differ in length".into()));
    }
    let mut current = table.clone();
    for (i, op) in pipeline.iter().enumerate() {
        check_precondition(op, &current).map_err(|reason| Error::PreconditionViolated { op_index: i, reason })?;
        current = apply_op(op, &current);
    }
    Ok(current)
}

/// Fixed-width text rendering with ` | ` between columns.
pub fn render_text(table: &Table) -> String {
    let w = width(table);
    let widths: Vec<usize> =
        (0..w).map(|c| column(table, c).map(|s| s.chars().count()).max().unwrap_or(0).max(1)).collect();
    let mut out = String::new();
    for row in table {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        out.push_str(cells.join(" | ").trim_end());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TableParams {
    pub columns: (usize, usize),
    pub rows: (usize, usize),
    pub pipeline: (usize, usize),
}

impl Default for TableParams {
    fn default() -> Self {
        Self { columns: (2, 4), rows: (4, 8), pipeline: (1, 4) }
    }
}

impl TableParams {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::InvalidInput(m.to_string()));
        if self.columns.0 < 1 || self.columns.0 > self.columns.1 {
            return bad("column count range must start at 1 or more");
        }
        if self.rows.0 < 1 || self.rows.0 > self.rows.1 {
            return bad("row count range must start at 1 or more");
        }
        if self.pipeline.0 < 1 || self.pipeline.1 > 4 || self.pipeline.0 > self.pipeline.1 {
            return bad("pipeline length range must lie in [1, 4]");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableExercise {
    pub columns: Vec<ColumnType>,
    pub input: Table,
    pub pipeline: Vec<TableOp>,
}

impl TableExercise {
    pub fn expected(&self) -> Result<Table, Error> {
        apply_table_pipeline(&self.input, &self.pipeline)
    }
}

fn gen_cell(ty: ColumnType, rng: &mut RngStream) -> String {
    match ty {
        ColumnType::Integer => rng.uniform_i64(0, 999).to_string(),
        ColumnType::Text => format!("{} {}", rng.pick(&FIRST_NAMES), rng.pick(&LAST_NAMES)),
        ColumnType::Phone => format!(
            "+7 ({:03}) {:03}-{:02}-{:02}",
            rng.uniform_i64(100, 999),
            rng.uniform_i64(0, 999),
            rng.uniform_i64(0, 99),
            rng.uniform_i64(0, 99)
        ),
        ColumnType::Date => format!(
            "{:02}.{:02}.{:04}",
            rng.uniform_i64(1, 28),
            rng.uniform_i64(1, 12),
            rng.uniform_i64(1990, 2024)
        ),
    }
}

fn gen_table(params: &TableParams, rng: &mut RngStream) -> (Vec<ColumnType>, Table) {
    const TYPES: [ColumnType; 4] = [ColumnType::Integer, ColumnType::Text, ColumnType::Phone, ColumnType::Date];
    let cols = rng.uniform_usize(params.columns.0, params.columns.1);
    let rows = rng.uniform_usize(params.rows.0, params.rows.1);
    let mut types: Vec<ColumnType> = (0..cols).map(|_| *rng.pick(&TYPES)).collect();
    let mut table: Table = (0..rows)
        .map(|_| {
            types
                .iter()
                .map(|t| if rng.chance(EMPTY_CELL_PROB) { String::new() } else { gen_cell(*t, rng) })
                .collect()
        })
        .collect();
    let mut i = 0;
    while i < table.len() {
        if rng.chance(DUPLICATE_ROW_PROB) {
            let at = rng.uniform_usize(i + 1, table.len());
            let copy = table[i].clone();
            table.insert(at, copy);
            i += 1;
        }
        i += 1;
    }
    if rng.chance(0.3) {
        let at = rng.uniform_usize(0, table.len());
        table.insert(at, vec![String::new(); cols]);
    }
    if rng.chance(0.2) {
        let at = rng.uniform_usize(0, cols);
        for r in &mut table {
            r.insert(at, String::new());
        }
        types.insert(at, ColumnType::Text);
    }
    (types, table)
}

/// Every op that is applicable to `table` and would change it, grouped by op kind.
fn candidate_ops(table: &Table, transposed: bool) -> Vec<Vec<TableOp>> {
    let w = width(table);
    let changes = |op: &TableOp| check_precondition(op, table).is_ok() && apply_op(op, table) != *table;
    let mut groups = Vec::new();
    let split: Vec<TableOp> = (0..w)
        .flat_map(|c| [' ', '-', '.'].map(|s| TableOp::SplitColumn { column: c, separator: s }))
        .filter(|op| changes(op))
        .collect();
    groups.push(split);
    groups.push(vec![TableOp::DeleteEmptyRowsCols].into_iter().filter(|op| changes(op)).collect());
    groups.push(
        [Axis::Rows, Axis::Cols].map(|axis| TableOp::Dedupe { axis }).into_iter().filter(|op| changes(op)).collect(),
    );
    groups.push(
        (0..w)
            .flat_map(|c| [SortOrder::Asc, SortOrder::Desc].map(|order| TableOp::SortBy { column: c, order }))
            .filter(|op| changes(op))
            .collect(),
    );
    groups.push(
        (0..w)
            .flat_map(|c| {
                [CellTransform::PhoneAreaCode, CellTransform::DateIso, CellTransform::Lowercase]
                    .map(|transform| TableOp::CellTransformByExample { column: c, transform })
            })
            .filter(|op| changes(op))
            .collect(),
    );
    if !transposed && w > 0 {
        groups.push(vec![TableOp::Transpose]);
    }
    groups.retain(|g| !g.is_empty());
    groups
}

fn build_candidate(params: &TableParams, rng: &mut RngStream) -> Option<TableExercise> {
    let (columns, input) = gen_table(params, rng);
    let length = rng.uniform_usize(params.pipeline.0, params.pipeline.1);
    let mut current = input.clone();
    let mut pipeline = Vec::with_capacity(length);
    for _ in 0..length {
        let groups = candidate_ops(&current, pipeline.contains(&TableOp::Transpose));
        if groups.is_empty() {
            return None;
        }
        let group = rng.pick(&groups);
        let op = rng.pick(group).clone();
        current = apply_op(&op, &current);
        pipeline.push(op);
    }
    Some(TableExercise { columns, input, pipeline })
}

pub fn gen_table_exercise(params: &TableParams, stream: &mut RngStream) -> Result<TableExercise, Error> {
    params.validate()?;
    let policy = RetryPolicy::exercise("table pipeline");
    let accepted = generate_with_retry(stream, &policy, |r| build_candidate(params, r), |ex| {
        ex.expected().map(|out| out != ex.input && is_rectangular(&out)).unwrap_or(false)
    })?;
    Ok(accepted.value)
}
