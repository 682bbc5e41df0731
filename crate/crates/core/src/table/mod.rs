//! Tabular data: the Data Abstraction (What?) of a card.
//!
//! A [`DataTable`] is a list of named, typed columns plus rows of cell text.
//! Tables come either from an uploaded CSV file ([`parse_csv`]) with
//! inferred types, or from a user-built table ([`generate_table`]) with
//! declared types. Both paths enforce the same invariants.

mod csv_io;
mod infer;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use csv_io::{
    parse_csv, parse_csv_with, read_csv_records, serialize_csv, CsvRecords, IngestOptions,
    IngestWarning, ParsedCsv, MAX_INGEST_BYTES, MAX_INGEST_COLUMNS, MAX_INGEST_ROWS,
};
pub use infer::{
    infer_column_type, infer_with_dictionaries, is_decimal_literal, is_missing, parse_decimal,
    Inference, OrdinalDictionary,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ColumnType {
    Categorical,
    CategoricalOrdered,
    Numerical,
}

impl ColumnType {
    pub const ALL: [ColumnType; 3] = [
        ColumnType::Categorical,
        ColumnType::CategoricalOrdered,
        ColumnType::Numerical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ColumnType::Categorical => "categorical",
            ColumnType::CategoricalOrdered => "categoricalOrdered",
            ColumnType::Numerical => "numerical",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ColumnType::Categorical => "Categorical",
            ColumnType::CategoricalOrdered => "Categorical (ordered)",
            ColumnType::Numerical => "Numerical",
        }
    }
}

impl fmt::Display for ColumnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ColumnType {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(char::to_lowercase)
            .collect();
        match key.as_str() {
            "categorical" => Ok(ColumnType::Categorical),
            "categoricalordered" | "ordered" | "ordinal" => Ok(ColumnType::CategoricalOrdered),
            "numerical" | "numeric" => Ok(ColumnType::Numerical),
            _ => Err(TableError::UnknownColumnType(s.to_string())),
        }
    }
}

/// One column of the schema. This is also the per-column entry of the
/// `schema.json` sidecar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Column {
    pub name: String,
    #[serde(rename = "type")]
    pub column_type: ColumnType,
    pub inferred: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_dictionary: Option<Vec<String>>,
}

/// Column declaration for [`generate_table`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ColumnSpec {
    pub name: String,
    #[serde(rename = "type")]
    pub column_type: ColumnType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_dictionary: Option<Vec<String>>,
}

impl ColumnSpec {
    pub fn new(name: impl Into<String>, column_type: ColumnType) -> Self {
        Self {
            name: name.into(),
            column_type,
            order_dictionary: None,
        }
    }

    pub fn ordered<I, S>(name: impl Into<String>, dictionary: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            name: name.into(),
            column_type: ColumnType::CategoricalOrdered,
            order_dictionary: Some(dictionary.into_iter().map(Into::into).collect()),
        }
    }
}

/// The persisted Data Abstraction: column schema without the cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Schema {
    pub columns: Vec<Column>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("input is empty: a header row is required")]
    EmptyInput,
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("duplicate column name '{0}'")]
    DuplicateColumn(String),
    #[error("column {0} has an empty name")]
    EmptyColumnName(usize),
    #[error("input is not valid UTF-8 (byte {0})")]
    Encoding(usize),
    #[error("malformed CSV: {0}")]
    Malformed(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("unknown column '{0}'")]
    UnknownColumn(String),
    #[error("unknown column type '{0}'")]
    UnknownColumnType(String),
    #[error("column '{column}' has values incompatible with {column_type}: {cells:?}")]
    IncompatibleValues {
        column: String,
        column_type: ColumnType,
        cells: Vec<String>,
    },
    #[error("column '{0}' is ordered but no order dictionary was given")]
    MissingOrderDictionary(String),
    #[error("order dictionary for column '{column}' is invalid: {reason}")]
    InvalidOrderDictionary { column: String, reason: String },
    #[error("schema does not match data: {0}")]
    SchemaMismatch(String),
}

impl TableError {
    pub fn code(&self) -> &'static str {
        match self {
            TableError::EmptyInput => "emptyInput",
            TableError::RaggedRows { .. } => "raggedRows",
            TableError::DuplicateColumn(_) => "duplicateColumn",
            TableError::EmptyColumnName(_) => "emptyColumnName",
            TableError::Encoding(_) => "encodingError",
            TableError::Malformed(_) => "malformedCsv",
            TableError::TooLarge(_) => "tooLarge",
            TableError::UnknownColumn(_) => "unknownColumn",
            TableError::UnknownColumnType(_) => "unknownColumnType",
            TableError::IncompatibleValues { .. } => "incompatibleValues",
            TableError::MissingOrderDictionary(_) => "missingOrderDictionary",
            TableError::InvalidOrderDictionary { .. } => "invalidOrderDictionary",
            TableError::SchemaMismatch(_) => "schemaMismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataTable {
    dataset_id: Option<String>,
    columns: Vec<Column>,
    rows: Vec<Vec<String>>,
}

impl DataTable {
    /// Builds a table, checking every invariant.
    pub fn new(columns: Vec<Column>, rows: Vec<Vec<String>>) -> Result<Self, TableError> {
        check_names(columns.iter().map(|c| c.name.as_str()))?;
        check_arity(columns.len(), &rows)?;
        for (index, column) in columns.iter().enumerate() {
            check_values(
                &column.name,
                column.column_type,
                column.order_dictionary.as_deref(),
                rows.iter().map(|r| r[index].as_str()),
            )?;
        }
        Ok(Self {
            dataset_id: None,
            columns,
            rows,
        })
    }

    /// Rebuilds a table from a stored schema and raw records.
    pub fn from_schema(
        schema: Schema,
        header: &[String],
        rows: Vec<Vec<String>>,
    ) -> Result<Self, TableError> {
        let names: Vec<&str> = schema.columns.iter().map(|c| c.name.as_str()).collect();
        if names != header.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(TableError::SchemaMismatch(format!(
                "schema columns {names:?} vs header {header:?}"
            )));
        }
        Self::new(schema.columns, rows)
    }

    pub fn with_dataset_id(mut self, id: impl Into<String>) -> Self {
        self.dataset_id = Some(id.into());
        self
    }

    pub fn dataset_id(&self) -> Option<&str> {
        self.dataset_id.as_deref()
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|c| c.name == name)
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Cells of one column, top to bottom.
    pub fn values(&self, index: usize) -> impl Iterator<Item = &str> + '_ {
        self.rows.iter().map(move |r| r[index].as_str())
    }

    pub fn schema(&self) -> Schema {
        Schema {
            columns: self.columns.clone(),
        }
    }
}

fn check_names<'a>(names: impl Iterator<Item = &'a str>) -> Result<(), TableError> {
    let mut seen = HashSet::new();
    for (index, name) in names.enumerate() {
        if name.trim().is_empty() {
            return Err(TableError::EmptyColumnName(index + 1));
        }
        if !seen.insert(name) {
            return Err(TableError::DuplicateColumn(name.to_string()));
        }
    }
    Ok(())
}

/// Rows are numbered from 1, header excluded.
fn check_arity(width: usize, rows: &[Vec<String>]) -> Result<(), TableError> {
    match rows.iter().position(|r| r.len() != width) {
        Some(i) => Err(TableError::RaggedRows {
            row: i + 1,
            expected: width,
            found: rows[i].len(),
        }),
        None => Ok(()),
    }
}

fn check_dictionary(column: &str, dictionary: &[String]) -> Result<(), TableError> {
    let invalid = |reason: &str| TableError::InvalidOrderDictionary {
        column: column.to_string(),
        reason: reason.to_string(),
    };
    if dictionary.is_empty() {
        return Err(invalid("dictionary is empty"));
    }
    let mut seen = HashSet::new();
    for entry in dictionary {
        if entry.trim().is_empty() {
            return Err(invalid("dictionary contains an empty entry"));
        }
        if !seen.insert(entry.trim().to_lowercase()) {
            return Err(invalid(&format!("'{entry}' appears more than once")));
        }
    }
    Ok(())
}

/// Checks the column invariant for one type. Offending cells are reported
/// once each, in first-seen order.
fn check_values<'a>(
    column: &str,
    column_type: ColumnType,
    dictionary: Option<&[String]>,
    cells: impl Iterator<Item = &'a str>,
) -> Result<(), TableError> {
    let offending: Vec<String> = match column_type {
        ColumnType::Categorical => return Ok(()),
        ColumnType::Numerical => distinct_present(cells)
            .into_iter()
            .filter(|v| parse_decimal(v).is_none())
            .collect(),
        ColumnType::CategoricalOrdered => {
            let dictionary =
                dictionary.ok_or_else(|| TableError::MissingOrderDictionary(column.to_string()))?;
            check_dictionary(column, dictionary)?;
            let members: HashSet<String> =
                dictionary.iter().map(|d| d.trim().to_lowercase()).collect();
            distinct_present(cells)
                .into_iter()
                .filter(|v| !members.contains(&v.to_lowercase()))
                .collect()
        }
    };
    if offending.is_empty() {
        Ok(())
    } else {
        Err(TableError::IncompatibleValues {
            column: column.to_string(),
            column_type,
            cells: offending,
        })
    }
}

fn distinct_present<'a>(cells: impl Iterator<Item = &'a str>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for cell in cells {
        let v = cell.trim();
        if !v.is_empty() && seen.insert(v) {
            out.push(v.to_string());
        }
    }
    out
}

/// Retypes one column. The result is marked as not inferred.
pub fn set_column_type(
    table: &DataTable,
    column: &str,
    column_type: ColumnType,
    order_dictionary: Option<Vec<String>>,
) -> Result<DataTable, TableError> {
    let index = table
        .column_index(column)
        .ok_or_else(|| TableError::UnknownColumn(column.to_string()))?;
    let order_dictionary = match column_type {
        ColumnType::CategoricalOrdered => order_dictionary,
        _ => None,
    };
    check_values(
        column,
        column_type,
        order_dictionary.as_deref(),
        table.values(index),
    )?;
    let mut out = table.clone();
    out.columns[index] = Column {
        name: column.to_string(),
        column_type,
        inferred: false,
        order_dictionary,
    };
    Ok(out)
}

/// Builds a table from declared columns and row values.
pub fn generate_table(
    columns: Vec<ColumnSpec>,
    rows: Vec<Vec<String>>,
) -> Result<DataTable, TableError> {
    let columns = columns
        .into_iter()
        .map(|spec| Column {
            order_dictionary: match spec.column_type {
                ColumnType::CategoricalOrdered => spec.order_dictionary,
                _ => None,
            },
            name: spec.name,
            column_type: spec.column_type,
            inferred: false,
        })
        .collect();
    DataTable::new(columns, rows)
}

/// Per-type column counts; the data key for recommendations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DataSignature {
    pub categorical: usize,
    pub categorical_ordered: usize,
    pub numerical: usize,
}

impl DataSignature {
    pub fn new(categorical: usize, categorical_ordered: usize, numerical: usize) -> Self {
        Self {
            categorical,
            categorical_ordered,
            numerical,
        }
    }

    pub fn of_types(types: &[ColumnType]) -> Self {
        let mut sig = Self::default();
        for t in types {
            *sig.count_mut(*t) += 1;
        }
        sig
    }

    pub fn count(&self, column_type: ColumnType) -> usize {
        match column_type {
            ColumnType::Categorical => self.categorical,
            ColumnType::CategoricalOrdered => self.categorical_ordered,
            ColumnType::Numerical => self.numerical,
        }
    }

    fn count_mut(&mut self, column_type: ColumnType) -> &mut usize {
        match column_type {
            ColumnType::Categorical => &mut self.categorical,
            ColumnType::CategoricalOrdered => &mut self.categorical_ordered,
            ColumnType::Numerical => &mut self.numerical,
        }
    }

    pub fn total(&self) -> usize {
        self.categorical + self.categorical_ordered + self.numerical
    }
}

impl fmt::Display for DataSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            self.categorical, self.categorical_ordered, self.numerical
        )
    }
}

pub fn data_signature(table: &DataTable) -> DataSignature {
    let types: Vec<ColumnType> = table.columns().iter().map(|c| c.column_type).collect();
    DataSignature::of_types(&types)
}
