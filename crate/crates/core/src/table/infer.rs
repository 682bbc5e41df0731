//! Column type inference.
//!
//! A column is numerical when every non-missing value is a plain decimal
//! literal, ordered categorical when its distinct values all fall inside
//! exactly one ordinal dictionary, and categorical otherwise. Missing means
//! empty after trimming.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::ColumnType;
use crate::catalog::Catalog;

/// An ordinal vocabulary. Each level lists its accepted spellings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OrdinalDictionary {
    pub name: String,
    pub levels: Vec<Vec<String>>,
}

impl OrdinalDictionary {
    /// Case-insensitive membership.
    pub fn contains(&self, value: &str) -> bool {
        let needle = value.to_lowercase();
        self.levels
            .iter()
            .flatten()
            .any(|spelling| spelling.to_lowercase() == needle)
    }

    /// All spellings in level order; this is what an inferred column stores
    /// as its order dictionary.
    pub fn flatten(&self) -> Vec<String> {
        self.levels.iter().flatten().cloned().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    pub column_type: ColumnType,
    pub order_dictionary: Option<Vec<String>>,
    /// Name of the matched ordinal dictionary, if any.
    pub dictionary_name: Option<String>,
}

pub fn is_missing(cell: &str) -> bool {
    cell.trim().is_empty()
}

/// Optional sign, digits, at most one decimal point, at least one digit.
/// No exponent, no thousands separators, no locale variants.
pub fn is_decimal_literal(text: &str) -> bool {
    let body = text.strip_prefix(['+', '-']).unwrap_or(text);
    let mut digits = 0usize;
    let mut points = 0usize;
    for ch in body.chars() {
        match ch {
            '0'..='9' => digits += 1,
            '.' => points += 1,
            _ => return false,
        }
    }
    digits > 0 && points <= 1
}

/// Parses a trimmed cell as a decimal number. Literals that overflow `f64`
/// are rejected.
pub fn parse_decimal(cell: &str) -> Option<f64> {
    let text = cell.trim();
    if !is_decimal_literal(text) {
        return None;
    }
    let normalized = text.strip_prefix('+').unwrap_or(text);
    normalized.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Infers a column type with the dictionaries from the built-in catalog.
pub fn infer_column_type<S: AsRef<str>>(values: &[S]) -> Inference {
    infer_with_dictionaries(values, Catalog::builtin().dictionaries())
}

pub fn infer_with_dictionaries<S: AsRef<str>>(
    values: &[S],
    dictionaries: &[OrdinalDictionary],
) -> Inference {
    let present: Vec<&str> = values
        .iter()
        .map(|v| v.as_ref().trim())
        .filter(|v| !v.is_empty())
        .collect();

    let categorical = Inference {
        column_type: ColumnType::Categorical,
        order_dictionary: None,
        dictionary_name: None,
    };
    if present.is_empty() {
        return categorical;
    }
    if present.iter().all(|v| parse_decimal(v).is_some()) {
        return Inference {
            column_type: ColumnType::Numerical,
            order_dictionary: None,
            dictionary_name: None,
        };
    }

    let distinct: BTreeSet<String> = present.iter().map(|v| v.to_lowercase()).collect();
    let mut matching = dictionaries
        .iter()
        .filter(|dict| distinct.iter().all(|v| dict.contains(v)));
    match (matching.next(), matching.next()) {
        (Some(dict), None) => Inference {
            column_type: ColumnType::CategoricalOrdered,
            order_dictionary: Some(dict.flatten()),
            dictionary_name: Some(dict.name.clone()),
        },
        _ => categorical,
    }
}
