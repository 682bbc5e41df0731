//! Renderer-neutral chart specifications.
//!
//! [`build_chart_spec`] turns a valid binding over a table into a
//! [`ChartSpec`]. Conventions:
//!
//! - Category axes follow the order dictionary for ordered columns and first
//!   appearance otherwise. Rows with an empty category are skipped.
//! - Repeated categories are averaged; pie and donut slices are summed.
//! - Missing numerical cells are dropped; a category left without values
//!   gets a `null` point, which line idioms render as a gap.
//! - Histograms use ceil(sqrt(n)) equal-width bins, left-closed, the last
//!   bin closed on both ends.
//! - Box plots carry min, quartiles and max, quartiles by linear
//!   interpolation (inclusive method).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::card::{BindingSet, IdiomKind};
use crate::catalog::Catalog;
use crate::recommend::Violation;
use crate::table::{is_missing, parse_decimal, ColumnType, DataTable};

pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ValueKind {
    Categorical,
    Ordinal,
    Quantitative,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Axis {
    pub label: String,
    pub value_kind: ValueKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct XyPoint {
    pub x: f64,
    pub y: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BoxStats {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// A series entry: a number (or `null` for a gap), an (x, y) pair, or a box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Point {
    Value(Option<f64>),
    Xy(XyPoint),
    Box(BoxStats),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Series {
    pub name: String,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Slice {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Bin {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Matrix {
    pub rows: Vec<String>,
    pub columns: Vec<String>,
    /// `values[r][c]`; `null` where no row has that pair.
    pub values: Vec<Vec<Option<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChartSpec {
    pub spec_version: u32,
    pub idiom: IdiomKind,
    pub title: String,
    pub x_axis: Axis,
    pub y_axis: Axis,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub categories: Option<Vec<String>>,
    pub series: Vec<Series>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slices: Option<Vec<Slice>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bins: Option<Vec<Bin>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Matrix>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChartError {
    #[error("binding is not valid for this idiom")]
    InvalidBinding(Vec<Violation>),
    #[error("pie slice '{label}' has negative value {value}")]
    NegativePieValue { label: String, value: f64 },
    #[error("the catalog entry for '{idiom}' lacks channel '{channel}' needed to draw it")]
    UnsupportedChannels { idiom: IdiomKind, channel: String },
}

impl ChartError {
    pub fn code(&self) -> &'static str {
        match self {
            ChartError::InvalidBinding(_) => "invalidBinding",
            ChartError::NegativePieValue { .. } => "negativePieValue",
            ChartError::UnsupportedChannels { .. } => "unsupportedChannels",
        }
    }
}

/// Canonical JSON: fixed key order, no insignificant whitespace.
pub fn serialize_chart_spec(spec: &ChartSpec) -> String {
    serde_json::to_string(spec).expect("chart specs always serialize")
}

pub fn parse_chart_spec(text: &str) -> Result<ChartSpec, serde_json::Error> {
    serde_json::from_str(text)
}

pub fn build_chart_spec(
    kind: IdiomKind,
    table: &DataTable,
    bindings: &BindingSet,
    title: &str,
    catalog: &Catalog,
) -> Result<ChartSpec, ChartError> {
    catalog
        .validate_binding(kind, table, bindings)
        .map_err(ChartError::InvalidBinding)?;
    let ctx = Ctx {
        kind,
        table,
        bindings,
    };
    let mut spec = match kind {
        IdiomKind::Bar
        | IdiomKind::GroupedBar
        | IdiomKind::StackedBar
        | IdiomKind::Line
        | IdiomKind::MultiLine
        | IdiomKind::Area => ctx.category_chart("x", "y")?,
        IdiomKind::Radar => ctx.category_chart("axis", "value")?,
        IdiomKind::Scatter | IdiomKind::Bubble => ctx.xy_chart()?,
        IdiomKind::Pie | IdiomKind::Donut => ctx.pie_chart()?,
        IdiomKind::Histogram => ctx.histogram()?,
        IdiomKind::BoxPlot => ctx.box_plot()?,
        IdiomKind::Heatmap => ctx.heatmap()?,
    };
    spec.title = title.to_string();
    Ok(spec)
}

struct Ctx<'a> {
    kind: IdiomKind,
    table: &'a DataTable,
    bindings: &'a BindingSet,
}

/// Distinct categories of a column plus the category index of each row.
struct CategoryAxis {
    labels: Vec<String>,
    row_index: Vec<Option<usize>>,
    kind: ValueKind,
}

impl<'a> Ctx<'a> {
    fn spec(&self, x_axis: Axis, y_axis: Axis) -> ChartSpec {
        ChartSpec {
            spec_version: SPEC_VERSION,
            idiom: self.kind,
            title: String::new(),
            x_axis,
            y_axis,
            categories: None,
            series: Vec::new(),
            slices: None,
            bins: None,
            matrix: None,
            notes: Vec::new(),
        }
    }

    fn channel(&self, name: &str) -> Result<&'a [String], ChartError> {
        self.bindings
            .get(name)
            .ok_or_else(|| ChartError::UnsupportedChannels {
                idiom: self.kind,
                channel: name.to_string(),
            })
    }

    fn single(&self, name: &str) -> Result<&'a str, ChartError> {
        self.channel(name)?
            .first()
            .map(String::as_str)
            .ok_or_else(|| ChartError::UnsupportedChannels {
                idiom: self.kind,
                channel: name.to_string(),
            })
    }

    fn optional_single(&self, name: &str) -> Option<&'a str> {
        self.bindings
            .get(name)
            .and_then(|c| c.first())
            .map(String::as_str)
    }

    fn index(&self, column: &str) -> usize {
        self.table
            .column_index(column)
            .expect("validated bindings name existing columns")
    }

    fn numbers(&self, column: &str) -> Vec<Option<f64>> {
        let i = self.index(column);
        self.table.values(i).map(parse_decimal).collect()
    }

    fn category_axis(&self, column: &str) -> CategoryAxis {
        let i = self.index(column);
        let col = &self.table.columns()[i];
        let mut labels: Vec<String> = Vec::new();
        let mut lookup: HashMap<String, usize> = HashMap::new();
        for cell in self.table.values(i) {
            let v = cell.trim();
            if !v.is_empty() && !lookup.contains_key(v) {
                lookup.insert(v.to_string(), labels.len());
                labels.push(v.to_string());
            }
        }
        let kind = match (&col.column_type, &col.order_dictionary) {
            (ColumnType::CategoricalOrdered, Some(dict)) => {
                let rank: HashMap<String, usize> = dict
                    .iter()
                    .enumerate()
                    .map(|(i, d)| (d.trim().to_lowercase(), i))
                    .collect();
                labels.sort_by(|a, b| {
                    let ra = rank.get(&a.to_lowercase()).copied().unwrap_or(usize::MAX);
                    let rb = rank.get(&b.to_lowercase()).copied().unwrap_or(usize::MAX);
                    ra.cmp(&rb).then_with(|| a.cmp(b))
                });
                ValueKind::Ordinal
            }
            _ => ValueKind::Categorical,
        };
        let positions: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let row_index = self
            .table
            .values(i)
            .map(|cell| positions.get(cell.trim()).copied())
            .collect();
        CategoryAxis {
            labels,
            row_index,
            kind,
        }
    }

    fn category_chart(&self, category: &str, values: &str) -> Result<ChartSpec, ChartError> {
        let x = self.single(category)?;
        let ys = self.channel(values)?;
        let axis = self.category_axis(x);
        let mut spec = self.spec(
            Axis {
                label: x.to_string(),
                value_kind: axis.kind,
            },
            Axis {
                label: ys.join(", "),
                value_kind: ValueKind::Quantitative,
            },
        );
        let mut repeated = false;
        for y in ys {
            let nums = self.numbers(y);
            let mut sums = vec![0.0; axis.labels.len()];
            let mut counts = vec![0usize; axis.labels.len()];
            let mut dropped = 0usize;
            for (row, value) in nums.iter().enumerate() {
                let Some(cat) = axis.row_index[row] else {
                    continue;
                };
                match value {
                    Some(v) => {
                        sums[cat] += v;
                        counts[cat] += 1;
                    }
                    None => dropped += 1,
                }
            }
            repeated |= counts.iter().any(|c| *c > 1);
            if dropped > 0 {
                spec.notes.push(format!(
                    "{dropped} missing value{} in '{y}' dropped",
                    if dropped == 1 { "" } else { "s" }
                ));
            }
            let points = sums
                .iter()
                .zip(&counts)
                .map(|(s, c)| Point::Value((*c > 0).then(|| clean(s / *c as f64))))
                .collect();
            spec.series.push(Series {
                name: y.clone(),
                points,
            });
        }
        if repeated {
            spec.notes
                .push("values of repeated categories are averaged".to_string());
        }
        let skipped = axis.row_index.iter().filter(|i| i.is_none()).count();
        if skipped > 0 {
            spec.notes
                .push(format!("{skipped} row(s) without a '{x}' value skipped"));
        }
        spec.categories = Some(axis.labels);
        Ok(spec)
    }

    fn xy_chart(&self) -> Result<ChartSpec, ChartError> {
        let x = self.single("x")?;
        let y = self.single("y")?;
        let size = match self.kind {
            IdiomKind::Bubble => Some(self.single("size")?),
            _ => self.optional_single("size"),
        };
        let color = self.optional_single("color");
        let xs = self.numbers(x);
        let ys = self.numbers(y);
        let sizes = size.map(|s| self.numbers(s));
        let groups: Option<Vec<&str>> = color.map(|c| {
            let i = self.index(c);
            self.table.values(i).map(str::trim).collect()
        });
        let mut points = Vec::new();
        let mut dropped = 0usize;
        for row in 0..self.table.row_count() {
            let (Some(px), Some(py)) = (xs[row], ys[row]) else {
                dropped += 1;
                continue;
            };
            let psize = match &sizes {
                Some(s) => match s[row] {
                    Some(v) => Some(clean(v)),
                    None => {
                        dropped += 1;
                        continue;
                    }
                },
                None => None,
            };
            let group = groups
                .as_ref()
                .map(|g| g[row])
                .filter(|g| !is_missing(g))
                .map(str::to_string);
            points.push(Point::Xy(XyPoint {
                x: clean(px),
                y: clean(py),
                size: psize,
                group,
            }));
        }
        let mut spec = self.spec(
            Axis {
                label: x.to_string(),
                value_kind: ValueKind::Quantitative,
            },
            Axis {
                label: y.to_string(),
                value_kind: ValueKind::Quantitative,
            },
        );
        if dropped > 0 {
            spec.notes
                .push(format!("{dropped} row(s) with missing values dropped"));
        }
        spec.series.push(Series {
            name: y.to_string(),
            points,
        });
        Ok(spec)
    }

    fn pie_chart(&self) -> Result<ChartSpec, ChartError> {
        let label = self.single("label")?;
        let value = self.single("value")?;
        let axis = self.category_axis(label);
        let nums = self.numbers(value);
        let mut totals = vec![0.0; axis.labels.len()];
        for (row, v) in nums.iter().enumerate() {
            let (Some(cat), Some(v)) = (axis.row_index[row], v) else {
                continue;
            };
            if *v < 0.0 {
                return Err(ChartError::NegativePieValue {
                    label: axis.labels[cat].clone(),
                    value: *v,
                });
            }
            totals[cat] += v;
        }
        let mut spec = self.spec(
            Axis {
                label: label.to_string(),
                value_kind: axis.kind,
            },
            Axis {
                label: value.to_string(),
                value_kind: ValueKind::Quantitative,
            },
        );
        spec.slices = Some(
            axis.labels
                .into_iter()
                .zip(totals)
                .map(|(label, value)| Slice {
                    label,
                    value: clean(value),
                })
                .collect(),
        );
        Ok(spec)
    }

    fn histogram(&self) -> Result<ChartSpec, ChartError> {
        let column = self.single("value")?;
        let values: Vec<f64> = self.numbers(column).into_iter().flatten().collect();
        let bins = histogram_bins(&values);
        let mut spec = self.spec(
            Axis {
                label: column.to_string(),
                value_kind: ValueKind::Quantitative,
            },
            Axis {
                label: "Count".to_string(),
                value_kind: ValueKind::Quantitative,
            },
        );
        let last = bins.len().saturating_sub(1);
        spec.categories = Some(
            bins.iter()
                .enumerate()
                .map(|(i, b)| {
                    let close = if i == last { ']' } else { ')' };
                    format!(
                        "[{}, {}{close}",
                        format_number(b.start),
                        format_number(b.end)
                    )
                })
                .collect(),
        );
        spec.series.push(Series {
            name: column.to_string(),
            points: bins
                .iter()
                .map(|b| Point::Value(Some(b.count as f64)))
                .collect(),
        });
        spec.bins = Some(bins);
        Ok(spec)
    }

    fn box_plot(&self) -> Result<ChartSpec, ChartError> {
        let values = self.channel("value")?;
        let group = self.optional_single("group");
        let axis = group.map(|g| self.category_axis(g));
        let (labels, row_index, kind) = match &axis {
            Some(a) => (a.labels.clone(), a.row_index.clone(), a.kind),
            None => (
                vec!["All rows".to_string()],
                vec![Some(0); self.table.row_count()],
                ValueKind::Categorical,
            ),
        };
        let mut spec = self.spec(
            Axis {
                label: group.unwrap_or("").to_string(),
                value_kind: kind,
            },
            Axis {
                label: values.join(", "),
                value_kind: ValueKind::Quantitative,
            },
        );
        for column in values {
            let nums = self.numbers(column);
            let mut buckets: Vec<Vec<f64>> = vec![Vec::new(); labels.len()];
            for (row, v) in nums.iter().enumerate() {
                if let (Some(cat), Some(v)) = (row_index[row], v) {
                    buckets[cat].push(*v);
                }
            }
            spec.series.push(Series {
                name: column.clone(),
                points: buckets
                    .into_iter()
                    .map(|b| five_number_summary(b).map_or(Point::Value(None), Point::Box))
                    .collect(),
            });
        }
        spec.categories = Some(labels);
        Ok(spec)
    }

    fn heatmap(&self) -> Result<ChartSpec, ChartError> {
        let row = self.single("row")?;
        let column = self.single("column")?;
        let value = self.single("value")?;
        let rows = self.category_axis(row);
        let cols = self.category_axis(column);
        let nums = self.numbers(value);
        let mut sums = vec![vec![0.0; cols.labels.len()]; rows.labels.len()];
        let mut counts = vec![vec![0usize; cols.labels.len()]; rows.labels.len()];
        for (i, v) in nums.iter().enumerate() {
            if let (Some(r), Some(c), Some(v)) = (rows.row_index[i], cols.row_index[i], v) {
                sums[r][c] += v;
                counts[r][c] += 1;
            }
        }
        let duplicates: usize = counts.iter().flatten().filter(|c| **c > 1).count();
        let mut spec = self.spec(
            Axis {
                label: column.to_string(),
                value_kind: cols.kind,
            },
            Axis {
                label: row.to_string(),
                value_kind: rows.kind,
            },
        );
        if duplicates > 0 {
            spec.notes.push(format!(
                "{duplicates} ({row}, {column}) pair(s) occur more than once; their '{value}' values are averaged"
            ));
        }
        spec.matrix = Some(Matrix {
            values: sums
                .iter()
                .zip(&counts)
                .map(|(s, c)| {
                    s.iter()
                        .zip(c)
                        .map(|(s, c)| (*c > 0).then(|| clean(s / *c as f64)))
                        .collect()
                })
                .collect(),
            rows: rows.labels,
            columns: cols.labels,
        });
        spec.series.push(Series {
            name: value.to_string(),
            points: Vec::new(),
        });
        Ok(spec)
    }
}

/// Square-root rule bins over `[min, max]`.
pub fn histogram_bins(values: &[f64]) -> Vec<Bin> {
    if values.is_empty() {
        return Vec::new();
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let k = if min == max {
        1
    } else {
        (values.len() as f64).sqrt().ceil() as usize
    };
    let width = (max - min) / k as f64;
    let mut edges: Vec<f64> = (0..k).map(|i| min + i as f64 * width).collect();
    edges.push(max);
    let mut counts = vec![0usize; k];
    for v in values {
        // Interior edges at or below v give the bin index.
        let i = edges[1..k].partition_point(|e| *e <= *v);
        counts[i] += 1;
    }
    (0..k)
        .map(|i| Bin {
            start: clean(edges[i]),
            end: clean(edges[i + 1]),
            count: counts[i],
        })
        .collect()
}

/// Inclusive linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn five_number_summary(mut values: Vec<f64>) -> Option<BoxStats> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    Some(BoxStats {
        min: clean(values[0]),
        q1: clean(quantile(&values, 0.25)),
        median: clean(quantile(&values, 0.5)),
        q3: clean(quantile(&values, 0.75)),
        max: clean(values[values.len() - 1]),
    })
}

/// Folds -0.0 into 0.0 so equal specs serialize identically.
fn clean(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn format_number(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}
