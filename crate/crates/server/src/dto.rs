//! Request and response bodies. The CLI renders its `--json` output with
//! the same types and [`to_body`], so both emit identical bytes.

use serde::{Deserialize, Serialize};

use isc_core::card::CardPart;
use isc_core::store::{CardSummary, LoadWarning};
use isc_core::table::{IngestWarning, ParsedCsv, Schema};
use isc_core::{
    BindingSet, Catalog, ColumnSpec, ColumnType, DataSignature, DataTable, IdiomKind,
    IndicatorCard, RecommendError, Recommendation, TaskAbstraction, TaskKind,
};

/// Compact JSON with no trailing newline.
pub fn to_body<T: Serialize>(value: &T) -> Vec<u8> {
    serde_json::to_vec(value).expect("response bodies always serialize")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskEntry {
    #[serde(flatten)]
    pub task: TaskAbstraction,
    pub idioms: Vec<IdiomKind>,
}

pub fn task_catalog(catalog: &Catalog) -> Vec<TaskEntry> {
    catalog
        .tasks()
        .iter()
        .map(|t| TaskEntry {
            task: t.clone(),
            idioms: catalog.idioms_for_task(t.task).to_vec(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InferResponse {
    pub schema: Schema,
    pub row_count: usize,
    pub warnings: Vec<IngestWarning>,
}

impl From<&ParsedCsv> for InferResponse {
    fn from(parsed: &ParsedCsv) -> Self {
        InferResponse {
            schema: parsed.table.schema(),
            row_count: parsed.table.row_count(),
            warnings: parsed.warnings.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatasetResponse {
    pub dataset_id: String,
    pub schema: Schema,
    pub row_count: usize,
    #[serde(default)]
    pub warnings: Vec<IngestWarning>,
}

impl DatasetResponse {
    pub fn new(id: &str, table: &DataTable, warnings: Vec<IngestWarning>) -> Self {
        DatasetResponse {
            dataset_id: id.to_string(),
            schema: table.schema(),
            row_count: table.row_count(),
            warnings,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DatasetDetail {
    pub dataset_id: String,
    pub schema: Schema,
    pub row_count: usize,
    pub rows: Vec<Vec<String>>,
}

/// Body of `POST /api/datasets` sent as `application/json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GenerateRequest {
    pub columns: Vec<ColumnSpec>,
    #[serde(default)]
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RetypeRequest {
    #[serde(rename = "type")]
    pub column_type: ColumnType,
    #[serde(default)]
    pub order_dictionary: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RecommendationsRequest {
    #[serde(default)]
    pub task: Option<TaskKind>,
    #[serde(default)]
    pub dataset_id: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RecommendationsResponse {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub task: Option<TaskKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<DataSignature>,
    pub recommendations: Vec<Recommendation>,
}

pub fn recommendations(
    catalog: &Catalog,
    task: Option<TaskKind>,
    signature: Option<DataSignature>,
) -> Result<RecommendationsResponse, RecommendError> {
    Ok(RecommendationsResponse {
        recommendations: catalog.recommend(task, signature.as_ref())?,
        task,
        signature,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct PreviewRequest {
    pub idiom: IdiomKind,
    pub dataset_id: String,
    pub bindings: BindingSet,
    #[serde(default)]
    pub title: Option<String>,
}

/// A card plus its unmet completion conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CardResponse {
    #[serde(flatten)]
    pub card: IndicatorCard,
    pub missing: Vec<CardPart>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<LoadWarning>,
}

pub type CardList = Vec<CardSummary>;
