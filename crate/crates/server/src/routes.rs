use std::sync::Arc;

use axum::body::{Body, Bytes};
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, patch, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::Serialize;

use isc_core::card::CardPatch;
use isc_core::store::DatasetSource;
use isc_core::table::{parse_csv_with, IngestOptions};
use isc_core::{
    build_chart_spec, card_completeness, create_card, data_signature, generate_table,
    serialize_chart_spec, set_column_type, update_card, IndicatorCard, TableError,
};

use crate::dto::{self, *};
use crate::error::ApiError;
use crate::AppState;

type Shared = Arc<AppState>;
type ApiResult = Result<Response, ApiError>;

pub(crate) fn routes(state: Shared) -> Router {
    let limit = state.max_upload_bytes;
    Router::new()
        .route("/api/tasks", get(list_tasks))
        .route("/api/idioms", get(list_idioms))
        .route("/api/schema/infer", post(infer_schema))
        .route("/api/datasets", post(create_dataset))
        .route("/api/datasets/{id}", get(get_dataset))
        .route("/api/datasets/{id}/columns/{name}", patch(retype_column))
        .route("/api/recommendations", post(recommend))
        .route("/api/preview", post(preview))
        .route(
            "/api/indicators",
            post(create_indicator).get(list_indicators),
        )
        .route(
            "/api/indicators/{id}",
            get(get_indicator)
                .patch(patch_indicator)
                .delete(delete_indicator),
        )
        .fallback(not_found)
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state)
}

fn json_bytes(status: StatusCode, body: Vec<u8>) -> Response {
    (
        status,
        [(header::CONTENT_TYPE, "application/json")],
        Body::from(body),
    )
        .into_response()
}

fn json<T: Serialize>(status: StatusCode, value: &T) -> Response {
    json_bytes(status, dto::to_body(value))
}

fn parse_json<T: DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(ApiError::invalid_json)
}

fn is_json(headers: &HeaderMap) -> bool {
    headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.trim_start().starts_with("application/json"))
}

fn ingest_options(state: &AppState) -> IngestOptions<'_> {
    IngestOptions {
        max_bytes: state.max_upload_bytes,
        dictionaries: state.catalog.dictionaries(),
        ..IngestOptions::default()
    }
}

fn lock(state: &AppState) -> std::sync::MutexGuard<'_, ()> {
    state.writes.lock().unwrap_or_else(|p| p.into_inner())
}

async fn not_found() -> ApiError {
    ApiError::not_found("notFound", "no such endpoint")
}

async fn list_tasks(State(state): State<Shared>) -> Response {
    json(StatusCode::OK, &dto::task_catalog(&state.catalog))
}

async fn list_idioms(State(state): State<Shared>) -> Response {
    json(StatusCode::OK, &state.catalog.idioms())
}

async fn infer_schema(
    State(state): State<Shared>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult {
    let body = body?;
    let parsed = parse_csv_with(&body, &ingest_options(&state))?;
    Ok(json(StatusCode::OK, &InferResponse::from(&parsed)))
}

async fn create_dataset(
    State(state): State<Shared>,
    headers: HeaderMap,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult {
    let body = body?;
    let (table, warnings, source) = if is_json(&headers) {
        let request: GenerateRequest = parse_json(&body)?;
        (
            generate_table(request.columns, request.rows)?,
            Vec::new(),
            None,
        )
    } else {
        let parsed = parse_csv_with(&body, &ingest_options(&state))?;
        (parsed.table, parsed.warnings, Some(&body[..]))
    };
    let id = state.dataset_ids.next_id();
    let _guard = lock(&state);
    state.store.save_dataset(&id, &table, source)?;
    Ok(json(
        StatusCode::CREATED,
        &DatasetResponse::new(&id, &table, warnings),
    ))
}

async fn get_dataset(State(state): State<Shared>, Path(id): Path<String>) -> ApiResult {
    let table = state.store.load_dataset(&id)?;
    Ok(json(
        StatusCode::OK,
        &DatasetDetail {
            dataset_id: id,
            schema: table.schema(),
            row_count: table.row_count(),
            rows: table.rows().to_vec(),
        },
    ))
}

async fn retype_column(
    State(state): State<Shared>,
    Path((id, name)): Path<(String, String)>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult {
    let request: RetypeRequest = parse_json(&body?)?;
    let _guard = lock(&state);
    let table = state.store.load_dataset(&id)?;
    let table = set_column_type(&table, &name, request.column_type, request.order_dictionary)
        .map_err(|e| match e {
            TableError::UnknownColumn(_) => ApiError::not_found("unknownColumn", e.to_string()),
            other => ApiError::from(other),
        })?;
    state.store.update_dataset_schema(&id, &table)?;
    Ok(json(
        StatusCode::OK,
        &DatasetResponse::new(&id, &table, Vec::new()),
    ))
}

async fn recommend(State(state): State<Shared>, body: Result<Bytes, BytesRejection>) -> ApiResult {
    let request: RecommendationsRequest = parse_json(&body?)?;
    let signature = match &request.dataset_id {
        Some(id) => Some(data_signature(&state.store.load_dataset(id)?)),
        None => None,
    };
    let response = dto::recommendations(&state.catalog, request.task, signature)?;
    Ok(json(StatusCode::OK, &response))
}

async fn preview(State(state): State<Shared>, body: Result<Bytes, BytesRejection>) -> ApiResult {
    let request: PreviewRequest = parse_json(&body?)?;
    let table = state.store.load_dataset(&request.dataset_id)?;
    let spec = build_chart_spec(
        request.idiom,
        &table,
        &request.bindings,
        request.title.as_deref().unwrap_or_default(),
        &state.catalog,
    )?;
    Ok(json_bytes(
        StatusCode::OK,
        serialize_chart_spec(&spec).into_bytes(),
    ))
}

fn card_response(
    state: &AppState,
    mut card: IndicatorCard,
    warnings: Vec<isc_core::store::LoadWarning>,
) -> CardResponse {
    let sources: &dyn DatasetSource = state.store.as_ref();
    let completeness = card_completeness(&card, &state.catalog, sources);
    card.status = completeness.status;
    CardResponse {
        card,
        missing: completeness.missing,
        warnings,
    }
}

async fn create_indicator(
    State(state): State<Shared>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult {
    let body = body?;
    let patch: CardPatch = if body.iter().all(u8::is_ascii_whitespace) {
        CardPatch::default()
    } else {
        parse_json(&body)?
    };
    let _guard = lock(&state);
    let draft = create_card("", state.card_ids.as_ref(), state.clock.as_ref());
    let card = update_card(
        &draft,
        patch,
        &state.catalog,
        state.store.as_ref(),
        draft.created_at,
    )?;
    state.store.save_card(&card)?;
    Ok(json(
        StatusCode::CREATED,
        &card_response(&state, card, Vec::new()),
    ))
}

async fn list_indicators(State(state): State<Shared>) -> Response {
    json(StatusCode::OK, &state.store.list_cards())
}

async fn get_indicator(State(state): State<Shared>, Path(id): Path<String>) -> ApiResult {
    let loaded = state.store.load_card(&id)?;
    Ok(json(
        StatusCode::OK,
        &card_response(&state, loaded.card, loaded.warnings),
    ))
}

async fn patch_indicator(
    State(state): State<Shared>,
    Path(id): Path<String>,
    body: Result<Bytes, BytesRejection>,
) -> ApiResult {
    let patch: CardPatch = parse_json(&body?)?;
    let _guard = lock(&state);
    let current = state.store.load_card(&id)?.card;
    let card = update_card(
        &current,
        patch,
        &state.catalog,
        state.store.as_ref(),
        state.clock.now(),
    )?;
    state.store.save_card(&card)?;
    Ok(json(
        StatusCode::OK,
        &card_response(&state, card, Vec::new()),
    ))
}

async fn delete_indicator(State(state): State<Shared>, Path(id): Path<String>) -> ApiResult {
    let _guard = lock(&state);
    state.store.delete_card(&id)?;
    Ok(StatusCode::NO_CONTENT.into_response())
}
