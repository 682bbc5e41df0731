use axum::extract::rejection::BytesRejection;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;
use serde_json::Value;

use isc_core::chart::ChartError;
use isc_core::{CardError, RecommendError, StoreError, TableError};

/// JSON error body returned for every failed request.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    pub status: u16,
    pub code: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status: status.as_u16(),
            code: code.to_string(),
            message: message.into(),
            details: None,
        }
    }

    pub fn with_details(mut self, details: impl Serialize) -> Self {
        self.details = serde_json::to_value(details).ok();
        self
    }

    pub fn bad_request(code: &str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, code, message)
    }

    pub fn not_found(code: &str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, code, message)
    }

    pub fn invalid_json(err: serde_json::Error) -> Self {
        Self::bad_request("invalidJson", format!("request body is not valid: {err}"))
    }

    pub fn status_code(&self) -> StatusCode {
        StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status_code(), Json(self)).into_response()
    }
}

impl From<BytesRejection> for ApiError {
    fn from(rejection: BytesRejection) -> Self {
        let status = rejection.status();
        let code = if status == StatusCode::PAYLOAD_TOO_LARGE {
            "tooLarge"
        } else {
            "badRequest"
        };
        ApiError::new(status, code, rejection.body_text())
    }
}

impl From<TableError> for ApiError {
    fn from(err: TableError) -> Self {
        let status = match &err {
            TableError::TooLarge(_) => StatusCode::PAYLOAD_TOO_LARGE,
            TableError::UnknownColumn(_) => StatusCode::NOT_FOUND,
            TableError::IncompatibleValues { .. }
            | TableError::MissingOrderDictionary(_)
            | TableError::InvalidOrderDictionary { .. } => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        let details = match &err {
            TableError::IncompatibleValues { column, cells, .. } => {
                Some(serde_json::json!({ "column": column, "cells": cells }))
            }
            TableError::RaggedRows {
                row,
                expected,
                found,
            } => Some(serde_json::json!({ "row": row, "expected": expected, "found": found })),
            _ => None,
        };
        ApiError {
            status: status.as_u16(),
            code: err.code().to_string(),
            message: err.to_string(),
            details,
        }
    }
}

impl From<StoreError> for ApiError {
    fn from(err: StoreError) -> Self {
        let status = match &err {
            StoreError::NotFound { .. } => StatusCode::NOT_FOUND,
            StoreError::InvalidId(_) => StatusCode::BAD_REQUEST,
            StoreError::StorageFull(_) => StatusCode::INSUFFICIENT_STORAGE,
            StoreError::UnknownDataset(_) | StoreError::ReferencedDataset { .. } => {
                StatusCode::CONFLICT
            }
            StoreError::Io { .. } | StoreError::Corrupt { .. } => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, err.code(), err.to_string())
    }
}

impl From<CardError> for ApiError {
    fn from(err: CardError) -> Self {
        ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            err.code(),
            err.to_string(),
        )
    }
}

impl From<RecommendError> for ApiError {
    fn from(err: RecommendError) -> Self {
        ApiError::bad_request(err.code(), err.to_string())
    }
}

impl From<ChartError> for ApiError {
    fn from(err: ChartError) -> Self {
        let base = ApiError::new(
            StatusCode::UNPROCESSABLE_ENTITY,
            err.code(),
            err.to_string(),
        );
        match err {
            ChartError::InvalidBinding(violations) => base.with_details(violations),
            ChartError::UnsupportedChannels { .. } => ApiError {
                status: StatusCode::INTERNAL_SERVER_ERROR.as_u16(),
                ..base
            },
            ChartError::NegativePieValue { .. } => base,
        }
    }
}
