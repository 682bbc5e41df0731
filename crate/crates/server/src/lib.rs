//! HTTP JSON API for indicator specification cards.
//!
//! Routes, all under `/api`:
//!
//! | Method | Path | |
//! |---|---|---|
//! | GET | `/tasks`, `/idioms` | catalogs |
//! | POST | `/schema/infer` | infer column types without storing |
//! | POST | `/datasets` | upload CSV (`text/csv`) or generate (`application/json`) |
//! | GET | `/datasets/{id}` | schema and rows |
//! | PATCH | `/datasets/{id}/columns/{name}` | confirm or change a column type |
//! | POST | `/recommendations` | idioms for a task, a dataset or both |
//! | POST | `/preview` | chart spec for a binding |
//! | POST, GET | `/indicators` | create, list |
//! | GET, PATCH, DELETE | `/indicators/{id}` | read, partial update, delete |
//!
//! Errors are JSON [`ApiError`] bodies. Malformed requests get 400, missing
//! resources 404 and failed validation 422.

pub mod dto;
mod error;
mod routes;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use axum::http::{header, HeaderValue, Method};
use axum::Router;
use thiserror::Error;
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;

use isc_core::table::MAX_INGEST_BYTES;
use isc_core::{
    Catalog, Clock, ConfigError, FsStore, IdSource, IndicatorStore, StoreError, SystemClock,
    UuidIds,
};

pub use error::ApiError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServerConfig {
    pub host: String,
    pub port: u16,
    pub data_dir: PathBuf,
    /// Idiom mapping file; the built-in mapping when `None`.
    pub mapping_config: Option<PathBuf>,
    pub max_upload_bytes: usize,
    /// Browser origin allowed to call the API.
    pub cors_origin: Option<String>,
}

impl Default for ServerConfig {
    fn default() -> Self {
        ServerConfig {
            host: "127.0.0.1".to_string(),
            port: 8080,
            data_dir: PathBuf::from("isc-data"),
            mapping_config: None,
            max_upload_bytes: MAX_INGEST_BYTES,
            cors_origin: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum StartupError {
    #[error("cannot load mapping config: {0}")]
    Config(#[from] ConfigError),
    #[error("cannot open data directory: {0}")]
    Store(#[from] StoreError),
    #[error("invalid CORS origin '{0}'")]
    Cors(String),
    #[error("cannot listen on {addr}: {source}")]
    Bind {
        addr: String,
        source: std::io::Error,
    },
    #[error("server stopped: {0}")]
    Serve(std::io::Error),
}

/// Everything a request handler needs.
pub struct AppState {
    pub(crate) catalog: Arc<Catalog>,
    pub(crate) store: Arc<dyn IndicatorStore>,
    pub(crate) clock: Arc<dyn Clock>,
    pub(crate) card_ids: Arc<dyn IdSource>,
    pub(crate) dataset_ids: Arc<dyn IdSource>,
    pub(crate) max_upload_bytes: usize,
    /// Serializes mutations so each read-modify-write sees the last write.
    pub(crate) writes: Mutex<()>,
}

impl AppState {
    pub fn new(catalog: Catalog, store: Arc<dyn IndicatorStore>) -> Self {
        AppState {
            catalog: Arc::new(catalog),
            store,
            clock: Arc::new(SystemClock),
            card_ids: Arc::new(UuidIds),
            dataset_ids: Arc::new(UuidIds),
            max_upload_bytes: MAX_INGEST_BYTES,
            writes: Mutex::new(()),
        }
    }

    pub fn with_clock(mut self, clock: Arc<dyn Clock>) -> Self {
        self.clock = clock;
        self
    }

    pub fn with_ids(mut self, cards: Arc<dyn IdSource>, datasets: Arc<dyn IdSource>) -> Self {
        self.card_ids = cards;
        self.dataset_ids = datasets;
        self
    }

    pub fn with_max_upload_bytes(mut self, bytes: usize) -> Self {
        self.max_upload_bytes = bytes;
        self
    }

    pub fn from_config(config: &ServerConfig) -> Result<Self, StartupError> {
        let catalog = match &config.mapping_config {
            Some(path) => Catalog::load(path)?,
            None => Catalog::builtin().clone(),
        };
        let store = FsStore::open(&config.data_dir)?;
        Ok(AppState::new(catalog, Arc::new(store)).with_max_upload_bytes(config.max_upload_bytes))
    }
}

/// Builds the API router, optionally allowing one browser origin.
pub fn router(state: AppState, cors_origin: Option<&str>) -> Result<Router, StartupError> {
    let app = routes::routes(Arc::new(state));
    Ok(match cors_origin {
        None => app,
        Some(origin) => {
            let origin = origin
                .parse::<HeaderValue>()
                .map_err(|_| StartupError::Cors(origin.to_string()))?;
            app.layer(
                CorsLayer::new()
                    .allow_origin(origin)
                    .allow_methods([Method::GET, Method::POST, Method::PATCH, Method::DELETE])
                    .allow_headers([header::CONTENT_TYPE]),
            )
        }
    })
}

/// Binds the configured address. Split from [`serve`] so callers can report
/// the bound port.
pub async fn bind(config: &ServerConfig) -> Result<(TcpListener, Router), StartupError> {
    let app = router(
        AppState::from_config(config)?,
        config.cors_origin.as_deref(),
    )?;
    let addr = format!("{}:{}", config.host, config.port);
    let listener = TcpListener::bind(&addr)
        .await
        .map_err(|source| StartupError::Bind { addr, source })?;
    Ok((listener, app))
}

pub async fn serve(config: &ServerConfig) -> Result<(), StartupError> {
    let (listener, app) = bind(config).await?;
    run(listener, app).await
}

pub async fn run(listener: TcpListener, app: Router) -> Result<(), StartupError> {
    let addr: Option<SocketAddr> = listener.local_addr().ok();
    if let Some(addr) = addr {
        tracing::info!(%addr, "listening");
    }
    axum::serve(listener, app)
        .await
        .map_err(StartupError::Serve)
}
