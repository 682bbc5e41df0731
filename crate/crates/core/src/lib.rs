//! Indicator Specification Cards.
//!
//! The crate holds the card model and its order-free lifecycle ([`card`]),
//! tabular data ingestion with column type inference ([`table`]), the
//! configurable idiom catalog ([`catalog`]), idiom recommendation and
//! binding validation ([`recommend`]), renderer-neutral chart specs
//! ([`chart`]) and the filesystem store ([`store`]).

pub mod card;
pub mod catalog;
pub mod chart;
pub mod clock;
pub mod recommend;
pub mod store;
pub mod table;

pub use card::{
    card_completeness, create_card, update_card, BindingSet, CardError, CardPart, CardPatch,
    CardStatus, Completeness, IdiomKind, IndicatorCard, TaskKind,
};
pub use catalog::{Catalog, ChannelRequirement, ConfigError, IdiomCatalogEntry, TaskAbstraction};
pub use chart::{build_chart_spec, serialize_chart_spec, ChartError, ChartSpec};
pub use clock::{Clock, FixedClock, IdSource, SequentialIds, SystemClock, UuidIds};
pub use recommend::{Level, RecommendError, Recommendation, Violation, ViolationRule};
pub use store::{CardSummary, DatasetSource, FsStore, IndicatorStore, StoreError};
pub use table::{
    data_signature, generate_table, infer_column_type, parse_csv, serialize_csv, set_column_type,
    Column, ColumnSpec, ColumnType, DataSignature, DataTable, TableError,
};
