//! Persistence for cards and datasets.
//!
//! [`FsStore`] keeps one JSON file per card and one directory per dataset:
//!
//! ```text
//! root/
//!   index.json                 card summaries, rebuilt on open
//!   cards/{id}.json
//!   datasets/{id}/data.csv     bytes as uploaded
//!   datasets/{id}/schema.json  confirmed column types
//! ```
//!
//! Every file is written to a temporary sibling and then renamed into
//! place, so a reader sees either the old or the new content.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::card::{CardStatus, IdiomKind, IndicatorCard};
use crate::table::{read_csv_records, serialize_csv, DataTable, IngestOptions, Schema, TableError};

/// Looks up datasets by id.
pub trait DatasetSource {
    fn dataset(&self, id: &str) -> Option<DataTable>;
}

impl DatasetSource for HashMap<String, DataTable> {
    fn dataset(&self, id: &str) -> Option<DataTable> {
        self.get(id).cloned()
    }
}

/// A source with no datasets at all.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoDatasets;

impl DatasetSource for NoDatasets {
    fn dataset(&self, _id: &str) -> Option<DataTable> {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CardSummary {
    pub id: String,
    pub name: String,
    pub status: CardStatus,
    pub idiom: Option<IdiomKind>,
    pub dataset_id: Option<String>,
    pub updated_at: DateTime<Utc>,
}

impl From<&IndicatorCard> for CardSummary {
    fn from(card: &IndicatorCard) -> Self {
        CardSummary {
            id: card.id.clone(),
            name: card.name.clone(),
            status: card.status,
            idiom: card.idiom,
            dataset_id: card.dataset_id.clone(),
            updated_at: card.updated_at,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LoadWarning {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedCard {
    pub card: IndicatorCard,
    pub warnings: Vec<LoadWarning>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StoreError {
    #[error("{kind} '{id}' not found")]
    NotFound { kind: &'static str, id: String },
    #[error("invalid id '{0}': use 1 to 64 letters, digits, '-' or '_'")]
    InvalidId(String),
    #[error("storage is full while writing {0}")]
    StorageFull(String),
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
    #[error("{path} is corrupt: {message}")]
    Corrupt { path: String, message: String },
    #[error("dataset '{0}' is not stored")]
    UnknownDataset(String),
    #[error("dataset '{dataset}' is used by cards {cards:?}")]
    ReferencedDataset { dataset: String, cards: Vec<String> },
}

impl StoreError {
    pub fn code(&self) -> &'static str {
        match self {
            StoreError::NotFound { .. } => "notFound",
            StoreError::InvalidId(_) => "invalidId",
            StoreError::StorageFull(_) => "storageFull",
            StoreError::Io { .. } => "ioError",
            StoreError::Corrupt { .. } => "corrupt",
            StoreError::UnknownDataset(_) => "unknownDataset",
            StoreError::ReferencedDataset { .. } => "referencedDataset",
        }
    }
}

fn io_error(path: &Path, err: io::Error) -> StoreError {
    if err.kind() == io::ErrorKind::StorageFull {
        StoreError::StorageFull(path.display().to_string())
    } else {
        StoreError::Io {
            path: path.display().to_string(),
            message: err.to_string(),
        }
    }
}

pub fn valid_id(id: &str) -> bool {
    (1..=64).contains(&id.len())
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}

fn check_id(id: &str) -> Result<(), StoreError> {
    if valid_id(id) {
        Ok(())
    } else {
        Err(StoreError::InvalidId(id.to_string()))
    }
}

/// Card and dataset persistence. [`FsStore`] is the file-backed
/// implementation.
pub trait IndicatorStore: DatasetSource + Send + Sync {
    /// Fails with `UnknownDataset` when the card names a dataset that is
    /// not stored.
    fn save_card(&self, card: &IndicatorCard) -> Result<(), StoreError>;
    fn load_card(&self, id: &str) -> Result<LoadedCard, StoreError>;
    fn delete_card(&self, id: &str) -> Result<(), StoreError>;
    /// Newest first; ties broken by id.
    fn list_cards(&self) -> Vec<CardSummary>;
    fn save_dataset(
        &self,
        id: &str,
        table: &DataTable,
        source_csv: Option<&[u8]>,
    ) -> Result<(), StoreError>;
    fn load_dataset(&self, id: &str) -> Result<DataTable, StoreError>;
    /// Replaces the stored schema; the cells are left untouched.
    fn update_dataset_schema(&self, id: &str, table: &DataTable) -> Result<(), StoreError>;
    fn delete_dataset(&self, id: &str) -> Result<(), StoreError>;
}

/// A file written next to its target but not yet renamed into place.
#[derive(Debug)]
pub struct Staged {
    temp: PathBuf,
    target: PathBuf,
}

impl Staged {
    pub fn temp_path(&self) -> &Path {
        &self.temp
    }

    /// Publishes the staged content.
    pub fn commit(self) -> Result<(), StoreError> {
        fs::rename(&self.temp, &self.target).map_err(|e| io_error(&self.target, e))?;
        if let Some(dir) = self.target.parent() {
            sync_dir(dir)?;
        }
        Ok(())
    }

    /// Removes the temporary file.
    pub fn discard(self) {
        let _ = fs::remove_file(&self.temp);
    }
}

fn sync_dir(dir: &Path) -> Result<(), StoreError> {
    #[cfg(unix)]
    fs::File::open(dir)
        .and_then(|f| f.sync_all())
        .map_err(|e| io_error(dir, e))?;
    #[cfg(not(unix))]
    let _ = dir;
    Ok(())
}

fn stage(target: &Path, bytes: &[u8]) -> Result<Staged, StoreError> {
    let dir = target.parent().expect("store paths have a parent");
    let name = target
        .file_name()
        .expect("store paths have a file name")
        .to_string_lossy();
    let temp = dir.join(format!(".{name}.{}.tmp", uuid::Uuid::new_v4().simple()));
    let write = || -> io::Result<()> {
        let mut file = fs::File::create(&temp)?;
        file.write_all(bytes)?;
        file.sync_all()
    };
    if let Err(e) = write() {
        let _ = fs::remove_file(&temp);
        return Err(io_error(target, e));
    }
    Ok(Staged {
        temp,
        target: target.to_path_buf(),
    })
}

fn write_atomic(target: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    stage(target, bytes)?.commit()
}

fn is_temp_name(name: &str) -> bool {
    name.starts_with('.') && name.ends_with(".tmp")
}

/// Removes leftover temporary files from interrupted writes.
fn sweep_temp_files(dir: &Path) -> Result<usize, StoreError> {
    let mut removed = 0;
    for entry in fs::read_dir(dir).map_err(|e| io_error(dir, e))? {
        let entry = entry.map_err(|e| io_error(dir, e))?;
        let path = entry.path();
        if entry.file_name().to_str().is_some_and(is_temp_name) {
            fs::remove_file(&path).map_err(|e| io_error(&path, e))?;
            removed += 1;
        } else if path.is_dir() {
            removed += sweep_temp_files(&path)?;
        }
    }
    Ok(removed)
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("store records always serialize");
    bytes.push(b'\n');
    bytes
}

/// Options for reading back stored CSV; limits were enforced at upload.
fn stored_csv_options() -> IngestOptions<'static> {
    IngestOptions {
        max_bytes: usize::MAX,
        max_columns: usize::MAX,
        max_rows: usize::MAX,
        ..IngestOptions::default()
    }
}

#[derive(Debug)]
struct State {
    index: BTreeMap<String, CardSummary>,
    datasets: HashMap<String, DataTable>,
}

/// File-backed store. Safe to share between threads.
#[derive(Debug)]
pub struct FsStore {
    root: PathBuf,
    state: Mutex<State>,
    corrupt: Vec<String>,
}

impl FsStore {
    /// Opens or creates a store. Stale temporary files are removed and the
    /// index is rebuilt from the card files.
    pub fn open(root: impl AsRef<Path>) -> Result<FsStore, StoreError> {
        let root = root.as_ref().to_path_buf();
        for dir in [root.join("cards"), root.join("datasets")] {
            fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
        }
        sweep_temp_files(&root)?;
        let mut store = FsStore {
            root,
            state: Mutex::new(State {
                index: BTreeMap::new(),
                datasets: HashMap::new(),
            }),
            corrupt: Vec::new(),
        };
        store.corrupt = store.rebuild_index()?;
        Ok(store)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Ids of card files that could not be read when the store was opened.
    pub fn corrupt_cards(&self) -> &[String] {
        &self.corrupt
    }

    fn card_path(&self, id: &str) -> PathBuf {
        self.root.join("cards").join(format!("{id}.json"))
    }

    fn dataset_dir(&self, id: &str) -> PathBuf {
        self.root.join("datasets").join(id)
    }

    fn index_path(&self) -> PathBuf {
        self.root.join("index.json")
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, State> {
        self.state.lock().unwrap_or_else(|p| p.into_inner())
    }

    /// Rescans the card files and rewrites `index.json`. Returns the ids of
    /// unreadable cards, which are left out of the index.
    pub fn rebuild_index(&self) -> Result<Vec<String>, StoreError> {
        let dir = self.root.join("cards");
        let mut index = BTreeMap::new();
        let mut corrupt = Vec::new();
        for entry in fs::read_dir(&dir).map_err(|e| io_error(&dir, e))? {
            let entry = entry.map_err(|e| io_error(&dir, e))?;
            let name = entry.file_name().to_string_lossy().into_owned();
            let Some(id) = name.strip_suffix(".json") else {
                continue;
            };
            if is_temp_name(&name) || !valid_id(id) {
                continue;
            }
            match self.read_card(id) {
                Ok(card) => {
                    index.insert(card.id.clone(), CardSummary::from(&card));
                }
                Err(StoreError::Corrupt { .. }) => corrupt.push(id.to_string()),
                Err(e) => return Err(e),
            }
        }
        corrupt.sort();
        let mut state = self.lock();
        state.index = index;
        self.write_index(&state)?;
        Ok(corrupt)
    }

    fn write_index(&self, state: &State) -> Result<(), StoreError> {
        write_atomic(&self.index_path(), &to_json(&sorted(&state.index)))
    }

    fn read_card(&self, id: &str) -> Result<IndicatorCard, StoreError> {
        let path = self.card_path(id);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(StoreError::NotFound {
                    kind: "card",
                    id: id.to_string(),
                })
            }
            Err(e) => return Err(io_error(&path, e)),
        };
        let card: IndicatorCard =
            serde_json::from_slice(&bytes).map_err(|e| StoreError::Corrupt {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        if card.id != id {
            return Err(StoreError::Corrupt {
                path: path.display().to_string(),
                message: format!("file holds card '{}'", card.id),
            });
        }
        Ok(card)
    }

    /// Writes a card to a temporary file without publishing it.
    pub fn stage_card(&self, card: &IndicatorCard) -> Result<Staged, StoreError> {
        check_id(&card.id)?;
        stage(&self.card_path(&card.id), &to_json(card))
    }

    pub fn dataset_exists(&self, id: &str) -> bool {
        valid_id(id) && self.dataset_dir(id).join("schema.json").is_file()
    }

    fn read_dataset(&self, id: &str) -> Result<DataTable, StoreError> {
        let dir = self.dataset_dir(id);
        let schema_path = dir.join("schema.json");
        let data_path = dir.join("data.csv");
        let schema_bytes = match fs::read(&schema_path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(StoreError::NotFound {
                    kind: "dataset",
                    id: id.to_string(),
                })
            }
            Err(e) => return Err(io_error(&schema_path, e)),
        };
        let corrupt = |path: &Path, message: String| StoreError::Corrupt {
            path: path.display().to_string(),
            message,
        };
        let schema: Schema = serde_json::from_slice(&schema_bytes)
            .map_err(|e| corrupt(&schema_path, e.to_string()))?;
        let data = fs::read(&data_path).map_err(|e| io_error(&data_path, e))?;
        let records = read_csv_records(&data, &stored_csv_options())
            .map_err(|e| corrupt(&data_path, e.to_string()))?;
        let table = DataTable::from_schema(schema, &records.header, records.rows)
            .map_err(|e: TableError| corrupt(&data_path, e.to_string()))?;
        Ok(table.with_dataset_id(id))
    }

    fn referencing_cards(&self, dataset: &str) -> Vec<String> {
        self.lock()
            .index
            .values()
            .filter(|s| s.dataset_id.as_deref() == Some(dataset))
            .map(|s| s.id.clone())
            .collect()
    }
}

fn sorted(index: &BTreeMap<String, CardSummary>) -> Vec<CardSummary> {
    let mut out: Vec<CardSummary> = index.values().cloned().collect();
    out.sort_by(|a, b| {
        b.updated_at
            .cmp(&a.updated_at)
            .then_with(|| a.id.cmp(&b.id))
    });
    out
}

impl DatasetSource for FsStore {
    fn dataset(&self, id: &str) -> Option<DataTable> {
        self.load_dataset(id).ok()
    }
}

impl IndicatorStore for FsStore {
    fn save_card(&self, card: &IndicatorCard) -> Result<(), StoreError> {
        if let Some(dataset) = &card.dataset_id {
            if !self.dataset_exists(dataset) {
                return Err(StoreError::UnknownDataset(dataset.clone()));
            }
        }
        let staged = self.stage_card(card)?;
        let mut state = self.lock();
        staged.commit()?;
        state.index.insert(card.id.clone(), CardSummary::from(card));
        self.write_index(&state)
    }

    fn load_card(&self, id: &str) -> Result<LoadedCard, StoreError> {
        check_id(id)?;
        let card = self.read_card(id)?;
        let mut warnings = Vec::new();
        if let Some(dataset) = &card.dataset_id {
            if !self.dataset_exists(dataset) {
                warnings.push(LoadWarning {
                    code: "danglingDataset".to_string(),
                    message: format!("card references dataset '{dataset}', which is not stored"),
                });
            }
        }
        Ok(LoadedCard { card, warnings })
    }

    fn delete_card(&self, id: &str) -> Result<(), StoreError> {
        check_id(id)?;
        let path = self.card_path(id);
        let mut state = self.lock();
        match fs::remove_file(&path) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(StoreError::NotFound {
                    kind: "card",
                    id: id.to_string(),
                })
            }
            Err(e) => return Err(io_error(&path, e)),
        }
        sync_dir(path.parent().expect("card dir"))?;
        state.index.remove(id);
        self.write_index(&state)
    }

    fn list_cards(&self) -> Vec<CardSummary> {
        sorted(&self.lock().index)
    }

    fn save_dataset(
        &self,
        id: &str,
        table: &DataTable,
        source_csv: Option<&[u8]>,
    ) -> Result<(), StoreError> {
        check_id(id)?;
        let dir = self.dataset_dir(id);
        fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
        let data = match source_csv {
            Some(bytes) => bytes.to_vec(),
            None => serialize_csv(table),
        };
        let mut state = self.lock();
        write_atomic(&dir.join("data.csv"), &data)?;
        write_atomic(&dir.join("schema.json"), &to_json(&table.schema()))?;
        sync_dir(&self.root.join("datasets"))?;
        state.datasets.remove(id);
        Ok(())
    }

    fn load_dataset(&self, id: &str) -> Result<DataTable, StoreError> {
        check_id(id)?;
        if let Some(table) = self.lock().datasets.get(id) {
            return Ok(table.clone());
        }
        let table = self.read_dataset(id)?;
        self.lock().datasets.insert(id.to_string(), table.clone());
        Ok(table)
    }

    fn update_dataset_schema(&self, id: &str, table: &DataTable) -> Result<(), StoreError> {
        let current = self.load_dataset(id)?;
        let names = |t: &DataTable| {
            t.columns()
                .iter()
                .map(|c| c.name.clone())
                .collect::<Vec<_>>()
        };
        if names(&current) != names(table) || current.rows() != table.rows() {
            return Err(StoreError::Corrupt {
                path: self.dataset_dir(id).display().to_string(),
                message: "new schema does not describe the stored cells".to_string(),
            });
        }
        let mut state = self.lock();
        write_atomic(
            &self.dataset_dir(id).join("schema.json"),
            &to_json(&table.schema()),
        )?;
        state.datasets.remove(id);
        Ok(())
    }

    fn delete_dataset(&self, id: &str) -> Result<(), StoreError> {
        check_id(id)?;
        if !self.dataset_exists(id) {
            return Err(StoreError::NotFound {
                kind: "dataset",
                id: id.to_string(),
            });
        }
        let cards = self.referencing_cards(id);
        if !cards.is_empty() {
            return Err(StoreError::ReferencedDataset {
                dataset: id.to_string(),
                cards,
            });
        }
        let dir = self.dataset_dir(id);
        let mut state = self.lock();
        fs::remove_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
        sync_dir(&self.root.join("datasets"))?;
        state.datasets.remove(id);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::card::{create_card, update_card, BindingSet, CardPatch};
    use crate::catalog::Catalog;
    use crate::clock::{Clock, FixedClock, SequentialIds};
    use crate::table::{parse_csv, set_column_type, ColumnType};

    const CSV: &[u8] = b"Exercises,Class Average Points,My Points\r\nEx1,7.5,9\r\nEx2,6,4\r\n";

    fn store() -> (tempfile::TempDir, FsStore) {
        let dir = tempfile::tempdir().unwrap();
        let store = FsStore::open(dir.path()).unwrap();
        (dir, store)
    }

    #[test]
    fn ids_are_validated() {
        assert!(valid_id("card-000001"));
        assert!(valid_id("a_B-9"));
        assert!(!valid_id(""));
        assert!(!valid_id("../etc"));
        assert!(!valid_id(&"x".repeat(65)));
        let (_d, s) = store();
        assert_eq!(
            s.load_card("a/b").unwrap_err(),
            StoreError::InvalidId("a/b".into())
        );
    }

    #[test]
    fn dataset_round_trip_keeps_bytes_and_schema() {
        let (dir, s) = store();
        let table = parse_csv(CSV).unwrap().table;
        let table = set_column_type(&table, "My Points", ColumnType::Categorical, None).unwrap();
        s.save_dataset("ds1", &table, Some(CSV)).unwrap();
        assert_eq!(
            fs::read(dir.path().join("datasets/ds1/data.csv")).unwrap(),
            CSV
        );
        let back = FsStore::open(dir.path())
            .unwrap()
            .load_dataset("ds1")
            .unwrap();
        assert_eq!(back.columns(), table.columns());
        assert_eq!(back.rows(), table.rows());
        assert_eq!(back.dataset_id(), Some("ds1"));
    }

    #[test]
    fn card_round_trip_and_listing_order() {
        let (dir, s) = store();
        let clock = FixedClock::new("2024-03-13T09:00:00Z".parse().unwrap());
        let ids = SequentialIds::new("card");
        let a = create_card("A", &ids, &clock);
        let b = create_card("B", &ids, &clock);
        let mut c = create_card("C", &ids, &clock);
        c.updated_at = b.updated_at;
        for card in [&a, &b, &c] {
            s.save_card(card).unwrap();
        }
        assert_eq!(s.load_card(&a.id).unwrap().card, a);
        let order: Vec<String> = s.list_cards().into_iter().map(|x| x.id).collect();
        assert_eq!(order, [b.id.clone(), c.id.clone(), a.id.clone()]);

        fs::remove_file(dir.path().join("index.json")).unwrap();
        let reopened = FsStore::open(dir.path()).unwrap();
        assert_eq!(reopened.list_cards(), s.list_cards());
    }

    #[test]
    fn interrupted_write_leaves_old_version() {
        let (dir, s) = store();
        let clock = FixedClock::new("2024-03-13T09:00:00Z".parse().unwrap());
        let card = create_card("Original", &SequentialIds::new("card"), &clock);
        s.save_card(&card).unwrap();
        let mut changed = card.clone();
        changed.name = "Changed".into();
        let staged = s.stage_card(&changed).unwrap();
        assert!(staged.temp_path().exists());
        std::mem::forget(staged);

        let reopened = FsStore::open(dir.path()).unwrap();
        assert_eq!(reopened.load_card(&card.id).unwrap().card.name, "Original");
        let leftovers = fs::read_dir(dir.path().join("cards"))
            .unwrap()
            .filter(|e| {
                e.as_ref()
                    .unwrap()
                    .file_name()
                    .to_string_lossy()
                    .ends_with(".tmp")
            })
            .count();
        assert_eq!(leftovers, 0);
    }

    #[test]
    fn corrupt_card_is_reported_not_indexed() {
        let (dir, s) = store();
        fs::write(dir.path().join("cards/bad.json"), b"{\"id\": \"bad\", ").unwrap();
        let reopened = FsStore::open(dir.path()).unwrap();
        assert_eq!(reopened.corrupt_cards(), ["bad"]);
        assert!(reopened.list_cards().is_empty());
        assert!(matches!(
            s.load_card("bad"),
            Err(StoreError::Corrupt { .. })
        ));
    }

    #[test]
    fn dangling_dataset_is_a_warning() {
        let (dir, s) = store();
        let clock = FixedClock::new("2024-03-13T09:00:00Z".parse().unwrap());
        let mut card = create_card("A", &SequentialIds::new("card"), &clock);
        card.dataset_id = Some("gone".into());
        assert_eq!(
            s.save_card(&card),
            Err(StoreError::UnknownDataset("gone".into()))
        );
        s.save_dataset("gone", &parse_csv(CSV).unwrap().table, None)
            .unwrap();
        s.save_card(&card).unwrap();
        fs::remove_dir_all(dir.path().join("datasets/gone")).unwrap();
        let loaded = FsStore::open(dir.path())
            .unwrap()
            .load_card(&card.id)
            .unwrap();
        assert_eq!(loaded.warnings[0].code, "danglingDataset");
    }

    #[test]
    fn referenced_dataset_cannot_be_deleted() {
        let (_d, s) = store();
        let table = parse_csv(CSV).unwrap().table;
        s.save_dataset("ds1", &table, None).unwrap();
        let clock = FixedClock::new("2024-03-13T09:00:00Z".parse().unwrap());
        let card = create_card("A", &SequentialIds::new("card"), &clock);
        let card = update_card(
            &card,
            CardPatch::default()
                .dataset(Some("ds1"))
                .bindings(Some(BindingSet::new().with("x", ["Exercises"]).unwrap())),
            Catalog::builtin(),
            &s,
            clock.now(),
        )
        .unwrap();
        s.save_card(&card).unwrap();
        assert!(matches!(
            s.delete_dataset("ds1"),
            Err(StoreError::ReferencedDataset { .. })
        ));
        s.delete_card(&card.id).unwrap();
        s.delete_dataset("ds1").unwrap();
        assert!(!s.dataset_exists("ds1"));
        assert!(matches!(
            s.delete_card(&card.id),
            Err(StoreError::NotFound { .. })
        ));
    }

    #[test]
    fn schema_update_is_persisted() {
        let (dir, s) = store();
        let table = parse_csv(CSV).unwrap().table;
        s.save_dataset("ds1", &table, Some(CSV)).unwrap();
        let retyped = set_column_type(
            &table,
            "Class Average Points",
            ColumnType::Categorical,
            None,
        )
        .unwrap();
        s.update_dataset_schema("ds1", &retyped).unwrap();
        let back = FsStore::open(dir.path())
            .unwrap()
            .load_dataset("ds1")
            .unwrap();
        assert_eq!(back.columns()[1].column_type, ColumnType::Categorical);
        assert!(!back.columns()[1].inferred);
    }
}
