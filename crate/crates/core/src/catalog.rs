//! The mapping configuration: task vocabulary, idiom catalog with channel
//! requirements, task -> idiom guideline edges and ordinal dictionaries.
//!
//! A default configuration is compiled in from `config/mapping.toml`; a
//! replacement file with the same schema can be loaded at startup. The
//! loaded [`Catalog`] is immutable.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::card::{IdiomKind, TaskKind};
use crate::table::{ColumnType, OrdinalDictionary};

pub const CONFIG_VERSION: u32 = 1;

const DEFAULT_CONFIG: &str = include_str!("../config/mapping.toml");

/// An analysis task (Why?).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskAbstraction {
    pub task: TaskKind,
    pub label: String,
    pub description: String,
    pub illustration_ref: String,
}

/// A visual slot of an idiom and the columns it accepts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ChannelRequirement {
    pub name: String,
    pub min_columns: usize,
    /// `None` means unbounded.
    #[serde(default)]
    pub max_columns: Option<usize>,
    pub admissible_types: Vec<ColumnType>,
    pub required: bool,
}

impl ChannelRequirement {
    pub fn admits(&self, column_type: ColumnType) -> bool {
        self.admissible_types.contains(&column_type)
    }

    pub fn admits_count(&self, count: usize) -> bool {
        count >= self.min_columns && self.max_columns.is_none_or(|max| count <= max)
    }

    /// Columns a binding must supply to this channel at minimum.
    pub fn demand(&self) -> usize {
        if self.required {
            self.min_columns
        } else {
            0
        }
    }
}

/// An idiom (How?) with its channels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IdiomCatalogEntry {
    pub idiom: IdiomKind,
    pub label: String,
    pub illustration_ref: String,
    pub channels: Vec<ChannelRequirement>,
}

impl IdiomCatalogEntry {
    pub fn channel(&self, name: &str) -> Option<&ChannelRequirement> {
        self.channels.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct TaskConfig {
    task: TaskKind,
    label: String,
    description: String,
    illustration_ref: String,
    idioms: Vec<IdiomKind>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MappingConfig {
    version: u32,
    tasks: Vec<TaskConfig>,
    idioms: Vec<IdiomCatalogEntry>,
    #[serde(default)]
    dictionaries: Vec<OrdinalDictionary>,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read mapping config {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse mapping config: {0}")]
    Parse(String),
    #[error("unsupported mapping config version {0} (expected {CONFIG_VERSION})")]
    UnsupportedVersion(u32),
    #[error("invalid mapping config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    tasks: Vec<TaskAbstraction>,
    task_idioms: BTreeMap<TaskKind, Vec<IdiomKind>>,
    idioms: Vec<IdiomCatalogEntry>,
    dictionaries: Vec<OrdinalDictionary>,
}

impl Catalog {
    /// The compiled-in default configuration.
    pub fn builtin() -> &'static Catalog {
        static BUILTIN: OnceLock<Catalog> = OnceLock::new();
        BUILTIN.get_or_init(|| {
            Catalog::from_toml_str(DEFAULT_CONFIG).expect("built-in mapping config is valid")
        })
    }

    pub fn default_config_text() -> &'static str {
        DEFAULT_CONFIG
    }

    pub fn load(path: &Path) -> Result<Catalog, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Catalog::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Catalog, ConfigError> {
        let config: MappingConfig =
            toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        Catalog::from_config(config)
    }

    fn from_config(config: MappingConfig) -> Result<Catalog, ConfigError> {
        if config.version != CONFIG_VERSION {
            return Err(ConfigError::UnsupportedVersion(config.version));
        }
        let invalid = |msg: String| Err(ConfigError::Invalid(msg));

        let mut seen_idioms = HashSet::new();
        for entry in &config.idioms {
            if !seen_idioms.insert(entry.idiom) {
                return invalid(format!("idiom '{}' listed twice", entry.idiom));
            }
            if entry.label.trim().is_empty() {
                return invalid(format!("idiom '{}' has an empty label", entry.idiom));
            }
            validate_channels(entry)?;
        }
        if let Some(missing) = IdiomKind::ALL.iter().find(|k| !seen_idioms.contains(*k)) {
            return invalid(format!("idiom '{missing}' has no catalog entry"));
        }

        let mut tasks = Vec::with_capacity(config.tasks.len());
        let mut task_idioms = BTreeMap::new();
        for task in config.tasks {
            if task_idioms.contains_key(&task.task) {
                return invalid(format!("task '{}' listed twice", task.task));
            }
            if task.label.trim().is_empty() || task.description.trim().is_empty() {
                return invalid(format!(
                    "task '{}' needs a label and a description",
                    task.task
                ));
            }
            let mut edges = HashSet::new();
            for idiom in &task.idioms {
                if !edges.insert(*idiom) {
                    return invalid(format!("task '{}' lists idiom '{idiom}' twice", task.task));
                }
            }
            task_idioms.insert(task.task, task.idioms);
            tasks.push(TaskAbstraction {
                task: task.task,
                label: task.label,
                description: task.description,
                illustration_ref: task.illustration_ref,
            });
        }
        if let Some(missing) = TaskKind::ALL.iter().find(|k| !task_idioms.contains_key(*k)) {
            return invalid(format!("task '{missing}' has no catalog entry"));
        }

        let mut dict_names = HashSet::new();
        for dict in &config.dictionaries {
            if !dict_names.insert(dict.name.as_str()) {
                return invalid(format!("dictionary '{}' listed twice", dict.name));
            }
            if dict.levels.is_empty() || dict.levels.iter().any(|l| l.is_empty()) {
                return invalid(format!("dictionary '{}' has an empty level", dict.name));
            }
            let mut spellings = HashSet::new();
            for s in dict.levels.iter().flatten() {
                if s.trim().is_empty() || !spellings.insert(s.trim().to_lowercase()) {
                    return invalid(format!(
                        "dictionary '{}' has an empty or repeated spelling '{s}'",
                        dict.name
                    ));
                }
            }
        }

        Ok(Catalog {
            tasks,
            task_idioms,
            idioms: config.idioms,
            dictionaries: config.dictionaries,
        })
    }

    pub fn tasks(&self) -> &[TaskAbstraction] {
        &self.tasks
    }

    pub fn task(&self, kind: TaskKind) -> Option<&TaskAbstraction> {
        self.tasks.iter().find(|t| t.task == kind)
    }

    /// Idioms the guideline table suggests for a task.
    pub fn idioms_for_task(&self, kind: TaskKind) -> &[IdiomKind] {
        self.task_idioms
            .get(&kind)
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Catalog entries in configuration order.
    pub fn idioms(&self) -> &[IdiomCatalogEntry] {
        &self.idioms
    }

    pub fn idiom(&self, kind: IdiomKind) -> Option<&IdiomCatalogEntry> {
        self.idioms.iter().find(|e| e.idiom == kind)
    }

    pub fn dictionaries(&self) -> &[OrdinalDictionary] {
        &self.dictionaries
    }
}

fn validate_channels(entry: &IdiomCatalogEntry) -> Result<(), ConfigError> {
    let fail = |msg: String| {
        Err(ConfigError::Invalid(format!(
            "idiom '{}': {msg}",
            entry.idiom
        )))
    };
    if !entry.channels.iter().any(|c| c.required) {
        return fail("needs at least one required channel".into());
    }
    let mut names = HashSet::new();
    for channel in &entry.channels {
        if channel.name.trim().is_empty() {
            return fail("channel with an empty name".into());
        }
        if !names.insert(channel.name.as_str()) {
            return fail(format!("channel '{}' listed twice", channel.name));
        }
        if let Some(max) = channel.max_columns {
            if max < channel.min_columns || max == 0 {
                return fail(format!(
                    "channel '{}' has an empty column range",
                    channel.name
                ));
            }
        }
        if channel.required && channel.min_columns == 0 {
            return fail(format!(
                "required channel '{}' needs minColumns >= 1",
                channel.name
            ));
        }
        if channel.admissible_types.is_empty() {
            return fail(format!("channel '{}' admits no column type", channel.name));
        }
        let distinct: HashSet<_> = channel.admissible_types.iter().collect();
        if distinct.len() != channel.admissible_types.len() {
            return fail(format!("channel '{}' repeats a column type", channel.name));
        }
    }
    Ok(())
}
