//! Indicator cards and their order-free lifecycle.
//!
//! A card pairs a goal/question with an indicator made of three optional
//! parts: a task (Why?), a dataset (What?) and an idiom with column
//! bindings (How?). Parts can be set in any order. The card is complete once
//! it has a name, an idiom, a dataset and bindings that satisfy the idiom's
//! channel requirements; a task is never required.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::de::{self, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::catalog::Catalog;
use crate::clock::{Clock, IdSource};
use crate::store::DatasetSource;

macro_rules! closed_vocabulary {
    ($(#[$meta:meta])* $name:ident, $what:literal { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "camelCase")]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = UnknownName;

            /// Accepts the wire form (`trendOverTime`) as well as kebab,
            /// snake or spaced spellings, case-insensitively.
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let key = normalize(s);
                $name::ALL
                    .iter()
                    .copied()
                    .find(|k| normalize(k.as_str()) == key)
                    .ok_or_else(|| UnknownName { kind: $what, name: s.to_string() })
            }
        }
    };
}

closed_vocabulary!(
    /// Analysis task vocabulary (Why?).
    TaskKind, "task" {
        Comparison => "comparison",
        TrendOverTime => "trendOverTime",
        Distribution => "distribution",
        PartToWhole => "partToWhole",
        Correlation => "correlation",
        Ranking => "ranking",
        Deviation => "deviation",
    }
);

closed_vocabulary!(
    /// Idiom vocabulary (How?).
    IdiomKind, "idiom" {
        Bar => "bar",
        GroupedBar => "groupedBar",
        StackedBar => "stackedBar",
        Line => "line",
        MultiLine => "multiLine",
        Area => "area",
        Scatter => "scatter",
        Bubble => "bubble",
        Pie => "pie",
        Donut => "donut",
        Histogram => "histogram",
        BoxPlot => "boxPlot",
        Heatmap => "heatmap",
        Radar => "radar",
    }
);

fn normalize(s: &str) -> String {
    s.chars()
        .filter(|c| !matches!(c, '-' | '_' | ' '))
        .flat_map(char::to_lowercase)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {kind} '{name}'")]
pub struct UnknownName {
    pub kind: &'static str,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BindingError {
    #[error("channel '{0}' is assigned more than once")]
    DuplicateChannel(String),
    #[error("column '{column}' is listed twice in channel '{channel}'")]
    DuplicateColumn { channel: String, column: String },
}

/// Column assignments per channel. On the wire this is a JSON object
/// mapping channel names to ordered column lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct BindingSet(BTreeMap<String, Vec<String>>);

impl BindingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn assign<I, S>(
        &mut self,
        channel: impl Into<String>,
        columns: I,
    ) -> Result<(), BindingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let channel = channel.into();
        if self.0.contains_key(&channel) {
            return Err(BindingError::DuplicateChannel(channel));
        }
        let mut list: Vec<String> = Vec::new();
        for column in columns {
            let column = column.into();
            if list.contains(&column) {
                return Err(BindingError::DuplicateColumn { channel, column });
            }
            list.push(column);
        }
        self.0.insert(channel, list);
        Ok(())
    }

    /// Builder form of [`assign`](Self::assign).
    pub fn with<I, S>(
        mut self,
        channel: impl Into<String>,
        columns: I,
    ) -> Result<Self, BindingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.assign(channel, columns)?;
        Ok(self)
    }

    pub fn get(&self, channel: &str) -> Option<&[String]> {
        self.0.get(channel).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.0.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<'de> Deserialize<'de> for BindingSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct BindingVisitor;

        impl<'de> Visitor<'de> for BindingVisitor {
            type Value = BindingSet;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object mapping channel names to column lists")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<BindingSet, A::Error> {
                let mut set = BindingSet::new();
                while let Some((channel, columns)) = map.next_entry::<String, Vec<String>>()? {
                    set.assign(channel, columns).map_err(de::Error::custom)?;
                }
                Ok(set)
            }
        }

        deserializer.deserialize_map(BindingVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CardStatus {
    Draft,
    Complete,
}

/// One Indicator Specification Card.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndicatorCard {
    pub id: String,
    pub name: String,
    pub goal: String,
    pub question: String,
    pub task: Option<TaskKind>,
    pub dataset_id: Option<String>,
    pub idiom: Option<IdiomKind>,
    pub bindings: Option<BindingSet>,
    pub status: CardStatus,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
}

impl IndicatorCard {
    /// Field equality ignoring `updated_at`.
    pub fn same_content(&self, other: &IndicatorCard) -> bool {
        let mut other = other.clone();
        other.updated_at = self.updated_at;
        *self == other
    }
}

/// Parts a card can lack on its way to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CardPart {
    Name,
    Idiom,
    Dataset,
    Bindings,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Completeness {
    pub status: CardStatus,
    pub missing: Vec<CardPart>,
}

/// A partial update. An absent field is left alone; for the optional parts
/// an explicit `null` clears the part.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CardPatch {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub question: Option<String>,
    #[serde(
        default,
        deserialize_with = "explicit_null",
        skip_serializing_if = "Option::is_none"
    )]
    pub task: Option<Option<TaskKind>>,
    #[serde(
        default,
        deserialize_with = "explicit_null",
        skip_serializing_if = "Option::is_none"
    )]
    pub dataset_id: Option<Option<String>>,
    #[serde(
        default,
        deserialize_with = "explicit_null",
        skip_serializing_if = "Option::is_none"
    )]
    pub idiom: Option<Option<IdiomKind>>,
    #[serde(
        default,
        deserialize_with = "explicit_null",
        skip_serializing_if = "Option::is_none"
    )]
    pub bindings: Option<Option<BindingSet>>,
}

fn explicit_null<'de, D, T>(deserializer: D) -> Result<Option<Option<T>>, D::Error>
where
    D: Deserializer<'de>,
    T: Deserialize<'de>,
{
    Option::<T>::deserialize(deserializer).map(Some)
}

impl CardPatch {
    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn goal(mut self, goal: impl Into<String>) -> Self {
        self.goal = Some(goal.into());
        self
    }

    pub fn question(mut self, question: impl Into<String>) -> Self {
        self.question = Some(question.into());
        self
    }

    pub fn task(mut self, task: Option<TaskKind>) -> Self {
        self.task = Some(task);
        self
    }

    pub fn dataset(mut self, id: Option<&str>) -> Self {
        self.dataset_id = Some(id.map(str::to_string));
        self
    }

    pub fn idiom(mut self, idiom: Option<IdiomKind>) -> Self {
        self.idiom = Some(idiom);
        self
    }

    pub fn bindings(mut self, bindings: Option<BindingSet>) -> Self {
        self.bindings = Some(bindings);
        self
    }

    /// Combines two patches; fields set in `later` win.
    pub fn merge(mut self, later: CardPatch) -> CardPatch {
        macro_rules! take {
            ($($f:ident),+) => { $(if later.$f.is_some() { self.$f = later.$f; })+ };
        }
        take!(name, goal, question, task, dataset_id, idiom, bindings);
        self
    }

    fn apply_to(self, card: &mut IndicatorCard) {
        if let Some(v) = self.name {
            card.name = v;
        }
        if let Some(v) = self.goal {
            card.goal = v;
        }
        if let Some(v) = self.question {
            card.question = v;
        }
        if let Some(v) = self.task {
            card.task = v;
        }
        if let Some(v) = self.dataset_id {
            card.dataset_id = v;
        }
        if let Some(v) = self.idiom {
            card.idiom = v;
        }
        if let Some(v) = self.bindings {
            card.bindings = v;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CardError {
    #[error("dataset '{0}' does not exist")]
    UnknownDataset(String),
    #[error("binding for channel '{channel}' references unknown column '{column}'")]
    UnknownColumn { channel: String, column: String },
}

impl CardError {
    pub fn code(&self) -> &'static str {
        match self {
            CardError::UnknownDataset(_) => "unknownDataset",
            CardError::UnknownColumn { .. } => "unknownColumn",
        }
    }
}

/// Starts a draft card. An empty name is accepted.
pub fn create_card(name: &str, ids: &dyn IdSource, clock: &dyn Clock) -> IndicatorCard {
    let now = clock.now();
    IndicatorCard {
        id: ids.next_id(),
        name: name.to_string(),
        goal: String::new(),
        question: String::new(),
        task: None,
        dataset_id: None,
        idiom: None,
        bindings: None,
        status: CardStatus::Draft,
        created_at: now,
        updated_at: now,
    }
}

/// Applies a patch and recomputes the status.
///
/// Fails with `UnknownColumn` when the resulting card has both a dataset and
/// bindings and a bound column is absent from the dataset, whichever of the
/// two was set last.
pub fn update_card(
    card: &IndicatorCard,
    patch: CardPatch,
    catalog: &Catalog,
    datasets: &dyn DatasetSource,
    now: DateTime<Utc>,
) -> Result<IndicatorCard, CardError> {
    let mut next = card.clone();
    patch.apply_to(&mut next);

    if let Some(id) = &next.dataset_id {
        let table = datasets
            .dataset(id)
            .ok_or_else(|| CardError::UnknownDataset(id.clone()))?;
        if let Some(bindings) = &next.bindings {
            for (channel, columns) in bindings.iter() {
                if let Some(column) = columns.iter().find(|c| table.column(c).is_none()) {
                    return Err(CardError::UnknownColumn {
                        channel: channel.to_string(),
                        column: column.clone(),
                    });
                }
            }
        }
    }

    next.status = card_completeness(&next, catalog, datasets).status;
    next.updated_at = now.max(next.created_at);
    Ok(next)
}

/// Lists exactly the unmet completion conditions.
pub fn card_completeness(
    card: &IndicatorCard,
    catalog: &Catalog,
    datasets: &dyn DatasetSource,
) -> Completeness {
    let mut missing = Vec::new();
    if card.name.trim().is_empty() {
        missing.push(CardPart::Name);
    }
    if card.idiom.is_none() {
        missing.push(CardPart::Idiom);
    }
    if card.dataset_id.is_none() {
        missing.push(CardPart::Dataset);
    }
    let bindings_ok = match (&card.idiom, &card.dataset_id, &card.bindings) {
        (Some(idiom), Some(id), Some(bindings)) => datasets
            .dataset(id)
            .is_some_and(|table| catalog.validate_binding(*idiom, &table, bindings).is_ok()),
        _ => false,
    };
    if !bindings_ok {
        missing.push(CardPart::Bindings);
    }
    Completeness {
        status: if missing.is_empty() {
            CardStatus::Complete
        } else {
            CardStatus::Draft
        },
        missing,
    }
}
