//! Idiom recommendation and binding validation.
//!
//! Task-driven recommendations are a lookup in the catalog's task -> idiom
//! edges. Data-driven recommendations ask whether the table's columns can
//! fill every required channel of an idiom, each column used at most once.
//! That is a bipartite b-matching between channels and columns; because
//! columns only differ by type, Hall's condition reduces to a check over
//! subsets of required channels:
//!
//! for every subset S, the columns demanded by S must not exceed the columns
//! whose type some channel in S admits.
//!
//! Every response covers the whole catalog; the level marks suitability and
//! never filters.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::card::{BindingSet, IdiomKind, TaskKind};
use crate::catalog::{Catalog, ChannelRequirement, IdiomCatalogEntry};
use crate::table::{data_signature, ColumnType, DataSignature, DataTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Level {
    Recommended,
    PartiallyCompatible,
    NotRecommended,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Recommendation {
    pub idiom: IdiomKind,
    pub level: Level,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecommendError {
    #[error("unknown task '{0}'")]
    UnknownTask(String),
    #[error("unknown idiom '{0}'")]
    UnknownIdiom(String),
    #[error("a task, data or both are required")]
    NoInput,
}

impl RecommendError {
    pub fn code(&self) -> &'static str {
        match self {
            RecommendError::UnknownTask(_) => "unknownTask",
            RecommendError::UnknownIdiom(_) => "unknownIdiom",
            RecommendError::NoInput => "noInput",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ViolationRule {
    UnknownChannel,
    MissingRequiredChannel,
    TooFewColumns,
    TooManyColumns,
    UnknownColumn,
    InadmissibleType,
    ColumnReused,
    UnknownIdiom,
}

/// One reason a binding does not fit an idiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub channel: String,
    pub rule: ViolationRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub column: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// Outcome of the channel-satisfiability check for one idiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataFit {
    Satisfiable,
    /// A set of required channels that together demand more columns than
    /// the data can supply.
    Unsatisfiable {
        channels: Vec<String>,
        types: Vec<ColumnType>,
        needed: usize,
        available: usize,
    },
}

impl DataFit {
    pub fn is_satisfiable(&self) -> bool {
        matches!(self, DataFit::Satisfiable)
    }

    fn reason(&self) -> String {
        match self {
            DataFit::Satisfiable => "the data has columns for every required channel".into(),
            DataFit::Unsatisfiable {
                channels,
                types,
                needed,
                available,
            } => {
                let types: Vec<&str> = types.iter().map(|t| t.as_str()).collect();
                format!(
                    "channel{} {} need{} {needed} {} column{}, the data has {available}",
                    if channels.len() == 1 { "" } else { "s" },
                    channels.join(", "),
                    if channels.len() == 1 { "s" } else { "" },
                    types.join("/"),
                    if *needed == 1 { "" } else { "s" },
                )
            }
        }
    }
}

/// Hall's condition over the required channels of one idiom.
pub fn data_fit(entry: &IdiomCatalogEntry, signature: &DataSignature) -> DataFit {
    let demanding: Vec<&ChannelRequirement> =
        entry.channels.iter().filter(|c| c.demand() > 0).collect();
    // Channel counts per idiom are tiny; 2^k subsets is cheap.
    let subsets = 1u64 << demanding.len();
    let mut worst: Option<DataFit> = None;
    for mask in 1..subsets {
        let chosen: Vec<&ChannelRequirement> = demanding
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, c)| *c)
            .collect();
        let needed: usize = chosen.iter().map(|c| c.demand()).sum();
        let types: BTreeSet<ColumnType> = chosen
            .iter()
            .flat_map(|c| c.admissible_types.iter().copied())
            .collect();
        let available: usize = types.iter().map(|t| signature.count(*t)).sum();
        if needed > available {
            let deficit = needed - available;
            let better = match &worst {
                Some(DataFit::Unsatisfiable {
                    needed: n,
                    available: a,
                    channels,
                    ..
                }) => deficit > n - a || (deficit == n - a && chosen.len() < channels.len()),
                _ => true,
            };
            if better {
                worst = Some(DataFit::Unsatisfiable {
                    channels: chosen.iter().map(|c| c.name.clone()).collect(),
                    types: types.into_iter().collect(),
                    needed,
                    available,
                });
            }
        }
    }
    worst.unwrap_or(DataFit::Satisfiable)
}

fn sort_by_level(mut recs: Vec<Recommendation>) -> Vec<Recommendation> {
    // Stable: catalog order survives within a level.
    recs.sort_by_key(|r| r.level);
    recs
}

impl Catalog {
    pub fn channel_requirements(
        &self,
        kind: IdiomKind,
    ) -> Result<&[ChannelRequirement], RecommendError> {
        self.idiom(kind)
            .map(|e| e.channels.as_slice())
            .ok_or_else(|| RecommendError::UnknownIdiom(kind.to_string()))
    }

    /// Why? -> How? lookup.
    pub fn recommend_by_task(&self, task: TaskKind) -> Vec<Recommendation> {
        let suggested: HashSet<IdiomKind> = self.idioms_for_task(task).iter().copied().collect();
        let label = self.task(task).map_or(task.as_str(), |t| t.label.as_str());
        let recs = self
            .idioms()
            .iter()
            .map(|entry| {
                let hit = suggested.contains(&entry.idiom);
                Recommendation {
                    idiom: entry.idiom,
                    level: if hit {
                        Level::Recommended
                    } else {
                        Level::NotRecommended
                    },
                    reasons: vec![if hit {
                        format!("suggested for the task '{label}'")
                    } else {
                        format!("not suggested for the task '{label}'")
                    }],
                }
            })
            .collect();
        sort_by_level(recs)
    }

    /// What? -> How? by channel satisfiability.
    pub fn recommend_by_data(&self, signature: &DataSignature) -> Vec<Recommendation> {
        let recs = self
            .idioms()
            .iter()
            .map(|entry| {
                let fit = data_fit(entry, signature);
                Recommendation {
                    idiom: entry.idiom,
                    level: if fit.is_satisfiable() {
                        Level::Recommended
                    } else {
                        Level::NotRecommended
                    },
                    reasons: vec![fit.reason()],
                }
            })
            .collect();
        sort_by_level(recs)
    }

    pub fn recommend_for_table(&self, table: &DataTable) -> Vec<Recommendation> {
        self.recommend_by_data(&data_signature(table))
    }

    /// Task and/or data. With both, an idiom matching both is recommended,
    /// one matching only one side is partially compatible.
    pub fn recommend(
        &self,
        task: Option<TaskKind>,
        signature: Option<&DataSignature>,
    ) -> Result<Vec<Recommendation>, RecommendError> {
        let (task, signature) = match (task, signature) {
            (None, None) => return Err(RecommendError::NoInput),
            (Some(task), None) => return Ok(self.recommend_by_task(task)),
            (None, Some(sig)) => return Ok(self.recommend_by_data(sig)),
            (Some(task), Some(sig)) => (task, sig),
        };
        let suggested: HashSet<IdiomKind> = self.idioms_for_task(task).iter().copied().collect();
        let label = self.task(task).map_or(task.as_str(), |t| t.label.as_str());
        let recs = self
            .idioms()
            .iter()
            .map(|entry| {
                let task_hit = suggested.contains(&entry.idiom);
                let fit = data_fit(entry, signature);
                let level = match (task_hit, fit.is_satisfiable()) {
                    (true, true) => Level::Recommended,
                    (false, false) => Level::NotRecommended,
                    _ => Level::PartiallyCompatible,
                };
                let task_reason = if task_hit {
                    format!("matches the task '{label}'")
                } else {
                    format!("not suggested for the task '{label}'")
                };
                let data_reason = if fit.is_satisfiable() {
                    format!("matches the data: {}", fit.reason())
                } else {
                    format!("does not match the data: {}", fit.reason())
                };
                Recommendation {
                    idiom: entry.idiom,
                    level,
                    reasons: vec![task_reason, data_reason],
                }
            })
            .collect();
        Ok(sort_by_level(recs))
    }

    /// Checks a binding against an idiom's channels. Returns every
    /// violation found, in channel order.
    pub fn validate_binding(
        &self,
        kind: IdiomKind,
        table: &DataTable,
        bindings: &BindingSet,
    ) -> Result<(), Vec<Violation>> {
        let Some(entry) = self.idiom(kind) else {
            return Err(vec![Violation {
                channel: String::new(),
                rule: ViolationRule::UnknownIdiom,
                column: None,
                message: format!("idiom '{kind}' is not in the catalog"),
            }]);
        };
        let mut violations = Vec::new();
        let mut used: HashSet<&str> = HashSet::new();

        for (channel, columns) in bindings.iter() {
            let Some(requirement) = entry.channel(channel) else {
                violations.push(Violation {
                    channel: channel.to_string(),
                    rule: ViolationRule::UnknownChannel,
                    column: None,
                    message: format!("{} has no channel '{channel}'", entry.label),
                });
                continue;
            };
            for column in columns {
                let Some(found) = table.column(column) else {
                    violations.push(Violation {
                        channel: channel.to_string(),
                        rule: ViolationRule::UnknownColumn,
                        column: Some(column.clone()),
                        message: format!("column '{column}' does not exist"),
                    });
                    continue;
                };
                if !requirement.admits(found.column_type) {
                    let admitted: Vec<&str> = requirement
                        .admissible_types
                        .iter()
                        .map(|t| t.as_str())
                        .collect();
                    violations.push(Violation {
                        channel: channel.to_string(),
                        rule: ViolationRule::InadmissibleType,
                        column: Some(column.clone()),
                        message: format!(
                            "channel '{channel}' admits only {} columns; '{column}' is {}",
                            admitted.join("/"),
                            found.column_type
                        ),
                    });
                }
                if !used.insert(column.as_str()) {
                    violations.push(Violation {
                        channel: channel.to_string(),
                        rule: ViolationRule::ColumnReused,
                        column: Some(column.clone()),
                        message: format!("column '{column}' is bound to more than one channel"),
                    });
                }
            }
        }

        for requirement in &entry.channels {
            let count = bindings.get(&requirement.name).map_or(0, <[String]>::len);
            let name = &requirement.name;
            if count == 0 {
                if requirement.required {
                    violations.push(Violation {
                        channel: name.clone(),
                        rule: ViolationRule::MissingRequiredChannel,
                        column: None,
                        message: format!("required channel '{name}' is unassigned"),
                    });
                }
                continue;
            }
            if count < requirement.min_columns {
                violations.push(Violation {
                    channel: name.clone(),
                    rule: ViolationRule::TooFewColumns,
                    column: None,
                    message: format!(
                        "channel '{name}' needs at least {} columns, got {count}",
                        requirement.min_columns
                    ),
                });
            }
            if let Some(max) = requirement.max_columns.filter(|max| count > *max) {
                violations.push(Violation {
                    channel: name.clone(),
                    rule: ViolationRule::TooManyColumns,
                    column: None,
                    message: format!("channel '{name}' takes at most {max} columns, got {count}"),
                });
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{generate_table, parse_csv, ColumnSpec};

    fn exercises_table() -> DataTable {
        parse_csv(b"Exercises,Class Average Points,My Points\nEx1,7.5,9\nEx2,6,4")
            .unwrap()
            .table
    }

    fn level_of(recs: &[Recommendation], kind: IdiomKind) -> Level {
        recs.iter().find(|r| r.idiom == kind).unwrap().level
    }

    fn recommended(recs: &[Recommendation]) -> BTreeSet<IdiomKind> {
        recs.iter()
            .filter(|r| r.level == Level::Recommended)
            .map(|r| r.idiom)
            .collect()
    }

    fn table_of(types: &[ColumnType]) -> DataTable {
        let specs = types
            .iter()
            .enumerate()
            .map(|(i, t)| match t {
                ColumnType::CategoricalOrdered => {
                    ColumnSpec::ordered(format!("c{i}"), ["low", "high"])
                }
                t => ColumnSpec::new(format!("c{i}"), *t),
            })
            .collect();
        let row = types
            .iter()
            .map(|t| match t {
                ColumnType::Categorical => "a".to_string(),
                ColumnType::CategoricalOrdered => "low".to_string(),
                ColumnType::Numerical => "1".to_string(),
            })
            .collect();
        generate_table(specs, vec![row]).unwrap()
    }

    /// Tries every column -> channel (or unbound) assignment.
    fn brute_force_has_valid_binding(
        catalog: &Catalog,
        kind: IdiomKind,
        table: &DataTable,
    ) -> bool {
        let channels = &catalog.idiom(kind).unwrap().channels;
        let n = table.columns().len();
        let choices = channels.len() + 1;
        let total = choices.pow(n as u32);
        (0..total).any(|mut code| {
            let mut lists: Vec<Vec<String>> = vec![Vec::new(); channels.len()];
            for col in table.columns() {
                let pick = code % choices;
                code /= choices;
                if pick > 0 {
                    lists[pick - 1].push(col.name.clone());
                }
            }
            let mut bindings = BindingSet::new();
            for (ch, list) in channels.iter().zip(lists) {
                if !list.is_empty() {
                    bindings.assign(ch.name.clone(), list).unwrap();
                }
            }
            catalog.validate_binding(kind, table, &bindings).is_ok()
        })
    }

    #[test]
    fn comparison_suggestions() {
        let recs = Catalog::builtin().recommend_by_task(TaskKind::Comparison);
        let rec = recommended(&recs);
        for kind in [
            IdiomKind::Bar,
            IdiomKind::GroupedBar,
            IdiomKind::Radar,
            IdiomKind::MultiLine,
        ] {
            assert!(rec.contains(&kind), "{kind}");
        }
        assert_eq!(recs.len(), 14);
    }

    #[test]
    fn trend_suggestions() {
        let recs = Catalog::builtin().recommend_by_task(TaskKind::TrendOverTime);
        let rec = recommended(&recs);
        for kind in [IdiomKind::Line, IdiomKind::MultiLine, IdiomKind::Area] {
            assert!(rec.contains(&kind), "{kind}");
        }
        assert_eq!(level_of(&recs, IdiomKind::Pie), Level::NotRecommended);
    }

    #[test]
    fn every_task_covers_the_catalog_once() {
        for task in TaskKind::ALL {
            let recs = Catalog::builtin().recommend_by_task(*task);
            let kinds: HashSet<IdiomKind> = recs.iter().map(|r| r.idiom).collect();
            assert_eq!(recs.len(), 14);
            assert_eq!(kinds.len(), 14);
        }
    }

    #[test]
    fn recommended_come_first_in_catalog_order() {
        let recs = Catalog::builtin().recommend_by_task(TaskKind::Correlation);
        let levels: Vec<Level> = recs.iter().map(|r| r.level).collect();
        let mut sorted = levels.clone();
        sorted.sort();
        assert_eq!(levels, sorted);
        let order: Vec<IdiomKind> = Catalog::builtin()
            .idioms()
            .iter()
            .map(|e| e.idiom)
            .collect();
        let pos = |k: IdiomKind| order.iter().position(|o| *o == k).unwrap();
        for pair in recs.windows(2) {
            if pair[0].level == pair[1].level {
                assert!(pos(pair[0].idiom) < pos(pair[1].idiom));
            }
        }
    }

    #[test]
    fn exercises_signature_recommends_bars() {
        let recs = Catalog::builtin().recommend_by_data(&DataSignature::new(1, 0, 2));
        assert_eq!(level_of(&recs, IdiomKind::Bar), Level::Recommended);
        assert_eq!(level_of(&recs, IdiomKind::GroupedBar), Level::Recommended);
    }

    #[test]
    fn no_columns_recommends_nothing() {
        let recs = Catalog::builtin().recommend_by_data(&DataSignature::default());
        assert!(recs.iter().all(|r| r.level == Level::NotRecommended));
        assert_eq!(recs.len(), 14);
    }

    #[test]
    fn two_numericals_fit_scatter_not_pie() {
        let catalog = Catalog::builtin();
        let table = table_of(&[ColumnType::Numerical, ColumnType::Numerical]);
        assert!(brute_force_has_valid_binding(
            catalog,
            IdiomKind::Scatter,
            &table
        ));
        assert!(!brute_force_has_valid_binding(
            catalog,
            IdiomKind::Pie,
            &table
        ));
        let recs = catalog.recommend_by_data(&DataSignature::new(0, 0, 2));
        assert_eq!(level_of(&recs, IdiomKind::Scatter), Level::Recommended);
        assert_eq!(level_of(&recs, IdiomKind::Pie), Level::NotRecommended);
        let pie = recs.iter().find(|r| r.idiom == IdiomKind::Pie).unwrap();
        assert!(pie.reasons[0].contains("label"), "{:?}", pie.reasons);
    }

    #[test]
    fn satisfiability_matches_brute_force_up_to_three_columns() {
        let catalog = Catalog::builtin();
        for n in 0..=3u32 {
            for code in 0..3usize.pow(n) {
                let types: Vec<ColumnType> = (0..n)
                    .map(|i| ColumnType::ALL[(code / 3usize.pow(i)) % 3])
                    .collect();
                let table = table_of(&types);
                let recs = catalog.recommend_for_table(&table);
                for entry in catalog.idioms() {
                    let brute = brute_force_has_valid_binding(catalog, entry.idiom, &table);
                    let marked = level_of(&recs, entry.idiom) == Level::Recommended;
                    assert_eq!(brute, marked, "{} on {types:?}", entry.idiom);
                }
            }
        }
    }

    #[test]
    fn combined_mode() {
        let catalog = Catalog::builtin();
        let sig = DataSignature::new(1, 0, 2);
        let recs = catalog
            .recommend(Some(TaskKind::Comparison), Some(&sig))
            .unwrap();
        assert_eq!(level_of(&recs, IdiomKind::Bar), Level::Recommended);
        assert_eq!(level_of(&recs, IdiomKind::GroupedBar), Level::Recommended);
        assert_eq!(
            level_of(&recs, IdiomKind::Radar),
            Level::PartiallyCompatible
        );

        let by_task = catalog.recommend_by_task(TaskKind::Comparison);
        let by_data = catalog.recommend_by_data(&sig);
        let expected: BTreeSet<IdiomKind> = recommended(&by_task)
            .intersection(&recommended(&by_data))
            .copied()
            .collect();
        assert_eq!(recommended(&recs), expected);

        let trend = catalog
            .recommend(Some(TaskKind::TrendOverTime), Some(&sig))
            .unwrap();
        let line = trend.iter().find(|r| r.idiom == IdiomKind::Line).unwrap();
        assert_eq!(line.level, Level::PartiallyCompatible);
        assert!(line.reasons[0].starts_with("matches the task"));
        assert!(line.reasons[1].starts_with("does not match the data"));

        assert_eq!(
            catalog.recommend(Some(TaskKind::Ranking), None).unwrap(),
            catalog.recommend_by_task(TaskKind::Ranking)
        );
        assert_eq!(catalog.recommend(None, None), Err(RecommendError::NoInput));
    }

    #[test]
    fn channel_requirement_examples() {
        let catalog = Catalog::builtin();
        let scatter = catalog.channel_requirements(IdiomKind::Scatter).unwrap();
        let summary: Vec<(&str, usize, Option<usize>, bool)> = scatter
            .iter()
            .map(|c| (c.name.as_str(), c.min_columns, c.max_columns, c.required))
            .collect();
        assert_eq!(
            summary,
            [
                ("x", 1, Some(1), true),
                ("y", 1, Some(1), true),
                ("color", 0, Some(1), false),
                ("size", 0, Some(1), false)
            ]
        );
        let hist = catalog.channel_requirements(IdiomKind::Histogram).unwrap();
        assert_eq!(hist.len(), 1);
        assert_eq!(hist[0].name, "value");
        assert_eq!(hist[0].admissible_types, [ColumnType::Numerical]);
    }

    #[test]
    fn exercises_binding_is_valid() {
        let catalog = Catalog::builtin();
        let b = BindingSet::new()
            .with("x", ["Exercises"])
            .unwrap()
            .with("y", ["Class Average Points", "My Points"])
            .unwrap();
        assert_eq!(
            catalog.validate_binding(IdiomKind::Bar, &exercises_table(), &b),
            Ok(())
        );
    }

    #[test]
    fn numerical_x_is_rejected() {
        let catalog = Catalog::builtin();
        let b = BindingSet::new()
            .with("x", ["My Points"])
            .unwrap()
            .with("y", ["Class Average Points"])
            .unwrap();
        let v = catalog
            .validate_binding(IdiomKind::Bar, &exercises_table(), &b)
            .unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].channel, "x");
        assert_eq!(v[0].rule, ViolationRule::InadmissibleType);
        assert_eq!(v[0].column.as_deref(), Some("My Points"));
    }

    #[test]
    fn empty_required_channel_is_reported() {
        let catalog = Catalog::builtin();
        let b = BindingSet::new()
            .with("x", ["Exercises"])
            .unwrap()
            .with("y", Vec::<String>::new())
            .unwrap();
        let v = catalog
            .validate_binding(IdiomKind::Bar, &exercises_table(), &b)
            .unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(
            (v[0].channel.as_str(), v[0].rule),
            ("y", ViolationRule::MissingRequiredChannel)
        );
    }

    #[test]
    fn other_violations() {
        let catalog = Catalog::builtin();
        let table = exercises_table();
        let b = BindingSet::new()
            .with("x", ["Exercises", "Nope"])
            .unwrap()
            .with("y", ["My Points"])
            .unwrap()
            .with("z", ["My Points"])
            .unwrap();
        let rules: Vec<ViolationRule> = catalog
            .validate_binding(IdiomKind::Bar, &table, &b)
            .unwrap_err()
            .into_iter()
            .map(|v| v.rule)
            .collect();
        assert!(rules.contains(&ViolationRule::UnknownColumn));
        assert!(rules.contains(&ViolationRule::UnknownChannel));
        assert!(rules.contains(&ViolationRule::TooManyColumns));

        let reuse = BindingSet::new()
            .with("x", ["My Points"])
            .unwrap()
            .with("y", ["My Points"])
            .unwrap();
        let rules: Vec<ViolationRule> = catalog
            .validate_binding(IdiomKind::Scatter, &table, &reuse)
            .unwrap_err()
            .into_iter()
            .map(|v| v.rule)
            .collect();
        assert_eq!(rules, [ViolationRule::ColumnReused]);

        let few = BindingSet::new()
            .with("x", ["Exercises"])
            .unwrap()
            .with("y", ["My Points"])
            .unwrap();
        let rules: Vec<ViolationRule> = catalog
            .validate_binding(IdiomKind::GroupedBar, &table, &few)
            .unwrap_err()
            .into_iter()
            .map(|v| v.rule)
            .collect();
        assert_eq!(rules, [ViolationRule::TooFewColumns]);
    }

    #[test]
    fn adding_a_column_never_shrinks_recommendations() {
        let catalog = Catalog::builtin();
        for c in 0..3 {
            for o in 0..3 {
                for n in 0..3 {
                    let base =
                        recommended(&catalog.recommend_by_data(&DataSignature::new(c, o, n)));
                    for grown in [
                        DataSignature::new(c + 1, o, n),
                        DataSignature::new(c, o + 1, n),
                        DataSignature::new(c, o, n + 1),
                    ] {
                        let more = recommended(&catalog.recommend_by_data(&grown));
                        assert!(base.is_subset(&more), "{c},{o},{n} -> {grown}");
                    }
                }
            }
        }
    }
}
