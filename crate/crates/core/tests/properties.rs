use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;

use isc_core::card::CardPatch;
use isc_core::chart::parse_chart_spec;
use isc_core::store::IndicatorStore;
use isc_core::{
    build_chart_spec, create_card, generate_table, serialize_chart_spec, update_card, BindingSet,
    Catalog, ChartError, ColumnSpec, ColumnType, DataTable, FixedClock, FsStore, IdiomKind,
    SequentialIds, TaskKind,
};

fn cell(column_type: ColumnType) -> BoxedStrategy<String> {
    match column_type {
        ColumnType::Numerical => prop_oneof![
            Just(String::new()),
            (-50i32..50).prop_map(|v| v.to_string()),
            (-500i32..500).prop_map(|v| format!("{}", f64::from(v) / 10.0)),
        ]
        .boxed(),
        ColumnType::Categorical => prop_oneof![
            Just(String::new()),
            prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(String::from),
        ]
        .boxed(),
        ColumnType::CategoricalOrdered => prop_oneof![
            Just(String::new()),
            prop::sample::select(vec!["low", "medium", "high"]).prop_map(String::from),
        ]
        .boxed(),
    }
}

fn table() -> impl Strategy<Value = DataTable> {
    prop::collection::vec(prop::sample::select(ColumnType::ALL.to_vec()), 1..5)
        .prop_flat_map(|types| {
            let row = types.iter().map(|t| cell(*t)).collect::<Vec<_>>();
            (Just(types), prop::collection::vec(row, 0..8))
        })
        .prop_map(|(types, rows)| {
            let specs = types
                .iter()
                .enumerate()
                .map(|(i, t)| match t {
                    ColumnType::CategoricalOrdered => {
                        ColumnSpec::ordered(format!("c{i}"), ["low", "medium", "high"])
                    }
                    other => ColumnSpec::new(format!("c{i}"), *other),
                })
                .collect();
            generate_table(specs, rows).unwrap()
        })
}

/// Every binding that puts each column in at most one channel.
fn all_bindings(kind: IdiomKind, table: &DataTable) -> Vec<BindingSet> {
    let entry = Catalog::builtin().idiom(kind).unwrap();
    let slots = entry.channels.len() + 1;
    let total = slots.pow(table.columns().len() as u32);
    (0..total)
        .map(|code| {
            let mut lists = vec![Vec::new(); entry.channels.len()];
            let mut c = code;
            for column in table.columns() {
                if c % slots < entry.channels.len() {
                    lists[c % slots].push(column.name.clone());
                }
                c /= slots;
            }
            let mut b = BindingSet::new();
            for (channel, list) in entry.channels.iter().zip(lists) {
                if !list.is_empty() {
                    b.assign(channel.name.clone(), list).unwrap();
                }
            }
            b
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chart_specs_build_exactly_for_valid_bindings(table in table()) {
        let catalog = Catalog::builtin();
        for kind in IdiomKind::ALL {
            for bindings in all_bindings(*kind, &table) {
                let valid = catalog.validate_binding(*kind, &table, &bindings).is_ok();
                match build_chart_spec(*kind, &table, &bindings, "t", catalog) {
                    Ok(spec) => {
                        prop_assert!(valid);
                        let text = serialize_chart_spec(&spec);
                        prop_assert_eq!(parse_chart_spec(&text).unwrap(), spec);
                    }
                    Err(ChartError::InvalidBinding(v)) => prop_assert!(!valid && !v.is_empty()),
                    Err(ChartError::NegativePieValue { .. }) => {
                        prop_assert!(valid && matches!(kind, IdiomKind::Pie | IdiomKind::Donut));
                    }
                    Err(e) => prop_assert!(false, "{}", e),
                }
            }
        }
    }
}

fn datasets() -> HashMap<String, DataTable> {
    let exercises = generate_table(
        vec![
            ColumnSpec::new("Exercises", ColumnType::Categorical),
            ColumnSpec::new("Class Average Points", ColumnType::Numerical),
            ColumnSpec::new("My Points", ColumnType::Numerical),
        ],
        vec![vec!["Ex1".into(), "7.5".into(), "9".into()]],
    )
    .unwrap();
    let weeks = generate_table(
        vec![
            ColumnSpec::ordered("Week", ["w1", "w2"]),
            ColumnSpec::new("Logins", ColumnType::Numerical),
        ],
        vec![vec!["w1".into(), "4".into()]],
    )
    .unwrap();
    HashMap::from([("exercises".to_string(), exercises), ("weeks".to_string(), weeks)])
}

fn patch() -> impl Strategy<Value = CardPatch> {
    let columns = prop::sample::subsequence(
        vec![
            "Exercises",
            "Class Average Points",
            "My Points",
            "Week",
            "Logins",
        ],
        0..3,
    );
    (
        prop::option::of("[a-z ]{0,6}"),
        prop::option::of(prop::option::of(prop::sample::select(
            TaskKind::ALL.to_vec(),
        ))),
        prop::option::of(prop::option::of(prop::sample::select(vec![
            "exercises", "weeks",
        ]))),
        prop::option::of(prop::option::of(prop::sample::select(
            IdiomKind::ALL.to_vec(),
        ))),
        prop::option::of(prop::option::of((columns.clone(), columns))),
    )
        .prop_map(|(name, task, dataset, idiom, bindings)| {
            let mut p = CardPatch::default();
            if let Some(n) = name {
                p = p.name(n);
            }
            if let Some(t) = task {
                p = p.task(t);
            }
            if let Some(d) = dataset {
                p = p.dataset(d);
            }
            if let Some(i) = idiom {
                p = p.idiom(i);
            }
            if let Some(b) = bindings {
                p = p.bindings(b.map(|(x, y)| {
                    let mut set = BindingSet::new();
                    if !x.is_empty() {
                        set.assign("x", x).unwrap();
                    }
                    if !y.is_empty() {
                        set.assign("y", y).unwrap();
                    }
                    set
                }));
            }
            p
        })
}

proptest! {
    #[test]
    fn sequential_patches_equal_their_merge(a in patch(), b in patch()) {
        let catalog = Catalog::builtin();
        let datasets = datasets();
        let clock = FixedClock::new("2024-03-13T09:00:00Z".parse().unwrap());
        let card = create_card("start", &SequentialIds::new("card"), &clock);
        let now = card.created_at;
        let step = update_card(&card, a.clone(), catalog, &datasets, now)
            .and_then(|c| update_card(&c, b.clone(), catalog, &datasets, now));
        if let Ok(sequential) = step {
            let merged = update_card(&card, a.merge(b), catalog, &datasets, now).unwrap();
            prop_assert_eq!(merged, sequential);
        }
    }
}

#[test]
fn concurrent_saves_are_all_indexed() {
    let dir = tempfile::tempdir().unwrap();
    let store = Arc::new(FsStore::open(dir.path()).unwrap());
    let clock = FixedClock::new("2024-03-13T09:00:00Z".parse().unwrap());
    let threads: Vec<_> = (0..8)
        .map(|t| {
            let store = Arc::clone(&store);
            let card = create_card(
                &format!("t{t}"),
                &SequentialIds::new(format!("t{t}")),
                &clock,
            );
            std::thread::spawn(move || {
                for round in 0..10 {
                    let mut c = card.clone();
                    c.name = format!("round {round}");
                    store.save_card(&c).unwrap();
                }
            })
        })
        .collect();
    for t in threads {
        t.join().unwrap();
    }
    let listing = store.list_cards();
    assert_eq!(listing.len(), 8);
    assert!(listing.iter().all(|s| s.name == "round 9"));
    assert_eq!(FsStore::open(dir.path()).unwrap().list_cards(), listing);
}
