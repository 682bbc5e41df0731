//! RFC 4180 CSV ingestion and export.

use serde::{Deserialize, Serialize};

use super::{infer_with_dictionaries, is_missing, Column, ColumnType, DataTable, TableError};
use crate::catalog::Catalog;
use crate::table::OrdinalDictionary;

pub const MAX_INGEST_BYTES: usize = 10 * 1024 * 1024;
pub const MAX_INGEST_COLUMNS: usize = 100;
pub const MAX_INGEST_ROWS: usize = 100_000;

#[derive(Debug, Clone, Copy)]
pub struct IngestOptions<'a> {
    pub max_bytes: usize,
    pub max_columns: usize,
    pub max_rows: usize,
    pub dictionaries: &'a [OrdinalDictionary],
}

impl Default for IngestOptions<'static> {
    fn default() -> Self {
        Self {
            max_bytes: MAX_INGEST_BYTES,
            max_columns: MAX_INGEST_COLUMNS,
            max_rows: MAX_INGEST_ROWS,
            dictionaries: Catalog::builtin().dictionaries(),
        }
    }
}

impl<'a> IngestOptions<'a> {
    pub fn with_dictionaries(dictionaries: &'a [OrdinalDictionary]) -> Self {
        IngestOptions {
            dictionaries,
            ..IngestOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IngestWarning {
    pub column: String,
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedCsv {
    pub table: DataTable,
    pub warnings: Vec<IngestWarning>,
}

/// Header and rows exactly as read, before any typing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRecords {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Parses CSV with the default limits and the built-in ordinal dictionaries.
pub fn parse_csv(content: &[u8]) -> Result<ParsedCsv, TableError> {
    parse_csv_with(content, &IngestOptions::default())
}

pub fn parse_csv_with(
    content: &[u8],
    options: &IngestOptions<'_>,
) -> Result<ParsedCsv, TableError> {
    let CsvRecords { header, rows } = read_csv_records(content, options)?;
    let mut columns = Vec::with_capacity(header.len());
    let mut warnings = Vec::new();
    for (index, name) in header.into_iter().enumerate() {
        let values: Vec<&str> = rows.iter().map(|r| r[index].as_str()).collect();
        if values.iter().all(|v| is_missing(v)) {
            warnings.push(IngestWarning {
                message: format!("column '{name}' has no values; typed as categorical"),
                column: name.clone(),
                code: "allMissing".to_string(),
            });
        }
        let inference = infer_with_dictionaries(&values, options.dictionaries);
        columns.push(Column {
            name,
            column_type: inference.column_type,
            inferred: true,
            order_dictionary: inference.order_dictionary,
        });
    }
    let table = DataTable::new(columns, rows)?;
    Ok(ParsedCsv { table, warnings })
}

/// Decodes and splits CSV content without inferring types. The first record
/// is the header; rows are checked against its width.
pub fn read_csv_records(
    content: &[u8],
    options: &IngestOptions<'_>,
) -> Result<CsvRecords, TableError> {
    if content.len() > options.max_bytes {
        return Err(TableError::TooLarge(format!(
            "{} bytes exceeds the limit of {} bytes",
            content.len(),
            options.max_bytes
        )));
    }
    let content = content.strip_prefix(b"\xEF\xBB\xBF").unwrap_or(content);
    let text = std::str::from_utf8(content).map_err(|e| TableError::Encoding(e.valid_up_to()))?;

    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header: Vec<String> = match records.next() {
        None => return Err(TableError::EmptyInput),
        Some(record) => record
            .map_err(|e| TableError::Malformed(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect(),
    };
    if header.len() > options.max_columns {
        return Err(TableError::TooLarge(format!(
            "{} columns exceeds the limit of {}",
            header.len(),
            options.max_columns
        )));
    }
    super::check_names(header.iter().map(String::as_str))?;

    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(|e| TableError::Malformed(e.to_string()))?;
        if record.len() != header.len() {
            return Err(TableError::RaggedRows {
                row: rows.len() + 1,
                expected: header.len(),
                found: record.len(),
            });
        }
        if rows.len() == options.max_rows {
            return Err(TableError::TooLarge(format!(
                "more than {} rows",
                options.max_rows
            )));
        }
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok(CsvRecords { header, rows })
}

/// Writes the table as RFC 4180 CSV with `\n` record terminators, quoting
/// only where needed.
pub fn serialize_csv(table: &DataTable) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let header: Vec<&str> = table.columns().iter().map(|c| c.name.as_str()).collect();
    // Writing into a Vec cannot fail.
    writer.write_record(&header).expect("in-memory write");
    for row in table.rows() {
        writer.write_record(row).expect("in-memory write");
    }
    writer.into_inner().expect("in-memory flush")
}

impl ParsedCsv {
    pub fn column_types(&self) -> Vec<ColumnType> {
        self.table.columns().iter().map(|c| c.column_type).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{generate_table, ColumnSpec};
    use proptest::prelude::*;

    const EXERCISES_CSV: &str = "Exercises,Class Average Points,My Points\nEx1,7.5,9\nEx2,6,4";

    #[test]
    fn exercises_table_types() {
        let parsed = parse_csv(EXERCISES_CSV.as_bytes()).unwrap();
        assert_eq!(
            parsed.column_types(),
            [
                ColumnType::Categorical,
                ColumnType::Numerical,
                ColumnType::Numerical
            ]
        );
        assert!(parsed.table.columns().iter().all(|c| c.inferred));
        assert!(parsed.warnings.is_empty());
    }

    #[test]
    fn ragged_row_is_numbered_from_one() {
        assert_eq!(
            parse_csv(b"a,b\n1,2\n3").unwrap_err(),
            TableError::RaggedRows {
                row: 2,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn header_only_gives_empty_categorical_columns() {
        let parsed = parse_csv(b"x,y\n").unwrap();
        assert_eq!(parsed.table.row_count(), 0);
        assert_eq!(
            parsed.column_types(),
            [ColumnType::Categorical, ColumnType::Categorical]
        );
        assert_eq!(parsed.warnings.len(), 2);
        assert!(parsed.warnings.iter().all(|w| w.code == "allMissing"));
    }

    #[test]
    fn header_only_agrees_with_plain_csv_reader() {
        // Reference reading with the csv crate's own header handling.
        let mut reader = csv::Reader::from_reader("x,y\n".as_bytes());
        let headers: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
        let count = reader.records().count();
        let parsed = parse_csv(b"x,y\n").unwrap();
        let names: Vec<String> = parsed
            .table
            .columns()
            .iter()
            .map(|c| c.name.clone())
            .collect();
        assert_eq!(names, headers);
        assert_eq!(parsed.table.row_count(), count);
    }

    #[test]
    fn empty_and_bad_input() {
        assert_eq!(parse_csv(b"").unwrap_err(), TableError::EmptyInput);
        assert_eq!(parse_csv(b"\n\n").unwrap_err(), TableError::EmptyInput);
        assert_eq!(
            parse_csv(b"a,a\n1,2").unwrap_err(),
            TableError::DuplicateColumn("a".into())
        );
        assert!(matches!(
            parse_csv(b"a,b\n\xff,1"),
            Err(TableError::Encoding(_))
        ));
    }

    #[test]
    fn bom_is_stripped() {
        let parsed = parse_csv(b"\xEF\xBB\xBFname,score\nA,1").unwrap();
        assert_eq!(parsed.table.columns()[0].name, "name");
    }

    #[test]
    fn quoted_fields() {
        let parsed = parse_csv(b"\"Last, First\",n\n\"He said \"\"hi\"\"\",3").unwrap();
        assert_eq!(parsed.table.columns()[0].name, "Last, First");
        assert_eq!(parsed.table.rows()[0][0], "He said \"hi\"");
    }

    #[test]
    fn limits_are_enforced() {
        let options = IngestOptions {
            max_bytes: 10,
            ..IngestOptions::default()
        };
        assert!(matches!(
            parse_csv_with(b"abcdefghijk", &options),
            Err(TableError::TooLarge(_))
        ));
        let options = IngestOptions {
            max_rows: 1,
            ..IngestOptions::default()
        };
        assert!(matches!(
            parse_csv_with(b"a\n1\n2", &options),
            Err(TableError::TooLarge(_))
        ));
        let wide = (0..101)
            .map(|i| format!("c{i}"))
            .collect::<Vec<_>>()
            .join(",");
        assert!(matches!(
            parse_csv(wide.as_bytes()),
            Err(TableError::TooLarge(_))
        ));
    }

    #[test]
    fn serialize_quotes_only_when_needed() {
        let t = generate_table(
            vec![
                ColumnSpec::new("a", ColumnType::Categorical),
                ColumnSpec::new("b, c", ColumnType::Categorical),
            ],
            vec![vec!["x".into(), "say \"y\"".into()]],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(serialize_csv(&t)).unwrap(),
            "a,\"b, c\"\nx,\"say \"\"y\"\"\"\n"
        );
    }

    fn cell() -> impl Strategy<Value = String> {
        prop_oneof![
            Just(String::new()),
            "[a-zA-Z ,\"]{1,6}",
            "-?[0-9]{1,3}(\\.[0-9]{1,2})?",
            prop::sample::select(vec!["low", "medium", "high"]).prop_map(String::from),
        ]
    }

    proptest! {
        #[test]
        fn parse_of_serialize_is_identity(
            width in 1usize..4,
            data in prop::collection::vec(prop::collection::vec(cell(), 3), 0..6),
        ) {
            let header: Vec<String> = (0..width).map(|i| format!("col {i}")).collect();
            let mut text = String::new();
            let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
            w.write_record(&header).unwrap();
            for row in &data {
                w.write_record(&row[..width]).unwrap();
            }
            text.push_str(std::str::from_utf8(&w.into_inner().unwrap()).unwrap());
            let parsed = parse_csv(text.as_bytes()).unwrap();
            let again = parse_csv(&serialize_csv(&parsed.table)).unwrap();
            prop_assert_eq!(parsed.table, again.table);
        }
    }
}
