use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use isc_core::card::CardPart;
use isc_core::store::DatasetSource;
use isc_core::table::{parse_csv_with, IngestOptions, ParsedCsv};
use isc_core::{
    build_chart_spec, card_completeness, data_signature, serialize_chart_spec, CardStatus, Catalog,
    FsStore, IndicatorCard, Level,
};
use isc_server::dto::{self, CardResponse, InferResponse};
use isc_server::{ServerConfig, StartupError};

use crate::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Input(String),
    /// Input read fine but failed validation: exit 1.
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(2),
            CliError::Invalid(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Invalid(m) => f.write_str(m),
        }
    }
}

type CliResult = Result<ExitCode, CliError>;

pub fn run(cli: Cli) -> CliResult {
    let catalog = match &cli.mapping_config {
        Some(path) => Catalog::load(path).map_err(|e| CliError::Input(e.to_string()))?,
        None => Catalog::builtin().clone(),
    };
    match cli.command {
        Command::Infer { file, json } => infer(&catalog, &file, json),
        Command::Recommend { task, data, json } => recommend(&catalog, task, data.as_deref(), json),
        Command::Validate {
            card,
            data_dir,
            json,
        } => validate(&catalog, &card, &data_dir, json),
        Command::Preview {
            card,
            data_dir,
            out,
        } => preview(&catalog, &card, &data_dir, &out),
        Command::Serve {
            host,
            port,
            data_dir,
            max_upload_bytes,
            cors_origin,
        } => {
            let mut config = ServerConfig {
                host,
                port,
                data_dir,
                mapping_config: cli.mapping_config,
                cors_origin,
                ..ServerConfig::default()
            };
            if let Some(bytes) = max_upload_bytes {
                config.max_upload_bytes = bytes;
            }
            serve(config)
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn print_body(bytes: &[u8]) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)
        .and_then(|()| out.flush())
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn parse_file(catalog: &Catalog, path: &Path) -> Result<ParsedCsv, CliError> {
    let options = IngestOptions::with_dictionaries(catalog.dictionaries());
    parse_csv_with(&read(path)?, &options)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn infer(catalog: &Catalog, file: &Path, json: bool) -> CliResult {
    let parsed = parse_file(catalog, file)?;
    let response = InferResponse::from(&parsed);
    if json {
        print_body(&dto::to_body(&response))?;
    } else {
        for warning in &response.warnings {
            eprintln!("warning: {}", warning.message);
        }
        let pretty = serde_json::to_string_pretty(&response.schema).expect("schema serializes");
        println!("{pretty}");
    }
    Ok(ExitCode::SUCCESS)
}

fn recommend(
    catalog: &Catalog,
    task: Option<isc_core::TaskKind>,
    data: Option<&Path>,
    json: bool,
) -> CliResult {
    let signature = match data {
        Some(path) => Some(data_signature(&parse_file(catalog, path)?.table)),
        None => None,
    };
    let response = dto::recommendations(catalog, task, signature)
        .map_err(|e| CliError::Input(e.to_string()))?;
    if json {
        print_body(&dto::to_body(&response))?;
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(sig) = &response.signature {
        println!("data: {sig}");
    }
    println!("{:<22}{:<13}REASONS", "LEVEL", "IDIOM");
    for rec in &response.recommendations {
        let level = match rec.level {
            Level::Recommended => "recommended",
            Level::PartiallyCompatible => "partially compatible",
            Level::NotRecommended => "not recommended",
        };
        println!(
            "{level:<22}{:<13}{}",
            rec.idiom.as_str(),
            rec.reasons.join("; ")
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn read_card(path: &Path) -> Result<IndicatorCard, CliError> {
    serde_json::from_slice(&read(path)?)
        .map_err(|e| CliError::Input(format!("{} is not a valid card: {e}", path.display())))
}

fn open_store(dir: &PathBuf) -> Result<FsStore, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Input(format!(
            "data directory {} does not exist",
            dir.display()
        )));
    }
    FsStore::open(dir).map_err(|e| CliError::Input(e.to_string()))
}

fn check_dataset(card: &IndicatorCard, store: &FsStore) -> Result<(), CliError> {
    match &card.dataset_id {
        Some(id) if !store.dataset_exists(id) => Err(CliError::Invalid(format!(
            "danglingDataset: card '{}' references dataset '{id}', which is not in {}",
            card.id,
            store.root().display()
        ))),
        _ => Ok(()),
    }
}

fn missing_list(missing: &[CardPart]) -> String {
    missing
        .iter()
        .map(|p| match p {
            CardPart::Name => "name",
            CardPart::Idiom => "idiom",
            CardPart::Dataset => "dataset",
            CardPart::Bindings => "bindings",
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn validate(catalog: &Catalog, path: &Path, data_dir: &PathBuf, json: bool) -> CliResult {
    let mut card = read_card(path)?;
    let store = open_store(data_dir)?;
    check_dataset(&card, &store)?;
    let completeness = card_completeness(&card, catalog, &store);
    card.status = completeness.status;
    let complete = completeness.status == CardStatus::Complete;

    if json {
        let response = CardResponse {
            card,
            missing: completeness.missing,
            warnings: Vec::new(),
        };
        print_body(&dto::to_body(&response))?;
    } else if complete {
        println!("card '{}' is complete", card.id);
    } else {
        println!(
            "card '{}' is a draft; missing: {}",
            card.id,
            missing_list(&completeness.missing)
        );
        if let (Some(idiom), Some(id), Some(bindings)) =
            (card.idiom, &card.dataset_id, &card.bindings)
        {
            if let Some(table) = store.dataset(id) {
                for violation in catalog
                    .validate_binding(idiom, &table, bindings)
                    .err()
                    .unwrap_or_default()
                {
                    println!("  {}", violation.message);
                }
            }
        }
    }
    Ok(if complete {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn preview(catalog: &Catalog, path: &Path, data_dir: &PathBuf, out: &Path) -> CliResult {
    let card = read_card(path)?;
    let store = open_store(data_dir)?;
    check_dataset(&card, &store)?;
    let completeness = card_completeness(&card, catalog, &store);
    let (Some(idiom), Some(id), Some(bindings), CardStatus::Complete) = (
        card.idiom,
        &card.dataset_id,
        &card.bindings,
        completeness.status,
    ) else {
        return Err(CliError::Invalid(format!(
            "card '{}' is incomplete; missing: {}",
            card.id,
            missing_list(&completeness.missing)
        )));
    };
    let table = store
        .dataset(id)
        .ok_or_else(|| CliError::Invalid(format!("dataset '{id}' cannot be read")))?;
    let spec = build_chart_spec(idiom, &table, bindings, &card.name, catalog)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    fs::write(out, serialize_chart_spec(&spec))
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
    Ok(ExitCode::SUCCESS)
}

fn serve(config: ServerConfig) -> CliResult {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new("info")),
        )
        .with_writer(std::io::stderr)
        .init();
    let runtime = tokio::runtime::Runtime::new()
        .map_err(|e| CliError::Invalid(format!("cannot start runtime: {e}")))?;
    runtime
        .block_on(async {
            let (listener, app) = isc_server::bind(&config).await?;
            if let Ok(addr) = listener.local_addr() {
                eprintln!("listening on http://{addr}");
            }
            isc_server::run(listener, app).await
        })
        .map_err(|e| match e {
            StartupError::Config(_) | StartupError::Cors(_) => CliError::Input(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        })?;
    Ok(ExitCode::SUCCESS)
}
