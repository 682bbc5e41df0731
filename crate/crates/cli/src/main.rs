//! `isc`: schema inference, idiom recommendations, card validation, chart
//! spec export and the HTTP server from the command line.
//!
//! Exit status is 0 on success, 1 when the input fails validation and 2 for
//! usage errors and unreadable or malformed input.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use isc_core::TaskKind;

#[derive(Debug, Parser)]
#[command(name = "isc", version, about = "Indicator specification cards")]
struct Cli {
    /// Idiom mapping file replacing the built-in one.
    #[arg(long, global = true, env = "ISC_MAPPING_CONFIG", value_name = "FILE")]
    mapping_config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Infer column types of a CSV file and print the schema.
    Infer {
        file: PathBuf,
        /// Print the exact API response body.
        #[arg(long)]
        json: bool,
    },
    /// List idioms for a task, a CSV file or both.
    #[command(group(ArgGroup::new("input").required(true).multiple(true).args(["task", "data"])))]
    Recommend {
        #[arg(long, value_parser = parse_task)]
        task: Option<TaskKind>,
        #[arg(long, value_name = "FILE")]
        data: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check that a card is complete and its bindings are valid.
    Validate {
        card: PathBuf,
        #[arg(long, env = "ISC_DATA_DIR", value_name = "DIR")]
        data_dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the chart spec of a complete card.
    Preview {
        #[arg(long, value_name = "FILE")]
        card: PathBuf,
        #[arg(long, env = "ISC_DATA_DIR", value_name = "DIR")]
        data_dir: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, env = "ISC_HOST", default_value = "127.0.0.1")]
        host: String,
        #[arg(long, env = "ISC_PORT", default_value_t = 8080)]
        port: u16,
        #[arg(
            long,
            env = "ISC_DATA_DIR",
            default_value = "isc-data",
            value_name = "DIR"
        )]
        data_dir: PathBuf,
        #[arg(long, env = "ISC_MAX_UPLOAD_BYTES", value_name = "BYTES")]
        max_upload_bytes: Option<usize>,
        /// Browser origin allowed to call the API.
        #[arg(long, env = "ISC_CORS_ORIGIN", value_name = "URL")]
        cors_origin: Option<String>,
    },
}

fn parse_task(s: &str) -> Result<TaskKind, String> {
    s.parse::<TaskKind>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}
