use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use corona_cli::{
    all_match, cmd_cm, cmd_compare, cmd_invariants, cmd_table, exit_code, parse_range, parse_spec, parse_target,
    records_csv, records_text, report_text, table_csv, Format, RunConfig, TableRanges,
};
use corona_core::{Characteristic, Error};

#[derive(Parser)]
#[command(name = "corona", version, about = "Edge-ideal invariants of corona product graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args)]
struct ConfigArgs {
    /// Field characteristic: 0 or a supported prime.
    #[arg(long = "char", env = "CORONA_CHAR", default_value_t = 0, global = true)]
    characteristic: u64,
    #[arg(long, env = "CORONA_MAX_ORACLE", default_value_t = 20, global = true)]
    max_oracle_vertices: usize,
    #[arg(long, default_value_t = 10, global = true)]
    max_sdepth_vertices: usize,
    #[arg(long, value_enum, global = true)]
    format: Option<OutputFormat>,
    /// Worker threads; defaults to every core.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// An inclusive range `a..b` or a single count.
#[derive(Clone)]
struct CountRange(Vec<usize>);

fn count_range(text: &str) -> Result<CountRange, String> {
    parse_range(text).map(CountRange)
}

#[derive(Subcommand)]
enum Command {
    /// All invariants of one graph.
    Invariants { spec: String },
    /// Closed forms against the oracle for a spec or a grid such as
    /// "path(1..3) x {null(1..2), complete(2..3)}".
    Compare { target: String },
    /// One row per parameter choice of a family such as "path" or "cycle:null".
    Table {
        family: String,
        #[arg(long, default_value = "1..4", value_parser = count_range)]
        n: CountRange,
        #[arg(long, default_value = "1..4", value_parser = count_range)]
        m: CountRange,
        #[arg(long, default_value = "1", value_parser = count_range)]
        u: CountRange,
        #[arg(long, default_value = "1", value_parser = count_range)]
        v: CountRange,
        #[arg(long, default_value = "1", value_parser = count_range)]
        p: CountRange,
        #[arg(long, default_value = "1", value_parser = count_range)]
        q: CountRange,
    },
    /// Cohen-Macaulay test.
    Cm { spec: String },
}

fn run(cli: Cli) -> Result<i32, Error> {
    let c = cli.config;
    let default_format = match cli.command {
        Command::Table { .. } => Format::Csv,
        _ => Format::Text,
    };
    let cfg = RunConfig {
        characteristic: Characteristic::from_u64(c.characteristic)?,
        max_oracle_vertices: c.max_oracle_vertices,
        max_sdepth_vertices: c.max_sdepth_vertices,
        format: c.format.map_or(default_format, |f| match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Text => Format::Text,
        }),
        jobs: c.jobs,
    };
    match cli.command {
        Command::Invariants { spec } => {
            let parsed = parse_spec(&spec)?;
            let report = cmd_invariants(&parsed, &cfg)?;
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable")),
                _ => print!("{}", report_text(&parsed.to_string(), &report)),
            }
            Ok(0)
        }
        Command::Compare { target } => {
            let records = cmd_compare(&parse_target(&target)?, &cfg)?;
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&records).expect("serializable")),
                Format::Csv => print!("{}", records_csv(&records)),
                Format::Text => print!("{}", records_text(&records)),
            }
            Ok(if all_match(&records) { 0 } else { 1 })
        }
        Command::Table { family, n, m, u, v, p, q } => {
            let ranges = TableRanges { n: n.0, m: m.0, u: u.0, v: v.0, p: p.0, q: q.0 };
            let rows = cmd_table(&family, &ranges, &cfg)?;
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&rows).expect("serializable")),
                _ => print!("{}", table_csv(&rows)),
            }
            Ok(0)
        }
        Command::Cm { spec } => {
            let parsed = parse_spec(&spec)?;
            let (verdict, provenance) = cmd_cm(&parsed, &cfg)?;
            match cfg.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({"spec": parsed.to_string(), "cohen_macaulay": verdict, "provenance": provenance})
                ),
                _ => println!("{verdict}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
