use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use cli::dump::{self, Side};
use cli::{run_suite, Config, Format, CHECKS};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "lgcy", version, about = "LG/CY correspondence for the mirror quintic")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Truncation order in t (or q).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Working precision in decimal digits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// TOML config; defaults to the file named by LGCY_CONFIG.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StateSide {
    Lg,
    Cy,
}

#[derive(Subcommand)]
enum Command {
    /// List the narrow FJRW labels or the CY sectors.
    Sectors {
        #[arg(long, value_enum, default_value = "lg")]
        side: StateSide,
    },
    /// Dump an I-function as coefficient records.
    Ifunc {
        #[arg(long, value_enum)]
        side: Side,
        /// FJRW label (e.g. J, 1,1,1,3,4) or CY sector (e.g. e, 0,0,0,2,3).
        #[arg(long)]
        label: String,
    },
    /// Run acceptance checks by name, or all of them.
    Verify {
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        /// Restrict the main identity to one label.
        #[arg(long)]
        h: Option<String>,
    },
}

fn config(args: &Args) -> anyhow::Result<Config> {
    let mut c = match &args.config {
        Some(p) => Config::from_file(p)?,
        None => Config::load()?,
    };
    // a dump may be shorter than the suite minimum
    let dump_only = matches!(args.command, Command::Ifunc { .. });
    if let Some(o) = args.order.filter(|_| !dump_only) {
        c.truncation_order = o;
    }
    if let Some(p) = args.precision {
        c.precision_digits = p;
    }
    if let Some(f) = args.format {
        c.output_format = f;
    }
    if let Some(t) = args.threads {
        c.thread_count = Some(t);
    }
    c.validate()?;
    Ok(c)
}

fn run(args: &Args) -> anyhow::Result<bool> {
    let cfg = config(args)?;
    if let Some(t) = cfg.thread_count {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().context("thread pool")?;
    }
    let mut out: Box<dyn Write> = match &args.output {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let fmt = cfg.output_format;
    match &args.command {
        Command::Sectors { side: StateSide::Lg } => {
            let rows = dump::lg_sectors();
            #[derive(Serialize)]
            struct H {
                side: &'static str,
                count: usize,
            }
            dump::emit(&mut out, fmt, &H { side: "lg", count: rows.len() }, &rows)?;
        }
        Command::Sectors { side: StateSide::Cy } => {
            let rows = dump::cy_sectors()?;
            #[derive(Serialize)]
            struct H {
                side: &'static str,
                sectors: usize,
                basis_labels: usize,
            }
            dump::emit(&mut out, fmt, &H { side: "cy", sectors: dump::cy_sector_count(), basis_labels: rows.len() }, &rows)?;
        }
        Command::Ifunc { side, label } => {
            let order = args.order.unwrap_or(cfg.truncation_order).max(1);
            let d = dump::ifunc(*side, label, order, cfg.precision_digits)?;
            #[derive(Serialize)]
            struct H<'a> {
                side: &'a str,
                label: &'a str,
                order: usize,
                metadata: &'a dump::SeriesMetadata,
            }
            dump::emit(&mut out, fmt, &H { side: &d.side, label: &d.label, order: d.order, metadata: &d.metadata }, &d.records)?;
        }
        Command::Verify { names, all, h } => {
            let selected: Vec<&str> = if *all || names.is_empty() {
                CHECKS.iter().map(|c| c.name).collect()
            } else {
                names.iter().map(String::as_str).collect()
            };
            let h = h.as_deref().map(dump::parse_fjrw_label).transpose()?;
            let report = run_suite(&selected, &cfg, h.as_ref())?;
            match fmt {
                Format::Json => {
                    serde_json::to_writer_pretty(&mut out, &report)?;
                    writeln!(out)?;
                }
                Format::Text => write!(out, "{}", report.text())?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(&mut out);
                    w.write_record(["criterion", "name", "status", "max_error_log10", "runtime_seconds", "provenance"])?;
                    for c in &report.checks {
                        w.write_record([
                            c.criterion.to_string(),
                            c.name.clone(),
                            c.status.label().to_string(),
                            c.max_error_log10.map(|e| format!("{e:.2}")).unwrap_or_default(),
                            format!("{:.3}", c.runtime_seconds),
                            c.provenance.clone(),
                        ])?;
                    }
                    w.flush()?;
                }
            }
            return Ok(report.all_pass());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
