//! Configuration, series dumps and the verification suite behind the `lgcy` binary.

pub mod checks;
pub mod config;
pub mod dump;
pub mod report;

pub use checks::{run_check, CHECKS};
pub use config::{Config, Format, CONFIG_ENV};
pub use report::{CheckResult, Report, Status};

/// Runs the named checks, in parallel when more than one thread is available.
pub fn run_suite(names: &[&str], cfg: &Config, h: Option<&lg_state::FjrwLabel>) -> anyhow::Result<Report> {
    use rayon::prelude::*;
    let checks = names.par_iter().map(|n| run_check(n, cfg, h)).collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Report { config: cfg.clone(), checks })
}
