//! Library side of the `dunkl-approx` binary: settings, table generation and
//! emission, kept here so integration tests can drive them directly.

pub mod config;
pub mod report;
pub mod run;
pub mod selftest;

use std::env;

use anyhow::{anyhow, Result};

use config::{Cli, Command, RunConfig};
use run::Mode;

pub const THREADS_ENV: &str = "DUNKL_APPROX_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// At least one bound was violated.
    Violation,
    /// A selftest suite failed.
    Failed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violation => 2,
            Status::Failed => 1,
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = env::var(THREADS_ENV) {
        let k: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| anyhow!("{THREADS_ENV}: '{v}' is not a positive integer"))?;
        b = b.num_threads(k);
    }
    Ok(b.build()?)
}

pub fn execute(cli: Cli) -> Result<Status> {
    let pool = thread_pool()?;
    let (mode, settings) = match cli.command {
        Command::Selftest(args) => {
            let results = pool.install(|| selftest::run_all(args.seed, args.cases))?;
            for r in &results {
                println!("{r}");
            }
            return Ok(if results.iter().all(|r| r.passed()) {
                Status::Ok
            } else {
                Status::Failed
            });
        }
        Command::Eval(s) => (Mode::Eval, s),
        Command::Moments(s) => (Mode::Moments, s),
        Command::Converge(s) => (Mode::Converge, s),
        Command::Bounds(s) => (Mode::Bounds, s),
    };
    let cfg = RunConfig::from_settings(settings.merged()?, mode.default_function())?;
    let outcome = pool.install(|| run::run(mode, &cfg))?;
    report::emit(&outcome.rows, cfg.format, cfg.out.as_deref())?;
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    Ok(if outcome.violations > 0 {
        Status::Violation
    } else {
        Status::Ok
    })
}
