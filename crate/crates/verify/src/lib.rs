//! Verification suites for the `gps-core` operators, with TOML configs and
//! CSV output. The `gps` binary is a thin wrapper around [`run`].

pub mod config;
pub mod csv;
mod error;
pub mod sampling;
pub mod suites;

pub use config::ExperimentConfig;
pub use csv::{emit_csv, to_csv, ResultRow};
pub use error::{Result, VerifyError};
pub use suites::{run_suite, SUITES};

/// Thread pool capped by `GPS_THREADS` when it is set.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("GPS_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| VerifyError::config("GPS_THREADS", format!("expected a positive integer, got `{v}`")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| VerifyError::config("GPS_THREADS", e.to_string()))
}

/// Runs the named suites in order inside the capped pool.
pub fn run(cfg: &ExperimentConfig, suites: &[String]) -> Result<Vec<ResultRow>> {
    let pool = thread_pool()?;
    pool.install(|| {
        let mut rows = Vec::new();
        for s in suites {
            rows.extend(run_suite(s, cfg)?);
        }
        Ok(rows)
    })
}
