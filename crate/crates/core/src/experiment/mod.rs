//! Experiment harness: JSON configs, preset grids, CSV rows and
//! certificate sidecars.
//!
//! Grid points run in parallel but rows come back in grid order, and every
//! number in a row depends only on the config and its seed.

mod config;
mod presets;
mod run;

pub use config::{
    expand_grid, expand_range, Axis, Exponent, ExperimentConfig, ExperimentKind, GridSpec, Real, Tolerances,
};
pub use presets::{preset, DD4_ADDITIVITY_MAX_ITER, PRESETS, PRESET_SEED};
pub use run::{
    certificates_for, read_certificates, recheck_certificate, run, run_and_write, write_certificates, write_csv,
    Recheck, ResultRow, RunOutcome, RECHECK_TOL, VERSION,
};

/// Environment variable overriding the config seed.
pub const SEED_ENV: &str = "QCHAN_SEED";
/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "QCHAN_THREADS";
