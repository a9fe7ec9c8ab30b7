//! Experiment runner: configuration, presets, sweeps and CSV output.

pub mod config;
pub mod presets;
pub mod selftest;
pub mod sweep;
pub mod table;

pub use config::{
    apply_key, db_to_linear, linear_to_db, OracleToggles, Output, RfSpec, Scenario, Series, Sweep, SweepAxis,
    SweepConfig,
};
pub use presets::{preset, PRESET_NAMES};
pub use selftest::{run_selftest, Check};
pub use sweep::{build_id, convergence_report, run_sweep, with_overrides, CONVERGENCE_TOLS};
pub use table::{format_real, ResultTable};
