//! Runs a built-in figure preset without oracles and prints the CSV.
//!
//! `cargo run --release --example figure_presets -- fig4`

use linkmix::cli::{preset, run_sweep, with_overrides, PRESET_NAMES};

fn main() -> linkmix::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "fig4".into());
    let Some(cfg) = preset(&name) else {
        eprintln!("unknown preset '{name}', expected one of {PRESET_NAMES:?}");
        std::process::exit(2);
    };
    let cfg = with_overrides(cfg, None, None, None, true, true);
    print!("{}", run_sweep(&cfg)?.to_csv_string());
    Ok(())
}
