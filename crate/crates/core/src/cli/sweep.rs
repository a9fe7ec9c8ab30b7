//! Sweep execution.

use rayon::prelude::*;

use super::config::{Output, RfSpec, Scenario, SweepConfig};
use super::table::ResultTable;
use crate::channels::RfFading;
use crate::endtoend::{self, SystemConfig};
use crate::error::{Error, Result};
use crate::oracles;

/// Tolerances reported by [`convergence_report`], loosest first.
pub const CONVERGENCE_TOLS: [f64; 4] = [1e-2, 1e-4, 1e-6, 1e-8];

/// Build identifier written into every provenance block.
pub fn build_id() -> String {
    format!("linkmix {}", env!("LINKMIX_GIT_DESCRIBE"))
}

fn provenance(cfg: &SweepConfig, extra: &[String]) -> Vec<String> {
    let k = cfg.series[0].scenario.system.kernel;
    let mut p = vec![
        build_id(),
        format!("kernel: method={:?} rel_tol={:e} max_nodes={}", k.method, k.rel_tol, k.max_quadrature_nodes),
        format!("series_tol: {:e}", cfg.tol),
    ];
    p.extend(extra.iter().cloned());
    p.push("config:".into());
    p.extend(cfg.to_ini_string().lines().map(|l| format!("  {l}").trim_end().to_string()));
    p
}

fn suffix(label: &str) -> String {
    if label.is_empty() { String::new() } else { format!("[{label}]") }
}

/// Column names for one output of one series, in table order.
fn output_columns(out: &Output, label: &str, cfg: &SweepConfig) -> Vec<String> {
    let s = suffix(label);
    let n = out.name();
    let mut cols = vec![format!("{n}{s}")];
    match out {
        Output::OutageAsym => {}
        Output::Pdf(_) => cols.push(format!("{n}_err{s}")),
        Output::Outage | Output::Cdf(_) | Output::Ber(_) => {
            cols.push(format!("{n}_err{s}"));
            if cfg.oracles.mc.is_some() {
                cols.push(format!("{n}_mc{s}"));
                cols.push(format!("{n}_mc_se{s}"));
            }
            if cfg.oracles.quad {
                cols.push(format!("{n}_quad{s}"));
            }
        }
    }
    cols
}

struct Cells {
    values: Vec<f64>,
    reasons: Vec<String>,
}

impl Cells {
    fn push(&mut self, name: &str, width: usize, r: Result<Vec<f64>>) {
        match r {
            Ok(v) => {
                debug_assert_eq!(v.len(), width);
                self.values.extend(v);
            }
            Err(e) => self.fail(name, width, &e),
        }
    }

    fn fail(&mut self, name: &str, width: usize, e: &Error) {
        log::info!("{name}: {e}");
        self.values.extend(std::iter::repeat_n(f64::NAN, width));
        self.reasons.push(format!("{name}: {e}"));
    }
}

fn estimate_cells(e: Result<oracles::Estimate>, with_se: bool) -> Result<Vec<f64>> {
    let e = e?;
    Ok(if with_se { vec![e.value, e.std_error] } else { vec![e.value] })
}

/// Evaluates every output of one series at one operating point.
fn evaluate_point(sc: &Scenario, cfg: &SweepConfig, label: &str) -> Cells {
    let mut cells = Cells { values: Vec::new(), reasons: Vec::new() };
    let links = sc.rf_fading().and_then(|rf| Ok((rf, sc.fso()?)));
    for out in &cfg.outputs {
        let cols = output_columns(out, label, cfg);
        let (rf, fso) = match &links {
            Ok(l) => l,
            Err(e) => {
                cells.fail(&cols[0], cols.len(), e);
                continue;
            }
        };
        let sys = sc.system;
        let tol = cfg.tol;
        let closed = |r: Result<endtoend::EvalResult>| r.map(|v| vec![v.value, v.abs_error_est]);
        match out {
            Output::OutageAsym => {
                cells.push(&cols[0], 1, endtoend::outage_asymptotic(rf, fso, &sys, tol).map(|v| vec![v]));
            }
            Output::Pdf(g) => cells.push(&cols[0], 2, closed(endtoend::pdf(rf, fso, &sys, *g, tol))),
            Output::Outage | Output::Cdf(_) | Output::Ber(_) => {
                let point_sys = match out {
                    Output::Cdf(g) => SystemConfig { gamma_th: *g, ..sys },
                    _ => sys,
                };
                let cf = match out {
                    Output::Ber(m) => endtoend::ber(rf, fso, &sys, m, tol),
                    _ => endtoend::outage(rf, fso, &point_sys, tol),
                };
                cells.push(&cols[0], 2, closed(cf));
                if let Some(mc) = &cfg.oracles.mc {
                    let est = match out {
                        Output::Ber(m) => oracles::mc_ber(rf, fso, &sys, m, mc),
                        _ => oracles::mc_outage(rf, fso, &point_sys, mc),
                    };
                    cells.push(&cols[2], 2, estimate_cells(est, true));
                }
                if cfg.oracles.quad {
                    let rf_cdf = |g: f64| rf.cdf(g);
                    let est = match out {
                        Output::Ber(m) => oracles::quad_ber_relay(rf_cdf, fso, &sys, m),
                        _ => oracles::quad_cdf(rf_cdf, fso, &point_sys, point_sys.gamma_th),
                    };
                    let i = cols.len() - 1;
                    cells.push(&cols[i], 1, estimate_cells(est, false));
                }
            }
        }
    }
    cells
}

/// The operating points of a config: `(axis value, scenario per series)`.
fn grid(cfg: &SweepConfig) -> Vec<(Option<f64>, Vec<Scenario>)> {
    match &cfg.sweep {
        Some(sw) => sw
            .points()
            .into_iter()
            .map(|x| (Some(x), cfg.series.iter().map(|s| s.scenario.with_axis(sw.axis, x)).collect()))
            .collect(),
        None => vec![(None, cfg.series.iter().map(|s| s.scenario).collect())],
    }
}

/// One row per sweep point. Points run concurrently; rows keep sweep order.
/// A failed cell becomes `NaN` and is explained in the row's reason.
pub fn run_sweep(cfg: &SweepConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let mut columns = Vec::new();
    if let Some(sw) = &cfg.sweep {
        columns.push(sw.axis.name().to_string());
    }
    for s in &cfg.series {
        for out in &cfg.outputs {
            columns.extend(output_columns(out, &s.label, cfg));
        }
    }
    let mut table = ResultTable::new(columns);
    let mut extra = Vec::new();
    if let Some(mc) = &cfg.oracles.mc {
        extra.push(format!("mc: seed={} samples={} block={}", mc.seed, mc.n_samples, oracles::BLOCK_SIZE));
    }
    if cfg.oracles.quad {
        extra.push(format!("quad: stall_limit={:e}", oracles::quadrature::STALL_LIMIT));
    }
    table.provenance = provenance(cfg, &extra);

    let points = grid(cfg);
    let rows: Vec<(Vec<f64>, String)> = points
        .par_iter()
        .map(|(x, scenarios)| {
            let mut row: Vec<f64> = x.iter().copied().collect();
            let mut reasons = Vec::new();
            for (sc, series) in scenarios.iter().zip(&cfg.series) {
                let cells = evaluate_point(sc, cfg, &series.label);
                row.extend(cells.values);
                reasons.extend(cells.reasons);
            }
            (row, reasons.join("; "))
        })
        .collect();
    for (row, reason) in rows {
        table.push_row(row, reason);
    }
    Ok(table)
}

/// Series length and certified tail bound of the κ-μ outage at each
/// tolerance in [`CONVERGENCE_TOLS`].
pub fn convergence_report(cfg: &SweepConfig) -> Result<ResultTable> {
    cfg.validate()?;
    if let Some(s) = cfg.series.iter().find(|s| !matches!(s.scenario.rf, RfSpec::KappaMu { .. })) {
        return Err(Error::Config {
            location: format!("series {}", if s.label.is_empty() { "<base>" } else { &s.label }),
            message: "the convergence report needs family = kappa-mu".into(),
        });
    }
    let mut columns = Vec::new();
    if let Some(sw) = &cfg.sweep {
        columns.push(sw.axis.name().to_string());
    }
    for s in &cfg.series {
        let sfx = suffix(&s.label);
        for tol in CONVERGENCE_TOLS {
            columns.push(format!("terms@{tol:e}{sfx}"));
            columns.push(format!("bound@{tol:e}{sfx}"));
        }
    }
    let mut table = ResultTable::new(columns);
    table.provenance = provenance(cfg, &[format!("tolerances: {CONVERGENCE_TOLS:?}")]);
    let rows: Vec<(Vec<f64>, String)> = grid(cfg)
        .par_iter()
        .map(|(x, scenarios)| {
            let mut row: Vec<f64> = x.iter().copied().collect();
            let mut reasons = Vec::new();
            for (sc, series) in scenarios.iter().zip(&cfg.series) {
                for tol in CONVERGENCE_TOLS {
                    let r = sc.rf_fading().and_then(|rf| {
                        let RfFading::KappaMu(k) = rf else { unreachable!("checked above") };
                        endtoend::cdf_kappamu_gg(&k, &sc.fso()?, &sc.system, sc.system.gamma_th, tol)
                    });
                    match r {
                        Ok(v) => {
                            row.push(v.terms_used.map_or(f64::NAN, f64::from));
                            row.push(v.tail_bound);
                        }
                        Err(e) => {
                            row.extend([f64::NAN, f64::NAN]);
                            reasons.push(format!("terms@{tol:e}{}: {e}", suffix(&series.label)));
                        }
                    }
                }
            }
            (row, reasons.join("; "))
        })
        .collect();
    for (row, reason) in rows {
        table.push_row(row, reason);
    }
    Ok(table)
}

/// Applies command-line oracle overrides.
pub fn with_overrides(mut cfg: SweepConfig, seed: Option<u64>, samples: Option<u64>, tol: Option<f64>, no_mc: bool, no_quad: bool) -> SweepConfig {
    if let Some(mc) = cfg.oracles.mc.as_mut() {
        if let Some(s) = seed {
            mc.seed = s;
        }
        if let Some(n) = samples {
            mc.n_samples = n;
        }
    }
    if no_mc {
        cfg.oracles.mc = None;
    }
    if no_quad {
        cfg.oracles.quad = false;
    }
    if let Some(t) = tol {
        cfg.tol = t;
    }
    cfg
}

