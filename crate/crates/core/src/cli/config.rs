//! Sweep configuration and its INI form.
//!
//! ```ini
//! [rf]
//! family = eta-mu          ; or kappa-mu
//! eta = 0.5
//! mu = 3
//! gamma_bar1_db = 10       ; or gamma_bar1 = 10 (linear)
//!
//! [fso]
//! cn2 = 1e-15
//! xi = 1.1                 ; inf for no pointing errors
//! detection = heterodyne   ; or imdd
//! gamma_bar2_db = 10
//!
//! [system]
//! c = 1
//! gamma_th_db = 0
//!
//! [sweep]
//! axis = gamma_bar2_db     ; gamma_bar1_db | gamma_bar2_db | xi | cn2
//! start = 0
//! stop = 50
//! step = 5
//!
//! [outputs]
//! list = outage, outage_asym, ber:CBFSK, cdf:1.0, pdf:1.0
//!
//! [oracles]
//! mc = true
//! samples = 1000000
//! seed = 42
//! quad = true
//!
//! [series.weak]            ; optional curve families; keys override the base
//! cn2 = 1e-15
//! ```

use std::fmt::Write as _;
use std::path::Path;

use ini::Ini;

use crate::channels::{Detection, EtaMuParams, FsoChannelParams, KappaMuParams, LinkGeometry, RfFading};
use crate::endtoend::{ModulationScheme, SystemConfig};
use crate::error::{Error, Result};
use crate::oracles::McConfig;

/// `10^{x/10}`
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RfSpec {
    EtaMu { eta: f64, mu: u32 },
    KappaMu { kappa: f64, mu: f64 },
}

/// One fully specified operating point. SNRs are linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub rf: RfSpec,
    pub gamma_bar1: f64,
    pub geometry: LinkGeometry,
    pub xi: f64,
    pub detection: Detection,
    pub gamma_bar2: f64,
    pub system: SystemConfig,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            rf: RfSpec::EtaMu { eta: 0.5, mu: 3 },
            gamma_bar1: db_to_linear(10.0),
            geometry: LinkGeometry::default(),
            xi: 1.1,
            detection: Detection::Heterodyne,
            gamma_bar2: db_to_linear(10.0),
            system: SystemConfig::default(),
        }
    }
}

impl Scenario {
    pub fn rf_fading(&self) -> Result<RfFading> {
        Ok(match self.rf {
            RfSpec::EtaMu { eta, mu } => RfFading::EtaMu(EtaMuParams::new(eta, mu, self.gamma_bar1)?),
            RfSpec::KappaMu { kappa, mu } => RfFading::KappaMu(KappaMuParams::new(kappa, mu, self.gamma_bar1)?),
        })
    }

    pub fn fso(&self) -> Result<FsoChannelParams> {
        FsoChannelParams::from_geometry(&self.geometry, self.xi, self.detection, self.gamma_bar2)
    }

    /// Sets the quantity on the sweep axis.
    pub fn with_axis(mut self, axis: SweepAxis, value: f64) -> Self {
        match axis {
            SweepAxis::GammaBar1Db => self.gamma_bar1 = db_to_linear(value),
            SweepAxis::GammaBar2Db => self.gamma_bar2 = db_to_linear(value),
            SweepAxis::Xi => self.xi = value,
            SweepAxis::Cn2 => self.geometry.cn2 = value,
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    GammaBar1Db,
    GammaBar2Db,
    Xi,
    Cn2,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::GammaBar1Db => "gamma_bar1_db",
            SweepAxis::GammaBar2Db => "gamma_bar2_db",
            SweepAxis::Xi => "xi",
            SweepAxis::Cn2 => "cn2",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [Self::GammaBar1Db, Self::GammaBar2Db, Self::Xi, Self::Cn2].into_iter().find(|a| a.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Sweep {
    /// Grid points from `start` to `stop` inclusive.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Outage,
    OutageAsym,
    Ber(ModulationScheme),
    Cdf(f64),
    Pdf(f64),
}

impl Output {
    pub fn name(&self) -> String {
        match self {
            Output::Outage => "outage".into(),
            Output::OutageAsym => "outage_asym".into(),
            Output::Ber(m) => format!("ber_{}", m.name),
            Output::Cdf(g) => format!("cdf@{g}"),
            Output::Pdf(g) => format!("pdf@{g}"),
        }
    }

    fn spec_string(&self) -> String {
        match self {
            Output::Outage => "outage".into(),
            Output::OutageAsym => "outage_asym".into(),
            Output::Ber(m) if ModulationScheme::by_name(&m.name).as_ref() == Some(m) => format!("ber:{}", m.name),
            Output::Ber(m) => format!("ber:{}:{}", m.p, m.q),
            Output::Cdf(g) => format!("cdf:{g}"),
            Output::Pdf(g) => format!("pdf:{g}"),
        }
    }

    fn parse(item: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = item.split(':').map(str::trim).collect();
        let num = |s: &str| s.parse::<f64>().map_err(|_| format!("'{s}' is not a number"));
        match parts.as_slice() {
            ["outage"] => Ok(Output::Outage),
            ["outage_asym"] => Ok(Output::OutageAsym),
            ["ber", name] => ModulationScheme::by_name(name)
                .map(Output::Ber)
                .ok_or_else(|| format!("unknown modulation '{name}' (CBFSK, NBFSK, CBPSK, DBPSK or ber:p:q)")),
            ["ber", p, q] => ModulationScheme::new(format!("p{p}q{q}"), num(p)?, num(q)?)
                .map(Output::Ber)
                .map_err(|e| e.to_string()),
            ["cdf", g] => Ok(Output::Cdf(num(g)?)),
            ["pdf", g] => Ok(Output::Pdf(num(g)?)),
            _ => Err(format!("unknown output '{item}'")),
        }
    }
}

/// Oracle settings; `mc = None` disables the simulator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleToggles {
    pub mc: Option<McConfig>,
    pub quad: bool,
}

impl Default for OracleToggles {
    fn default() -> Self {
        Self { mc: Some(McConfig::default()), quad: true }
    }
}

/// A labelled curve family.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub scenario: Scenario,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub name: String,
    pub series: Vec<Series>,
    pub sweep: Option<Sweep>,
    pub outputs: Vec<Output>,
    pub oracles: OracleToggles,
    /// κ-μ series tolerance.
    pub tol: f64,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, message: String| Err(Error::Config { location: key.into(), message });
        if self.series.is_empty() {
            return bad("series", "at least one scenario is required".into());
        }
        if self.outputs.is_empty() {
            return bad("outputs.list", "at least one output must be requested".into());
        }
        if let Some(s) = &self.sweep {
            if !(s.step > 0.0) {
                return bad("sweep.step", format!("step must be positive, got {}", s.step));
            }
            if !(s.start <= s.stop) {
                return bad("sweep.stop", format!("stop ({}) must not be below start ({})", s.stop, s.start));
            }
        }
        if !(self.tol > 0.0) {
            return bad("numerics.tol", format!("tolerance must be positive, got {}", self.tol));
        }
        for s in &self.series {
            s.scenario.system.validate().map_err(|e| Error::Config { location: format!("series {}", s.label), message: e.to_string() })?;
        }
        if let Some(mc) = &self.oracles.mc {
            mc.validate().map_err(|e| Error::Config { location: "oracles".into(), message: e.to_string() })?;
        }
        Ok(())
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_ini_str(&text).map_err(|e| match e {
            Error::Config { location, message } => Error::Config { location: format!("{}: {location}", path.display()), message },
            other => other,
        })
    }

    /// Parses the INI form. Unknown sections or keys are errors.
    pub fn from_ini_str(text: &str) -> Result<Self> {
        let ini = Ini::load_from_str(&strip_inline_comments(text)).map_err(|e| Error::Config {
            location: format!("line {}, column {}", e.line, e.col),
            message: e.msg.to_string(),
        })?;
        let mut base = Scenario::default();
        let mut series_sections = Vec::new();
        let mut sweep = None;
        let mut outputs = Vec::new();
        let mut oracles = OracleToggles::default();
        let mut mc = McConfig::default();
        let mut tol = 1e-10;
        let mut name = "custom".to_string();

        for (section, props) in ini.iter() {
            let sec = section.unwrap_or("");
            let loc = |key: &str| if sec.is_empty() { key.to_string() } else { format!("[{sec}] {key}") };
            let err = |key: &str, message: String| Error::Config { location: loc(key), message };
            let num = |key: &str, v: &str| v.trim().parse::<f64>().map_err(|_| err(key, format!("'{v}' is not a number")));
            match sec {
                "" => {
                    for (k, v) in props.iter() {
                        match k {
                            "name" => name = v.to_string(),
                            _ => return Err(err(k, "unknown top-level key".into())),
                        }
                    }
                }
                "rf" | "fso" | "system" => {
                    for (k, v) in props.iter() {
                        apply_key(&mut base, k, v).map_err(|m| err(k, m))?;
                    }
                }
                "sweep" => {
                    let mut axis = None;
                    let (mut start, mut stop, mut step) = (None, None, None);
                    for (k, v) in props.iter() {
                        match k {
                            "axis" => {
                                axis = Some(SweepAxis::parse(v.trim()).ok_or_else(|| {
                                    err(k, format!("unknown axis '{v}' (gamma_bar1_db, gamma_bar2_db, xi, cn2)"))
                                })?)
                            }
                            "start" => start = Some(num(k, v)?),
                            "stop" => stop = Some(num(k, v)?),
                            "step" => step = Some(num(k, v)?),
                            _ => return Err(err(k, "unknown key".into())),
                        }
                    }
                    let missing = |key: &str| err(key, "missing".into());
                    sweep = Some(Sweep {
                        axis: axis.ok_or_else(|| missing("axis"))?,
                        start: start.ok_or_else(|| missing("start"))?,
                        stop: stop.ok_or_else(|| missing("stop"))?,
                        step: step.ok_or_else(|| missing("step"))?,
                    });
                }
                "outputs" => {
                    for (k, v) in props.iter() {
                        match k {
                            "list" => {
                                for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                                    outputs.push(Output::parse(item).map_err(|m| err(k, m))?);
                                }
                            }
                            _ => return Err(err(k, "unknown key".into())),
                        }
                    }
                }
                "oracles" => {
                    for (k, v) in props.iter() {
                        match k {
                            "mc" => oracles.mc = if parse_bool(v).map_err(|m| err(k, m))? { Some(mc) } else { None },
                            "quad" => oracles.quad = parse_bool(v).map_err(|m| err(k, m))?,
                            "samples" => mc.n_samples = v.trim().parse().map_err(|_| err(k, format!("'{v}' is not a count")))?,
                            "seed" => mc.seed = v.trim().parse().map_err(|_| err(k, format!("'{v}' is not a u64")))?,
                            "streams" => mc.n_streams = v.trim().parse().map_err(|_| err(k, format!("'{v}' is not a count")))?,
                            _ => return Err(err(k, "unknown key".into())),
                        }
                    }
                    if let Some(m) = oracles.mc.as_mut() {
                        *m = mc;
                    }
                }
                "numerics" => {
                    for (k, v) in props.iter() {
                        match k {
                            "tol" => tol = num(k, v)?,
                            "kernel_rel_tol" => base.system.kernel.rel_tol = num(k, v)?,
                            _ => return Err(err(k, "unknown key".into())),
                        }
                    }
                }
                s if s.starts_with("series.") => {
                    let label = s["series.".len()..].to_string();
                    let pairs: Vec<(String, String)> = props.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
                    series_sections.push((label, pairs));
                }
                other => {
                    return Err(Error::Config { location: format!("[{other}]"), message: "unknown section".into() });
                }
            }
        }

        let series = if series_sections.is_empty() {
            vec![Series { label: String::new(), scenario: base }]
        } else {
            let mut out = Vec::new();
            for (label, pairs) in series_sections {
                let mut sc = base;
                for (k, v) in pairs {
                    apply_key(&mut sc, &k, &v)
                        .map_err(|message| Error::Config { location: format!("[series.{label}] {k}"), message })?;
                }
                out.push(Series { label, scenario: sc });
            }
            out
        };
        let cfg = SweepConfig { name, series, sweep, outputs, oracles, tol };
        cfg.validate()?;
        Ok(cfg)
    }

    /// INI text that parses back to this configuration.
    pub fn to_ini_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "name = {}", self.name);
        let base = &self.series[0].scenario;
        let _ = writeln!(s, "\n[rf]");
        for (k, v) in scenario_keys(base).iter().filter(|(k, _)| RF_KEYS.contains(&k.as_str())) {
            let _ = writeln!(s, "{k} = {v}");
        }
        let _ = writeln!(s, "\n[fso]");
        for (k, v) in scenario_keys(base).iter().filter(|(k, _)| FSO_KEYS.contains(&k.as_str())) {
            let _ = writeln!(s, "{k} = {v}");
        }
        let _ = writeln!(s, "\n[system]");
        for (k, v) in scenario_keys(base).iter().filter(|(k, _)| SYSTEM_KEYS.contains(&k.as_str())) {
            let _ = writeln!(s, "{k} = {v}");
        }
        if let Some(sw) = &self.sweep {
            let _ = writeln!(s, "\n[sweep]\naxis = {}\nstart = {:?}\nstop = {:?}\nstep = {:?}", sw.axis.name(), sw.start, sw.stop, sw.step);
        }
        let list: Vec<String> = self.outputs.iter().map(Output::spec_string).collect();
        let _ = writeln!(s, "\n[outputs]\nlist = {}", list.join(", "));
        let mc = self.oracles.mc;
        let _ = writeln!(s, "\n[oracles]\nmc = {}\nquad = {}", mc.is_some(), self.oracles.quad);
        if let Some(mc) = mc {
            let _ = writeln!(s, "samples = {}\nseed = {}\nstreams = {}", mc.n_samples, mc.seed, mc.n_streams);
        }
        let _ = writeln!(s, "\n[numerics]\ntol = {:?}\nkernel_rel_tol = {:?}", self.tol, base.system.kernel.rel_tol);
        if self.series.len() > 1 || !self.series[0].label.is_empty() {
            for sr in &self.series {
                let _ = writeln!(s, "\n[series.{}]", sr.label);
                let base_keys = scenario_keys(base);
                for (k, v) in scenario_keys(&sr.scenario) {
                    if !base_keys.contains(&(k.clone(), v.clone())) {
                        let _ = writeln!(s, "{k} = {v}");
                    }
                }
            }
        }
        s
    }
}

const RF_KEYS: &[&str] = &["family", "eta", "kappa", "mu", "gamma_bar1"];
const FSO_KEYS: &[&str] = &["cn2", "length_m", "aperture_m", "wavelength_m", "rytov_coeff", "xi", "detection", "gamma_bar2"];
const SYSTEM_KEYS: &[&str] = &["c", "gamma_th"];

/// Exact key/value form of a scenario (linear SNRs, `{:?}` reals).
fn scenario_keys(sc: &Scenario) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = Vec::new();
    let mut push = |k: &str, val: String| v.push((k.to_string(), val));
    match sc.rf {
        RfSpec::EtaMu { eta, mu } => {
            push("family", "eta-mu".into());
            push("eta", format!("{eta:?}"));
            push("mu", format!("{mu}"));
        }
        RfSpec::KappaMu { kappa, mu } => {
            push("family", "kappa-mu".into());
            push("kappa", format!("{kappa:?}"));
            push("mu", format!("{mu:?}"));
        }
    }
    push("gamma_bar1", format!("{:?}", sc.gamma_bar1));
    let g = sc.geometry;
    push("cn2", format!("{:?}", g.cn2));
    push("length_m", format!("{:?}", g.length_m));
    push("aperture_m", format!("{:?}", g.aperture_m));
    push("wavelength_m", format!("{:?}", g.wavelength_m));
    push("rytov_coeff", format!("{:?}", g.rytov_coeff));
    push("xi", if sc.xi.is_infinite() { "inf".into() } else { format!("{:?}", sc.xi) });
    push("detection", match sc.detection {
        Detection::Heterodyne => "heterodyne".into(),
        Detection::ImDd => "imdd".into(),
    });
    push("gamma_bar2", format!("{:?}", sc.gamma_bar2));
    push("c", format!("{:?}", sc.system.c));
    push("gamma_th", format!("{:?}", sc.system.gamma_th));
    v
}

fn parse_bool(v: &str) -> std::result::Result<bool, String> {
    match v.trim().to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("'{v}' is not a boolean")),
    }
}

/// Drops `; …` and `# …` trailing a value when preceded by whitespace.
fn strip_inline_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        let cut = line
            .char_indices()
            .find(|&(i, c)| (c == ';' || c == '#') && line[..i].ends_with(char::is_whitespace) && !line[..i].trim().is_empty())
            .map_or(line.len(), |(i, _)| i);
        out.push_str(line[..cut].trim_end());
        out.push('\n');
    }
    out
}

/// Applies one `key = value` to a scenario. dB keys are converted here and
/// only here.
pub fn apply_key(sc: &mut Scenario, key: &str, value: &str) -> std::result::Result<(), String> {
    let v = value.trim();
    let num = || v.parse::<f64>().map_err(|_| format!("'{v}' is not a number"));
    match key {
        "family" => {
            sc.rf = match v {
                "eta-mu" | "etamu" => match sc.rf {
                    RfSpec::EtaMu { .. } => sc.rf,
                    RfSpec::KappaMu { mu, .. } => RfSpec::EtaMu { eta: 0.5, mu: mu.round().max(1.0) as u32 },
                },
                "kappa-mu" | "kappamu" => match sc.rf {
                    RfSpec::KappaMu { .. } => sc.rf,
                    RfSpec::EtaMu { mu, .. } => RfSpec::KappaMu { kappa: 1.0, mu: mu as f64 },
                },
                _ => return Err(format!("unknown RF family '{v}' (eta-mu or kappa-mu)")),
            }
        }
        "eta" => match &mut sc.rf {
            RfSpec::EtaMu { eta, .. } => *eta = num()?,
            _ => return Err("eta needs family = eta-mu (set family first)".into()),
        },
        "kappa" => match &mut sc.rf {
            RfSpec::KappaMu { kappa, .. } => *kappa = num()?,
            _ => return Err("kappa needs family = kappa-mu (set family first)".into()),
        },
        "mu" => match &mut sc.rf {
            RfSpec::EtaMu { mu, .. } => *mu = v.parse().map_err(|_| format!("eta-mu needs an integer mu, got '{v}'"))?,
            RfSpec::KappaMu { mu, .. } => *mu = num()?,
        },
        "gamma_bar1" => sc.gamma_bar1 = num()?,
        "gamma_bar1_db" => sc.gamma_bar1 = db_to_linear(num()?),
        "gamma_bar2" => sc.gamma_bar2 = num()?,
        "gamma_bar2_db" => sc.gamma_bar2 = db_to_linear(num()?),
        "cn2" => sc.geometry.cn2 = num()?,
        "length_m" => sc.geometry.length_m = num()?,
        "aperture_m" => sc.geometry.aperture_m = num()?,
        "wavelength_m" => sc.geometry.wavelength_m = num()?,
        "rytov_coeff" => sc.geometry.rytov_coeff = num()?,
        "xi" => sc.xi = if v.eq_ignore_ascii_case("inf") { f64::INFINITY } else { num()? },
        "detection" => {
            sc.detection = match v.to_ascii_lowercase().as_str() {
                "heterodyne" | "1" => Detection::Heterodyne,
                "imdd" | "im/dd" | "im-dd" | "2" => Detection::ImDd,
                _ => return Err(format!("unknown detection '{v}' (heterodyne or imdd)")),
            }
        }
        "t" => sc.detection = Detection::from_t(v.parse().map_err(|_| format!("'{v}' is not 1 or 2"))?).map_err(|e| e.to_string())?,
        "c" => sc.system.c = num()?,
        "gamma_th" => sc.system.gamma_th = num()?,
        "gamma_th_db" => sc.system.gamma_th = db_to_linear(num()?),
        _ => return Err("unknown key".into()),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_comments_are_ignored() {
        let cfg = SweepConfig::from_ini_str("; header\n[rf]\nfamily = kappa-mu   ; or eta-mu\nkappa = 3 # strong LOS\nmu = 2\n[outputs]\nlist = outage\n").unwrap();
        assert_eq!(cfg.series[0].scenario.rf, RfSpec::KappaMu { kappa: 3.0, mu: 2.0 });
    }

    #[test]
    fn parses_and_reports_locations() {
        let cfg = SweepConfig::from_ini_str(
            "[rf]\nfamily = kappa-mu\nkappa = 3\nmu = 2\n[fso]\ngamma_bar2_db = 20\n[outputs]\nlist = outage, ber:DBPSK\n",
        )
        .unwrap();
        assert_eq!(cfg.series.len(), 1);
        assert!((cfg.series[0].scenario.gamma_bar2 - 100.0).abs() < 1e-12);
        assert_eq!(cfg.outputs.len(), 2);

        let e = SweepConfig::from_ini_str("[rf]\neta = abc\n[outputs]\nlist = outage\n").unwrap_err();
        assert!(e.to_string().contains("[rf] eta"), "{e}");
        let e = SweepConfig::from_ini_str("[bogus]\nx = 1\n").unwrap_err();
        assert!(e.to_string().contains("[bogus]"));
        let e = SweepConfig::from_ini_str("[rf]\neta = 0.5\n").unwrap_err();
        assert!(e.to_string().contains("outputs"));
        let e = SweepConfig::from_ini_str("[outputs]\nlist = outage\n[sweep]\naxis = xi\nstart = 2\nstop = 1\nstep = 1\n").unwrap_err();
        assert!(e.to_string().contains("sweep.stop"));
    }

    #[test]
    fn ini_round_trip() {
        let text = "[rf]\nfamily = eta-mu\neta = 0.9\nmu = 2\n[outputs]\nlist = outage, cdf:0.5, ber:1:0.25\n[sweep]\naxis = xi\nstart = 1\nstop = 3\nstep = 0.5\n[series.a]\ncn2 = 1e-15\n[series.b]\nxi = inf\n";
        let cfg = SweepConfig::from_ini_str(text).unwrap();
        let back = SweepConfig::from_ini_str(&cfg.to_ini_string()).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn db_conversion() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(30.0) - 1000.0).abs() < 1e-9);
        assert!((linear_to_db(100.0) - 20.0).abs() < 1e-12);
    }

    #[test]
    fn sweep_points_inclusive() {
        let s = Sweep { axis: SweepAxis::GammaBar2Db, start: 0.0, stop: 50.0, step: 5.0 };
        assert_eq!(s.points().len(), 11);
        let s = Sweep { start: 3.0, stop: 3.0, ..s };
        assert_eq!(s.points(), vec![3.0]);
    }
}
