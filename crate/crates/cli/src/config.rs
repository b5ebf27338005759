//! Flat `key = value` run configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Each key may appear
//! once per document; command-line flags are applied afterwards and win.

use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use jcm_core::{Complex64, ModelParams, Motion, Nonlinearity};

use crate::error::{ConfigError, Origin};

/// Every recognised key, in echo order.
pub const KEYS: &[&str] = &[
    "alpha_sq",
    "alpha_phase",
    "lambda",
    "p",
    "motion",
    "nonlinearity",
    "eta",
    "nu",
    "n_max",
    "custom_g",
    "tau_start",
    "tau_end",
    "tau_step",
    "observables",
    "sweep_p",
    "sweep_nonlinearity",
    "output",
    "plot",
    "grid_points",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Observable {
    Entropy,
    EntropySqueezing,
    Mandel,
    Quadrature,
}

impl Observable {
    pub const ALL: [Observable; 4] = [
        Observable::Entropy,
        Observable::EntropySqueezing,
        Observable::Mandel,
        Observable::Quadrature,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Observable::Entropy => "entropy",
            Observable::EntropySqueezing => "entropy_squeezing",
            Observable::Mandel => "mandel",
            Observable::Quadrature => "quadrature",
        }
    }
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Observable::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| {
                format!("unknown observable `{s}` (expected entropy, entropy_squeezing, mandel or quadrature)")
            })
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Name of a nonlinearity profile; its parameters live in [`ModelSettings`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NonlinearityKind {
    Identity,
    TrappedIon,
    Harmonious,
    PoschlTeller,
    Custom,
}

impl NonlinearityKind {
    pub const ALL: [NonlinearityKind; 5] = [
        NonlinearityKind::Identity,
        NonlinearityKind::TrappedIon,
        NonlinearityKind::Harmonious,
        NonlinearityKind::PoschlTeller,
        NonlinearityKind::Custom,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NonlinearityKind::Identity => "identity",
            NonlinearityKind::TrappedIon => "trapped_ion",
            NonlinearityKind::Harmonious => "harmonious",
            NonlinearityKind::PoschlTeller => "poschl_teller",
            NonlinearityKind::Custom => "custom",
        }
    }
}

impl FromStr for NonlinearityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NonlinearityKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                format!(
                    "unknown nonlinearity `{s}` (expected identity, trapped_ion, harmonious, poschl_teller or custom)"
                )
            })
    }
}

impl fmt::Display for NonlinearityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Physical inputs as written in the config, before validation.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSettings {
    pub alpha_sq: f64,
    pub alpha_phase: f64,
    pub lambda: f64,
    pub p: u32,
    pub motion: Motion,
    pub nonlinearity: NonlinearityKind,
    pub eta: f64,
    pub nu: f64,
    /// 0 selects the automatic cutoff.
    pub n_max: usize,
    /// `custom_g[k] = g(k+1)` for the custom profile.
    pub custom_g: Vec<f64>,
}

impl Default for ModelSettings {
    fn default() -> Self {
        Self {
            alpha_sq: 10.0,
            alpha_phase: 0.0,
            lambda: 1.0,
            p: 1,
            motion: Motion::Moving,
            nonlinearity: NonlinearityKind::Identity,
            eta: 0.2,
            nu: 1.0,
            n_max: 0,
            custom_g: Vec::new(),
        }
    }
}

impl ModelSettings {
    pub fn nonlinearity(&self) -> Nonlinearity {
        match self.nonlinearity {
            NonlinearityKind::Identity => Nonlinearity::Identity,
            NonlinearityKind::TrappedIon => Nonlinearity::TrappedIon { eta: self.eta },
            NonlinearityKind::Harmonious => Nonlinearity::Harmonious,
            NonlinearityKind::PoschlTeller => Nonlinearity::PoschlTeller { nu: self.nu },
            NonlinearityKind::Custom => Nonlinearity::Custom(self.custom_g.clone()),
        }
    }

    pub fn build(&self) -> jcm_core::Result<ModelParams> {
        if !(self.alpha_sq >= 0.0 && self.alpha_sq.is_finite()) {
            return Err(jcm_core::Error::InvalidParameter {
                name: "alpha",
                value: self.alpha_sq,
                reason: "mean photon number must be finite and non-negative",
            });
        }
        let alpha = Complex64::from_polar(self.alpha_sq.sqrt(), self.alpha_phase);
        ModelParams::builder()
            .lambda(self.lambda)
            .p(self.p)
            .alpha(alpha)
            .nonlinearity(self.nonlinearity())
            .n_max((self.n_max > 0).then_some(self.n_max))
            .motion(self.motion)
            .build()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    P(Vec<u32>),
    Nonlinearity(Vec<NonlinearityKind>),
}

/// One `key = value` assignment with its source.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub origin: Origin,
}

impl Entry {
    pub fn flag(key: impl Into<String>, value: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            value: value.into(),
            origin: Origin::Flag,
        }
    }
}

/// Validated run description.
#[derive(Debug, Clone)]
pub struct RunConfig {
    model: ModelSettings,
    params: ModelParams,
    tau_start: f64,
    tau_end: f64,
    tau_step: f64,
    observables: Vec<Observable>,
    sweep: Option<Sweep>,
    output: PathBuf,
    emit_plot: bool,
    grid_points: usize,
}

/// One member of a sweep (or the whole run when there is no sweep).
#[derive(Debug, Clone)]
pub struct Case {
    /// File-name suffix such as `p2` or `harmonious`; `None` without a sweep.
    pub label: Option<String>,
    pub config: RunConfig,
}

impl RunConfig {
    pub fn model(&self) -> &ModelSettings {
        &self.model
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn tau_start(&self) -> f64 {
        self.tau_start
    }

    pub fn tau_end(&self) -> f64 {
        self.tau_end
    }

    pub fn tau_step(&self) -> f64 {
        self.tau_step
    }

    /// Requested observables in canonical order.
    pub fn observables(&self) -> &[Observable] {
        &self.observables
    }

    pub fn wants(&self, observable: Observable) -> bool {
        self.observables.contains(&observable)
    }

    pub fn sweep(&self) -> Option<&Sweep> {
        self.sweep.as_ref()
    }

    pub fn output(&self) -> &Path {
        &self.output
    }

    pub fn emit_plot(&self) -> bool {
        self.emit_plot
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    /// `τ_k = τ_start + k Δτ` for every `τ_k ≤ τ_end`.
    pub fn tau_grid(&self) -> Vec<f64> {
        let span = (self.tau_end - self.tau_start) / self.tau_step;
        let count = (span + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| self.tau_start + k as f64 * self.tau_step)
            .collect()
    }

    /// Expands the sweep into concrete runs.
    pub fn cases(&self) -> Vec<Case> {
        let variants: Vec<(Option<String>, ModelSettings)> = match &self.sweep {
            None => vec![(None, self.model.clone())],
            Some(Sweep::P(ps)) => ps
                .iter()
                .map(|&p| {
                    let model = ModelSettings {
                        p,
                        ..self.model.clone()
                    };
                    (Some(format!("p{p}")), model)
                })
                .collect(),
            Some(Sweep::Nonlinearity(kinds)) => kinds
                .iter()
                .map(|&kind| {
                    let model = ModelSettings {
                        nonlinearity: kind,
                        ..self.model.clone()
                    };
                    (Some(kind.as_str().to_string()), model)
                })
                .collect(),
        };
        variants
            .into_iter()
            .map(|(label, model)| {
                let params = model
                    .build()
                    .expect("sweep members are validated when the config is parsed");
                Case {
                    label,
                    config: RunConfig {
                        model,
                        params,
                        sweep: None,
                        ..self.clone()
                    },
                }
            })
            .collect()
    }

    /// Renders the configuration as a document that parses back to itself.
    pub fn to_document(&self) -> String {
        let m = &self.model;
        let mut out = String::new();
        let mut put = |key: &str, value: String| {
            out.push_str(key);
            out.push_str(" = ");
            out.push_str(&value);
            out.push('\n');
        };
        put("alpha_sq", m.alpha_sq.to_string());
        put("alpha_phase", m.alpha_phase.to_string());
        put("lambda", m.lambda.to_string());
        put("p", m.p.to_string());
        put(
            "motion",
            match m.motion {
                Motion::Moving => "moving",
                Motion::Static => "static",
            }
            .to_string(),
        );
        put("nonlinearity", m.nonlinearity.to_string());
        put("eta", m.eta.to_string());
        put("nu", m.nu.to_string());
        put("n_max", m.n_max.to_string());
        if !m.custom_g.is_empty() {
            put("custom_g", join(&m.custom_g));
        }
        put("tau_start", self.tau_start.to_string());
        put("tau_end", self.tau_end.to_string());
        put("tau_step", self.tau_step.to_string());
        put("observables", join(&self.observables));
        match &self.sweep {
            Some(Sweep::P(ps)) => put("sweep_p", join(ps)),
            Some(Sweep::Nonlinearity(ks)) => put("sweep_nonlinearity", join(ks)),
            None => {}
        }
        put("output", self.output.display().to_string());
        put("plot", self.emit_plot.to_string());
        put("grid_points", self.grid_points.to_string());
        out
    }

    pub fn from_entries(entries: &[Entry]) -> Result<Self, ConfigError> {
        Draft::default().apply(entries)?.finish()
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Splits a document into entries without interpreting values.
pub fn parse_document(text: &str) -> Result<Vec<Entry>, ConfigError> {
    let mut entries: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let origin = Origin::Line(i + 1);
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::new(line, origin, "expected `key = value`"));
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::new(line, origin, "missing key before `=`"));
        }
        if let Some(first) = entries.iter().find(|e| e.key == key) {
            return Err(ConfigError::new(
                key,
                origin,
                format!("duplicate key, first set on {}", first.origin),
            ));
        }
        entries.push(Entry {
            key: key.to_string(),
            value: value.trim().to_string(),
            origin,
        });
    }
    Ok(entries)
}

/// Parses and validates a complete config document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    RunConfig::from_entries(&parse_document(text)?)
}

struct Draft {
    model: ModelSettings,
    tau_start: f64,
    tau_end: f64,
    tau_step: f64,
    observables: Vec<Observable>,
    sweep: Option<Sweep>,
    output: PathBuf,
    emit_plot: bool,
    grid_points: usize,
    origins: HashMap<&'static str, Origin>,
}

impl Default for Draft {
    fn default() -> Self {
        Self {
            model: ModelSettings::default(),
            tau_start: 0.0,
            tau_end: 30.0,
            tau_step: 0.01,
            observables: Observable::ALL.to_vec(),
            sweep: None,
            output: PathBuf::from("jcm.csv"),
            emit_plot: false,
            grid_points: jcm_core::squeezing::QuadratureGrid::DEFAULT_POINTS,
            origins: HashMap::new(),
        }
    }
}

fn parse_value<T: FromStr>(entry: &Entry, what: &str) -> Result<T, ConfigError> {
    entry.value.parse().map_err(|_| {
        ConfigError::new(
            &entry.key,
            entry.origin,
            format!("`{}` is not {what}", entry.value),
        )
    })
}

fn parse_float(entry: &Entry) -> Result<f64, ConfigError> {
    let v: f64 = parse_value(entry, "a number")?;
    if !v.is_finite() {
        return Err(ConfigError::new(
            &entry.key,
            entry.origin,
            "value must be finite",
        ));
    }
    Ok(v)
}

fn parse_list<T: FromStr>(entry: &Entry, what: &str) -> Result<Vec<T>, ConfigError>
where
    T::Err: fmt::Display,
{
    entry
        .value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<T>().map_err(|e| {
                ConfigError::new(
                    &entry.key,
                    entry.origin,
                    format!("`{s}` is not {what}: {e}"),
                )
            })
        })
        .collect()
}

fn parse_bool(entry: &Entry) -> Result<bool, ConfigError> {
    match entry.value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(ConfigError::new(
            &entry.key,
            entry.origin,
            format!("`{}` is not a boolean", entry.value),
        )),
    }
}

impl Draft {
    fn apply(mut self, entries: &[Entry]) -> Result<Self, ConfigError> {
        for entry in entries {
            let Some(&key) = KEYS.iter().find(|&&k| k == entry.key) else {
                return Err(ConfigError::new(&entry.key, entry.origin, "unknown key"));
            };
            let m = &mut self.model;
            match key {
                "alpha_sq" => m.alpha_sq = parse_float(entry)?,
                "alpha_phase" => m.alpha_phase = parse_float(entry)?,
                "lambda" => m.lambda = parse_float(entry)?,
                "p" => m.p = parse_value(entry, "a non-negative integer")?,
                "motion" => {
                    m.motion = match entry.value.as_str() {
                        "moving" => Motion::Moving,
                        "static" => Motion::Static,
                        other => {
                            return Err(ConfigError::new(
                                key,
                                entry.origin,
                                format!("`{other}` is not `moving` or `static`"),
                            ))
                        }
                    }
                }
                "nonlinearity" => {
                    m.nonlinearity = entry
                        .value
                        .parse()
                        .map_err(|e: String| ConfigError::new(key, entry.origin, e))?
                }
                "eta" => m.eta = parse_float(entry)?,
                "nu" => m.nu = parse_float(entry)?,
                "n_max" => m.n_max = parse_value(entry, "a non-negative integer")?,
                "custom_g" => m.custom_g = parse_list(entry, "a number")?,
                "tau_start" => self.tau_start = parse_float(entry)?,
                "tau_end" => self.tau_end = parse_float(entry)?,
                "tau_step" => self.tau_step = parse_float(entry)?,
                "observables" => {
                    let mut list: Vec<Observable> = parse_list(entry, "an observable")?;
                    list.sort();
                    list.dedup();
                    self.observables = list;
                }
                "sweep_p" => {
                    let ps: Vec<u32> = parse_list(entry, "a non-negative integer")?;
                    self.sweep = (!ps.is_empty()).then_some(Sweep::P(ps));
                }
                "sweep_nonlinearity" => {
                    let ks: Vec<NonlinearityKind> = parse_list(entry, "a nonlinearity")?;
                    self.sweep = (!ks.is_empty()).then_some(Sweep::Nonlinearity(ks));
                }
                "output" => {
                    if entry.value.is_empty() {
                        return Err(ConfigError::new(key, entry.origin, "output path is empty"));
                    }
                    self.output = PathBuf::from(&entry.value);
                }
                "plot" => self.emit_plot = parse_bool(entry)?,
                "grid_points" => self.grid_points = parse_value(entry, "a positive integer")?,
                _ => unreachable!("every entry of KEYS is handled"),
            }
            self.origins.insert(key, entry.origin);
        }
        Ok(self)
    }

    fn origin(&self, key: &str) -> Origin {
        self.origins.get(key).copied().unwrap_or(Origin::Default)
    }

    fn error(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError::new(key, self.origin(key), message)
    }

    /// Config key responsible for a model-construction error.
    fn model_key(&self, err: &jcm_core::Error) -> &'static str {
        use jcm_core::Error as E;
        match err {
            E::InvalidParameter { name, .. } => match *name {
                "lambda" => "lambda",
                "p" => "p",
                "nu" => "nu",
                "eta" => "eta",
                _ => "alpha_sq",
            },
            E::LaguerreDenominator { .. } => "eta",
            E::NonFiniteCoupling { .. } | E::CustomTableLength { .. } => "custom_g",
            E::Truncation { .. } => "n_max",
            _ => "nonlinearity",
        }
    }

    fn finish(self) -> Result<RunConfig, ConfigError> {
        if !(self.tau_step > 0.0) {
            return Err(self.error("tau_step", "must be positive"));
        }
        if !(self.tau_start >= 0.0) {
            return Err(self.error("tau_start", "must be non-negative"));
        }
        if !(self.tau_end > self.tau_start) {
            let key = match (self.origins.get("tau_end"), self.origins.get("tau_start")) {
                (None, Some(_)) => "tau_start",
                _ => "tau_end",
            };
            return Err(self.error(
                key,
                format!(
                    "tau_end ({}) must exceed tau_start ({})",
                    self.tau_end, self.tau_start
                ),
            ));
        }
        if self.grid_points < 3 || self.grid_points.is_multiple_of(2) {
            return Err(self.error("grid_points", "must be odd and at least 3"));
        }
        if self.origins.contains_key("sweep_p") && self.origins.contains_key("sweep_nonlinearity") {
            return Err(self.error(
                "sweep_nonlinearity",
                "cannot be combined with sweep_p; sweep one parameter per run",
            ));
        }
        let params = self
            .model
            .build()
            .map_err(|e| self.error(self.model_key(&e), e.to_string()))?;

        match &self.sweep {
            Some(Sweep::P(ps)) => {
                for &p in ps {
                    ModelSettings {
                        p,
                        ..self.model.clone()
                    }
                    .build()
                    .map_err(|e| self.error("sweep_p", format!("p = {p}: {e}")))?;
                }
            }
            Some(Sweep::Nonlinearity(kinds)) => {
                for &kind in kinds {
                    ModelSettings {
                        nonlinearity: kind,
                        ..self.model.clone()
                    }
                    .build()
                    .map_err(|e| self.error("sweep_nonlinearity", format!("{kind}: {e}")))?;
                }
            }
            None => {}
        }
        if let Some(Sweep::P(ps)) = &self.sweep {
            if let Some(p) = first_duplicate(ps) {
                return Err(self.error("sweep_p", format!("p = {p} listed twice")));
            }
        }
        if let Some(Sweep::Nonlinearity(ks)) = &self.sweep {
            if let Some(k) = first_duplicate(ks) {
                return Err(self.error("sweep_nonlinearity", format!("{k} listed twice")));
            }
        }

        Ok(RunConfig {
            model: self.model,
            params,
            tau_start: self.tau_start,
            tau_end: self.tau_end,
            tau_step: self.tau_step,
            observables: self.observables,
            sweep: self.sweep,
            output: self.output,
            emit_plot: self.emit_plot,
            grid_points: self.grid_points,
        })
    }
}

fn first_duplicate<T: PartialEq + Copy>(items: &[T]) -> Option<T> {
    items
        .iter()
        .enumerate()
        .find(|(i, x)| items[..*i].contains(x))
        .map(|(_, &x)| x)
}

impl Default for RunConfig {
    fn default() -> Self {
        Draft::default()
            .finish()
            .expect("built-in defaults are valid")
    }
}
