//! Run configuration: TOML file with one section per scenario, overridable
//! from the command line. Unknown keys are rejected.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Qubit,
    Ctqw,
    Composite,
    Sweep,
    Nosignal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum FlmReferenceChoice {
    #[default]
    Initial,
    Equilibrium,
}

impl From<FlmReferenceChoice> for sea_core::sea::FlmReference {
    fn from(c: FlmReferenceChoice) -> Self {
        match c {
            FlmReferenceChoice::Initial => sea_core::sea::FlmReference::Initial,
            FlmReferenceChoice::Equilibrium => sea_core::sea::FlmReference::Equilibrium,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MethodChoice {
    Num,
    Flm,
    #[default]
    Both,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scenario: Scenario,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub qubit: Option<QubitConfig>,
    #[serde(default)]
    pub ctqw: Option<CtqwConfig>,
    #[serde(default)]
    pub composite: Option<CompositeConfig>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub nosignal: Option<NosignalConfig>,
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitConfig {
    pub epsilon: f64,
    pub tau: Vec<f64>,
    #[serde(default = "default_omega")]
    pub omega: f64,
    pub t_max: f64,
    #[serde(default = "default_points")]
    pub t_points: usize,
    #[serde(default)]
    pub flm_reference: FlmReferenceChoice,
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default = "default_rk_tol")]
    pub rk_tol: f64,
}

fn default_omega() -> f64 {
    5.0
}

fn default_points() -> usize {
    101
}

fn default_rk_tol() -> f64 {
    1e-9
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CtqwConfig {
    pub n: usize,
    pub epsilon: f64,
    pub tau: Vec<f64>,
    #[serde(default = "default_mu")]
    pub mu: f64,
    pub t: f64,
    #[serde(default)]
    pub start_node: Option<usize>,
    #[serde(default)]
    pub flm_reference: FlmReferenceChoice,
    #[serde(default)]
    pub method: MethodChoice,
    #[serde(default)]
    pub renormalize_flm: bool,
    #[serde(default = "default_rk_tol")]
    pub rk_tol: f64,
}

fn default_mu() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeConfig {
    /// "bell" with a Bell vector, or "separable" with (mu, r_a).
    pub state: CompositeStateChoice,
    #[serde(default)]
    pub bell: Option<[f64; 3]>,
    #[serde(default)]
    pub mu: Option<f64>,
    #[serde(default)]
    pub r_a: Option<[f64; 3]>,
    #[serde(default = "default_omega")]
    pub omega_a: f64,
    #[serde(default = "default_omega_b")]
    pub omega_b: f64,
    #[serde(default = "default_z")]
    pub h_a: [f64; 3],
    #[serde(default = "default_z")]
    pub h_b: [f64; 3],
    pub tau_a: f64,
    pub tau_b: f64,
    pub t_max: f64,
    #[serde(default = "default_points")]
    pub t_points: usize,
    #[serde(default = "default_rk_tol")]
    pub rk_tol: f64,
}

fn default_omega_b() -> f64 {
    3.0
}

fn default_z() -> [f64; 3] {
    [0.0, 0.0, 1.0]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositeStateChoice {
    Bell,
    Separable,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n: usize,
    pub tau: Vec<f64>,
    pub epsilon: Vec<f64>,
    pub times: Vec<f64>,
    #[serde(default = "default_mu")]
    pub mu: f64,
    #[serde(default = "default_sweep_tol")]
    pub rk_tol: f64,
}

fn default_sweep_tol() -> f64 {
    1e-8
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NosignalConfig {
    pub state: NosignalStateChoice,
    #[serde(default)]
    pub bell: Option<[f64; 3]>,
    #[serde(default)]
    pub mu: Option<f64>,
    #[serde(default)]
    pub r_a: Option<[f64; 3]>,
    pub trials: usize,
    #[serde(default = "default_omega")]
    pub omega_a: f64,
    #[serde(default = "default_omega_b")]
    pub omega_b: f64,
    #[serde(default = "default_z")]
    pub h_a: [f64; 3],
    #[serde(default = "default_z")]
    pub h_b: [f64; 3],
    #[serde(default = "default_tau")]
    pub tau_a: f64,
    #[serde(default = "default_tau")]
    pub tau_b: f64,
}

fn default_tau() -> f64 {
    1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NosignalStateChoice {
    BellDiagonal,
    SeparableMixed,
    RandomCorrelated,
}

/// Parse TOML, apply `--set key=value` overrides and the seed precedence
/// (flag > env > config), then validate every documented constraint.
pub fn parse_and_validate(
    text: &str,
    overrides: &[(String, String)],
    seed_override: Option<u64>,
) -> Result<RunConfig, Vec<String>> {
    let mut value: toml::Value =
        toml::from_str(text).map_err(|e| vec![format!("TOML parse error: {e}")])?;
    for (key, raw) in overrides {
        apply_override(&mut value, key, raw).map_err(|e| vec![e])?;
    }
    let mut config: RunConfig =
        value.try_into().map_err(|e| vec![format!("config error: {e}")])?;
    if let Some(seed) = seed_override {
        config.seed = seed;
    } else if let Ok(env_seed) = std::env::var("SEA_DYN_SEED") {
        config.seed = env_seed
            .parse()
            .map_err(|_| vec![format!("SEA_DYN_SEED is not an integer: {env_seed}")])?;
    }
    let violations = validate(&config);
    if violations.is_empty() {
        Ok(config)
    } else {
        Err(violations)
    }
}

fn apply_override(value: &mut toml::Value, key: &str, raw: &str) -> Result<(), String> {
    // reuse the TOML grammar for the value literal
    let parsed: toml::Value = toml::from_str(&format!("v = {raw}"))
        .map(|t: toml::Value| t["v"].clone())
        .or_else(|_| toml::from_str(&format!("v = \"{raw}\"")).map(|t: toml::Value| t["v"].clone()))
        .map_err(|e| format!("cannot parse override value {raw}: {e}"))?;
    let mut cursor = value;
    let parts: Vec<&str> = key.split('.').collect();
    for (i, part) in parts.iter().enumerate() {
        if i + 1 == parts.len() {
            match cursor {
                toml::Value::Table(t) => {
                    t.insert((*part).to_string(), parsed);
                    return Ok(());
                }
                _ => return Err(format!("override path {key} does not address a table")),
            }
        } else {
            cursor = match cursor {
                toml::Value::Table(t) => t
                    .entry((*part).to_string())
                    .or_insert(toml::Value::Table(Default::default())),
                _ => return Err(format!("override path {key} does not address a table")),
            };
        }
    }
    Ok(())
}

/// Every violated constraint, one message each; empty means valid.
pub fn validate(config: &RunConfig) -> Vec<String> {
    let mut errors = Vec::new();
    fn check_eps(eps: f64, where_: &str, errors: &mut Vec<String>) {
        if !(0.0..=1.0).contains(&eps) {
            errors.push(format!("{where_}: epsilon out of [0,1]"));
        }
    }
    match config.scenario {
        Scenario::Qubit => match &config.qubit {
            None => errors.push("missing [qubit] section".into()),
            Some(q) => {
                check_eps(q.epsilon, "qubit", &mut errors);
                if q.epsilon >= 1.0 {
                    errors.push("qubit: epsilon must be below 1 (pure states do not relax)".into());
                }
                check_taus(&q.tau, "qubit", &mut errors);
                if !(q.t_max > 0.0) {
                    errors.push("qubit: t_max must be positive".into());
                }
                if q.t_points < 2 {
                    errors.push("qubit: t_points must be at least 2".into());
                }
                if !(q.rk_tol > 0.0) {
                    errors.push("qubit: rk_tol must be positive".into());
                }
            }
        },
        Scenario::Ctqw => match &config.ctqw {
            None => errors.push("missing [ctqw] section".into()),
            Some(c) => {
                if c.n < 3 {
                    errors.push("ctqw: n must be at least 3".into());
                }
                check_eps(c.epsilon, "ctqw", &mut errors);
                check_taus(&c.tau, "ctqw", &mut errors);
                if !(c.t > 0.0) {
                    errors.push("ctqw: t must be positive".into());
                }
                if let Some(s) = c.start_node {
                    if s >= c.n {
                        errors.push("ctqw: start_node out of range".into());
                    }
                }
                if !(c.mu > 0.0) {
                    errors.push("ctqw: mu must be positive".into());
                }
            }
        },
        Scenario::Composite => match &config.composite {
            None => errors.push("missing [composite] section".into()),
            Some(c) => {
                match c.state {
                    CompositeStateChoice::Bell => {
                        if c.bell.is_none() {
                            errors.push("composite: state=bell needs a bell vector".into());
                        }
                    }
                    CompositeStateChoice::Separable => {
                        match c.mu {
                            Some(mu) if (0.0..=1.0).contains(&mu) => {}
                            Some(_) => errors.push("composite: mu out of [0,1]".into()),
                            None => errors.push("composite: state=separable needs mu".into()),
                        }
                        if c.r_a.is_none() {
                            errors.push("composite: state=separable needs r_a".into());
                        }
                    }
                }
                for (tau, name) in [(c.tau_a, "tau_a"), (c.tau_b, "tau_b")] {
                    if !(tau > 0.0) {
                        errors.push(format!("composite: {name} must be positive"));
                    }
                }
                if !(c.t_max > 0.0) {
                    errors.push("composite: t_max must be positive".into());
                }
            }
        },
        Scenario::Sweep => match &config.sweep {
            None => errors.push("missing [sweep] section".into()),
            Some(s) => {
                if s.n < 3 {
                    errors.push("sweep: n must be at least 3".into());
                }
                if s.tau.is_empty() || s.epsilon.is_empty() || s.times.is_empty() {
                    errors.push("sweep: tau, epsilon, and times must be nonempty".into());
                }
                check_taus(&s.tau, "sweep", &mut errors);
                for &e in &s.epsilon {
                    if !(0.0..=1.0).contains(&e) {
                        errors.push("sweep: epsilon out of [0,1]".into());
                        break;
                    }
                }
                if s.times.windows(2).any(|w| w[1] <= w[0]) {
                    errors.push("sweep: times must be strictly increasing".into());
                }
            }
        },
        Scenario::Nosignal => match &config.nosignal {
            None => errors.push("missing [nosignal] section".into()),
            Some(n) => {
                if n.trials == 0 {
                    errors.push("nosignal: trials must be at least 1".into());
                }
                match n.state {
                    NosignalStateChoice::BellDiagonal => {
                        if n.bell.is_none() {
                            errors.push("nosignal: state=bell-diagonal needs a bell vector".into());
                        }
                    }
                    NosignalStateChoice::SeparableMixed => {
                        if n.mu.is_none() || n.r_a.is_none() {
                            errors.push("nosignal: state=separable-mixed needs mu and r_a".into());
                        }
                    }
                    NosignalStateChoice::RandomCorrelated => {}
                }
                for (tau, name) in [(n.tau_a, "tau_a"), (n.tau_b, "tau_b")] {
                    if !(tau > 0.0) {
                        errors.push(format!("nosignal: {name} must be positive"));
                    }
                }
            }
        },
    }
    errors
}

fn check_taus(taus: &[f64], where_: &str, errors: &mut Vec<String>) {
    if taus.is_empty() {
        errors.push(format!("{where_}: tau list must be nonempty"));
    }
    if taus.iter().any(|&t| !(t > 0.0)) {
        errors.push(format!("{where_}: tau must be positive"));
    }
}
