//! Run configuration: a single JSON document plus per-field command-line
//! overrides.
//!
//! Complex numbers appear as `[re, im]` pairs. Generic coefficients are
//! listed in the order c1..c5, d1..d4. A generic state whose norm is off by
//! less than 1e-6 is renormalized with a warning; anything further off is
//! rejected.

use doublejc::model::{make_bell_phi, make_bell_psi, GenericCoefficients};
use doublejc::{Coefficients64, ModelParams64, SubsystemParams64, C64};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialState {
    Phi {
        alpha: f64,
        #[serde(default)]
        beta: f64,
    },
    Psi {
        alpha: f64,
        #[serde(default)]
        beta: f64,
    },
    Generic {
        /// Nine complex amplitudes as [re, im] pairs, order c1..c5, d1..d4.
        coefficients: [[f64; 2]; 9],
    },
}

impl Default for InitialState {
    fn default() -> Self {
        InitialState::Phi {
            alpha: std::f64::consts::FRAC_PI_4,
            beta: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsystemConfig {
    pub nu: f64,
    pub omega: f64,
    pub g: f64,
}

impl Default for SubsystemConfig {
    fn default() -> Self {
        // Resonant pair with unit coupling.
        Self {
            nu: 1.0,
            omega: 1.0,
            g: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    #[serde(default)]
    pub sub_a: SubsystemConfig,
    #[serde(default)]
    pub sub_b: SubsystemConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputGroup {
    /// The seven wedge entanglements.
    Entanglements,
    /// The six pairwise concurrences.
    Concurrences,
    /// The scaled conserved quantity 4 E_{Aa-Bb}.
    Invariant,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub initial_state: InitialState,
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
    #[serde(default = "default_n_samples")]
    pub n_samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Column groups to emit; all of them when absent.
    #[serde(default)]
    pub outputs: Option<Vec<OutputGroup>>,
}

fn default_t_max() -> f64 {
    std::f64::consts::PI
}

fn default_n_samples() -> usize {
    201
}

fn default_seed() -> u64 {
    42
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            initial_state: InitialState::default(),
            params: ParamsConfig::default(),
            t_max: default_t_max(),
            n_samples: default_n_samples(),
            seed: default_seed(),
            outputs: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| format!("invalid config: {e}"))
    }

    /// Groups to emit, in the fixed column order.
    pub fn output_groups(&self) -> Vec<OutputGroup> {
        match &self.outputs {
            None => vec![
                OutputGroup::Entanglements,
                OutputGroup::Concurrences,
                OutputGroup::Invariant,
            ],
            Some(groups) => {
                let mut ordered = Vec::new();
                for g in [
                    OutputGroup::Entanglements,
                    OutputGroup::Concurrences,
                    OutputGroup::Invariant,
                ] {
                    if groups.contains(&g) {
                        ordered.push(g);
                    }
                }
                ordered
            }
        }
    }

    /// Validate and convert to the core types.
    pub fn resolve(&self) -> Result<(Coefficients64, ModelParams64), String> {
        if self.n_samples < 2 {
            return Err(format!("n_samples must be >= 2, got {}", self.n_samples));
        }
        if self.t_max <= 0.0 || self.t_max.is_nan() {
            return Err(format!("t_max must be positive, got {}", self.t_max));
        }
        let params = self.resolve_params()?;
        let coeffs = match &self.initial_state {
            InitialState::Phi { alpha, beta } => {
                make_bell_phi(*alpha, *beta).map_err(|e| format!("initial state: {e}"))?
            }
            InitialState::Psi { alpha, beta } => {
                make_bell_psi(*alpha, *beta).map_err(|e| format!("initial state: {e}"))?
            }
            InitialState::Generic { coefficients } => {
                let mut amps: Vec<C64> =
                    coefficients.iter().map(|p| C64::new(p[0], p[1])).collect();
                let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if (norm - 1.0).abs() >= 1e-6 {
                    return Err(format!(
                        "generic coefficients must be normalized: |norm - 1| = {:e}",
                        (norm - 1.0).abs()
                    ));
                }
                if (norm - 1.0).abs() > f64::EPSILON * 16.0 {
                    eprintln!(
                        "warning: renormalizing generic coefficients (|norm - 1| = {:e})",
                        (norm - 1.0).abs()
                    );
                }
                for z in amps.iter_mut() {
                    *z /= norm;
                }
                GenericCoefficients::new(
                    [amps[0], amps[1], amps[2], amps[3], amps[4]],
                    [amps[5], amps[6], amps[7], amps[8]],
                )
                .map_err(|e| format!("initial state: {e}"))?
            }
        };
        Ok((coeffs, params))
    }

    pub fn resolve_params(&self) -> Result<ModelParams64, String> {
        let sub = |c: &SubsystemConfig, which: &str| {
            SubsystemParams64::new(c.nu, c.omega, c.g)
                .map_err(|e| format!("params.{which}: {e}"))
        };
        Ok(ModelParams64::new(
            sub(&self.params.sub_a, "sub_a")?,
            sub(&self.params.sub_b, "sub_b")?,
        ))
    }

    /// The phi-family mixing angle when the configured state has one.
    pub fn phi_alpha(&self) -> Option<f64> {
        match &self.initial_state {
            InitialState::Phi { alpha, .. } => Some(*alpha),
            _ => None,
        }
    }

    /// Uniform sample grid over [0, t_max].
    pub fn time_grid(&self) -> Vec<f64> {
        (0..self.n_samples)
            .map(|k| self.t_max * k as f64 / (self.n_samples - 1) as f64)
            .collect()
    }
}

/// Per-field overrides shared by the trajectory commands.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ConfigOverrides {
    /// Initial state family (phi or psi); keeps the configured angles unless
    /// --alpha/--beta are also given.
    #[arg(long, value_parser = ["phi", "psi"])]
    pub state: Option<String>,

    /// Mixing angle alpha in radians.
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Relative phase beta in radians.
    #[arg(long)]
    pub beta: Option<f64>,

    /// Coupling constant of subsystem Aa.
    #[arg(long = "g-a")]
    pub g_a: Option<f64>,

    /// Coupling constant of subsystem Bb.
    #[arg(long = "g-b")]
    pub g_b: Option<f64>,

    /// Field frequency of subsystem Aa.
    #[arg(long = "nu-a")]
    pub nu_a: Option<f64>,

    /// Field frequency of subsystem Bb.
    #[arg(long = "nu-b")]
    pub nu_b: Option<f64>,

    /// Detuning of subsystem Aa; sets omega = nu + delta.
    #[arg(long = "delta-a")]
    pub delta_a: Option<f64>,

    /// Detuning of subsystem Bb; sets omega = nu + delta.
    #[arg(long = "delta-b")]
    pub delta_b: Option<f64>,

    /// Final sample time.
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,

    /// Number of sample times (>= 2), endpoints included.
    #[arg(long = "n-samples")]
    pub n_samples: Option<usize>,

    /// Seed for randomized checks.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl ConfigOverrides {
    pub fn apply(&self, cfg: &mut RunConfig) -> Result<(), String> {
        if let Some(state) = &self.state {
            let (alpha, beta) = match &cfg.initial_state {
                InitialState::Phi { alpha, beta } | InitialState::Psi { alpha, beta } => {
                    (*alpha, *beta)
                }
                InitialState::Generic { .. } => (std::f64::consts::FRAC_PI_4, 0.0),
            };
            cfg.initial_state = match state.as_str() {
                "phi" => InitialState::Phi { alpha, beta },
                "psi" => InitialState::Psi { alpha, beta },
                other => return Err(format!("unknown state family {other}")),
            };
        }
        if self.alpha.is_some() || self.beta.is_some() {
            match &mut cfg.initial_state {
                InitialState::Phi { alpha, beta } | InitialState::Psi { alpha, beta } => {
                    if let Some(a) = self.alpha {
                        *alpha = a;
                    }
                    if let Some(b) = self.beta {
                        *beta = b;
                    }
                }
                InitialState::Generic { .. } => {
                    return Err("--alpha/--beta do not apply to a generic state".into());
                }
            }
        }
        if let Some(g) = self.g_a {
            cfg.params.sub_a.g = g;
        }
        if let Some(g) = self.g_b {
            cfg.params.sub_b.g = g;
        }
        if let Some(nu) = self.nu_a {
            let delta = cfg.params.sub_a.omega - cfg.params.sub_a.nu;
            cfg.params.sub_a.nu = nu;
            cfg.params.sub_a.omega = nu + delta;
        }
        if let Some(nu) = self.nu_b {
            let delta = cfg.params.sub_b.omega - cfg.params.sub_b.nu;
            cfg.params.sub_b.nu = nu;
            cfg.params.sub_b.omega = nu + delta;
        }
        if let Some(d) = self.delta_a {
            cfg.params.sub_a.omega = cfg.params.sub_a.nu + d;
        }
        if let Some(d) = self.delta_b {
            cfg.params.sub_b.omega = cfg.params.sub_b.nu + d;
        }
        if let Some(t) = self.t_max {
            cfg.t_max = t;
        }
        if let Some(n) = self.n_samples {
            cfg.n_samples = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_resolves() {
        let cfg = RunConfig::default();
        let (coeffs, params) = cfg.resolve().unwrap();
        assert!((coeffs.norm_sqr().sqrt() - 1.0).abs() < 1e-12);
        assert_eq!(params.sub_a.delta(), 0.0);
        assert_eq!(cfg.time_grid().len(), 201);
        assert_eq!(cfg.time_grid()[0], 0.0);
    }

    #[test]
    fn generic_state_parses_from_json() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let text = format!(
            r#"{{"initial_state": {{"kind": "generic", "coefficients":
                [[{r}, 0], [0, 0], [0, 0], [0, 0], [0, {r}], [0, 0], [0, 0], [0, 0], [0, 0]]}},
                "t_max": 1.0, "n_samples": 2}}"#
        );
        let cfg: RunConfig = serde_json::from_str(&text).unwrap();
        let (coeffs, _) = cfg.resolve().unwrap();
        assert!((coeffs.c1.re - r).abs() < 1e-12);
        assert!((coeffs.c5.im - r).abs() < 1e-12);
    }

    #[test]
    fn badly_normalized_generic_rejected() {
        let text = r#"{"initial_state": {"kind": "generic", "coefficients":
            [[0.9, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0], [0, 0]]}}"#;
        let cfg: RunConfig = serde_json::from_str(text).unwrap();
        assert!(cfg.resolve().is_err());
    }

    #[test]
    fn slightly_off_generic_renormalized() {
        let r = std::f64::consts::FRAC_1_SQRT_2 * (1.0 + 4e-7);
        let text = format!(
            r#"{{"initial_state": {{"kind": "generic", "coefficients":
                [[{r}, 0], [0, 0], [0, 0], [0, 0], [{r}, 0], [0, 0], [0, 0], [0, 0], [0, 0]]}}}}"#
        );
        let cfg: RunConfig = serde_json::from_str(&text).unwrap();
        let (coeffs, _) = cfg.resolve().unwrap();
        assert!((coeffs.norm_sqr().sqrt() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn overrides_apply_in_order() {
        let mut cfg = RunConfig::default();
        let ov = ConfigOverrides {
            state: Some("psi".into()),
            alpha: Some(0.5),
            g_b: Some(2.0),
            nu_a: Some(1.5),
            delta_a: Some(0.3),
            n_samples: Some(11),
            ..Default::default()
        };
        ov.apply(&mut cfg).unwrap();
        assert!(matches!(
            cfg.initial_state,
            InitialState::Psi { alpha, .. } if alpha == 0.5
        ));
        assert_eq!(cfg.params.sub_b.g, 2.0);
        assert_eq!(cfg.params.sub_a.nu, 1.5);
        assert!((cfg.params.sub_a.omega - 1.8).abs() < 1e-15);
        assert_eq!(cfg.n_samples, 11);
    }

    #[test]
    fn bad_sampling_rejected() {
        let too_few = RunConfig {
            n_samples: 1,
            ..Default::default()
        };
        assert!(too_few.resolve().is_err());
        let no_span = RunConfig {
            t_max: 0.0,
            ..Default::default()
        };
        assert!(no_span.resolve().is_err());
    }

    #[test]
    fn output_groups_keep_fixed_order() {
        let cfg = RunConfig {
            outputs: Some(vec![OutputGroup::Invariant, OutputGroup::Entanglements]),
            ..Default::default()
        };
        assert_eq!(
            cfg.output_groups(),
            vec![OutputGroup::Entanglements, OutputGroup::Invariant]
        );
    }
}
