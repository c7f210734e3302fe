use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{RegisterLayout, StateVector};
use crate::protocol::prover::{choi_pairs_state, MAX_PAIRS, MIN_PAIRS};
use crate::protocol::{make_scrambled_toy_verifier, make_toy_verifier, ProverStrategy, StrategyKind, ToyVerifier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Completeness,
    Soundness,
    Lemmas,
    SwapBench,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Completeness => "completeness",
            Self::Soundness => "soundness",
            Self::Lemmas => "lemmas",
            Self::SwapBench => "swap-bench",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    #[default]
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifierConfig {
    pub p: f64,
    #[serde(default = "one")]
    pub p_qubits: usize,
    #[serde(default = "one")]
    pub a_qubits: usize,
    /// Compose `V` with a Haar-random unitary on `P` drawn from this seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scramble_seed: Option<u64>,
}

fn one() -> usize {
    1
}

impl VerifierConfig {
    pub fn build(&self) -> Result<ToyVerifier> {
        match self.scramble_seed {
            None => make_toy_verifier(self.p, self.p_qubits, self.a_qubits),
            Some(seed) => make_scrambled_toy_verifier(self.p, self.p_qubits, self.a_qubits, seed),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StrategyConfig {
    Honest,
    ChoiProduct {
        q: f64,
    },
    IdleEpr,
    LocalUnitaries {
        seed: u64,
    },
    /// A product of Choi states with a different `q` per pair.
    AsymmetricChoi {
        qs: Vec<f64>,
    },
}

// serde's `flatten` ignores `deny_unknown_fields`, so the witness is split
// off by hand before the tagged enum sees the remaining keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "serde_json::Value")]
pub struct StrategyDescriptor {
    #[serde(flatten)]
    pub kind: StrategyConfig,
    /// Amplitudes `[re, im]` of a state on `P` replacing the default witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<[f64; 2]>>,
}

impl TryFrom<serde_json::Value> for StrategyDescriptor {
    type Error = String;

    fn try_from(mut value: serde_json::Value) -> std::result::Result<Self, String> {
        let obj = value.as_object_mut().ok_or("strategy must be an object")?;
        let witness = match obj.remove("witness") {
            None | Some(serde_json::Value::Null) => None,
            Some(w) => Some(serde_json::from_value(w).map_err(|e| format!("witness: {e}"))?),
        };
        // internally tagged unit variants accept stray keys
        let allowed: &[&str] = match obj.get("kind").and_then(|k| k.as_str()) {
            Some("choi_product") => &["kind", "q"],
            Some("local_unitaries") => &["kind", "seed"],
            Some("asymmetric_choi") => &["kind", "qs"],
            _ => &["kind"],
        };
        if let Some(k) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(format!("unknown strategy field `{k}`"));
        }
        let kind = serde_json::from_value(value).map_err(|e| e.to_string())?;
        Ok(Self { kind, witness })
    }
}

impl Default for StrategyDescriptor {
    fn default() -> Self {
        Self { kind: StrategyConfig::Honest, witness: None }
    }
}

impl StrategyDescriptor {
    pub fn build(&self, v: &ToyVerifier, l: usize) -> Result<ProverStrategy> {
        let witness = match &self.witness {
            None => None,
            Some(amps) => {
                let amps = amps.iter().map(|[re, im]| num_complex::Complex64::new(*re, *im)).collect();
                Some(StateVector::normalized(v.p_layout(), amps)?)
            }
        };
        let kind = match &self.kind {
            StrategyConfig::Honest => StrategyKind::Honest,
            StrategyConfig::ChoiProduct { q } => StrategyKind::ChoiProduct(*q),
            StrategyConfig::IdleEpr => StrategyKind::IdleEpr,
            StrategyConfig::LocalUnitaries { seed } => StrategyKind::LocalUnitaries(*seed),
            StrategyConfig::AsymmetricChoi { qs } => {
                if qs.len() != l {
                    return Err(Error::Config(format!("asymmetric_choi needs {l} values of q, got {}", qs.len())));
                }
                let w = match &witness {
                    Some(w) => w.clone(),
                    None => v.witness()?.1,
                };
                StrategyKind::CustomState(choi_pairs_state(&w, qs)?)
            }
        };
        Ok(ProverStrategy { kind, witness_override: witness })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            StrategyConfig::Honest => "honest",
            StrategyConfig::ChoiProduct { .. } => "choi_product",
            StrategyConfig::IdleEpr => "idle_epr",
            StrategyConfig::LocalUnitaries { .. } => "local_unitaries",
            StrategyConfig::AsymmetricChoi { .. } => "asymmetric_choi",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_tol")]
    pub probability: f64,
    #[serde(default = "default_tol")]
    pub margin: f64,
    #[serde(default = "default_sigmas")]
    pub sigmas: f64,
    #[serde(default = "default_swap_tol")]
    pub swap: f64,
}

fn default_tol() -> f64 {
    1e-9
}

fn default_sigmas() -> f64 {
    5.0
}

fn default_swap_tol() -> f64 {
    1e-12
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { probability: default_tol(), margin: default_tol(), sigmas: default_sigmas(), swap: default_swap_tol() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub verifier: VerifierConfig,
    #[serde(default = "default_l")]
    pub l: usize,
    #[serde(default)]
    pub strategy: StrategyDescriptor,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: RunMode,
    /// Random instances per check in the lemma suite and SWAP benchmark.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_l() -> usize {
    2
}

fn default_trials() -> usize {
    1000
}

fn default_samples() -> usize {
    1000
}

impl ExperimentConfig {
    /// Canonical configuration for each experiment type.
    pub fn canonical(kind: ExperimentKind) -> Self {
        let (p, strategy) = match kind {
            ExperimentKind::Completeness => (0.75, StrategyConfig::Honest),
            ExperimentKind::Soundness => (1e-3, StrategyConfig::IdleEpr),
            ExperimentKind::Lemmas | ExperimentKind::SwapBench => (0.75, StrategyConfig::Honest),
        };
        Self {
            experiment: kind,
            verifier: VerifierConfig { p, p_qubits: 1, a_qubits: 1, scramble_seed: None },
            l: default_l(),
            strategy: StrategyDescriptor { kind: strategy, witness: None },
            trials: default_trials(),
            seed: 0,
            mode: RunMode::Exact,
            samples: default_samples(),
            tolerances: Tolerances::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let v = &self.verifier;
        if !(v.p > 0.0 && v.p <= 1.0) {
            return Err(Error::Config(format!("verifier.p must lie in (0, 1], got {}", v.p)));
        }
        if v.p_qubits == 0 || v.a_qubits == 0 || v.p_qubits + v.a_qubits > 8 {
            return Err(Error::Config("verifier needs 1 ≤ p_qubits, a_qubits and p_qubits + a_qubits ≤ 8".into()));
        }
        if !(MIN_PAIRS..=MAX_PAIRS).contains(&self.l) {
            return Err(Error::Config(format!("l must lie in {MIN_PAIRS}..={MAX_PAIRS}, got {}", self.l)));
        }
        if self.mode == RunMode::Sampled && self.trials == 0 {
            return Err(Error::Config("sampled mode needs trials ≥ 1".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be ≥ 1".into()));
        }
        match &self.strategy.kind {
            StrategyConfig::ChoiProduct { q } if !(0.0..=1.0).contains(q) => {
                return Err(Error::Config(format!("choi_product q must lie in [0, 1], got {q}")));
            }
            StrategyConfig::AsymmetricChoi { qs } if qs.len() != self.l || qs.iter().any(|q| !(0.0..=1.0).contains(q)) => {
                return Err(Error::Config(format!("asymmetric_choi needs {} values in [0, 1]", self.l)));
            }
            _ => {}
        }
        if let Some(w) = &self.strategy.witness {
            if w.len() != 1 << v.p_qubits {
                return Err(Error::Config(format!("witness needs {} amplitudes", 1usize << v.p_qubits)));
            }
        }
        Ok(())
    }

    pub fn p_layout(&self) -> Result<RegisterLayout> {
        RegisterLayout::new([("P", self.verifier.p_qubits)])
    }
}
