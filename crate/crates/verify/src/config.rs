//! Experiment configuration.

use std::path::Path;

use gps_core::{MirroredBallDomain, Signature};
use serde::Deserialize;

use crate::error::{Result, VerifyError};

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub center_p: Vec<f64>,
    pub r0: f64,
    pub rho: f64,
}

/// Every knob of a verification run. Missing keys take the defaults.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub p: usize,
    pub q: usize,
    pub domain: DomainConfig,
    pub levels: Vec<usize>,
    /// Step for pointwise finite differences.
    pub fd_step: f64,
    /// Excision radius in units of the boundary mesh spacing.
    pub pv_factor: f64,
    pub seed: u64,
    pub suites: Vec<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            p: 1,
            q: 2,
            domain: DomainConfig { center_p: vec![0.0, 0.0], r0: 2.0, rho: 1.0 },
            levels: vec![2, 3, 4, 5],
            fd_step: 1e-5,
            pv_factor: 2.0,
            seed: 42,
            suites: vec!["all".into()],
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| VerifyError::Io { context: format!("reading {}", path.display()), source })?;
        Self::from_toml(&text)
    }

    /// Checks every invariant, naming the offending field.
    pub fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(VerifyError::config("q", "q >= 2 is required"));
        }
        if self.p < 1 {
            return Err(VerifyError::config("p", "p >= 1 is required"));
        }
        if Signature::new(self.p, self.q).is_err() {
            return Err(VerifyError::config("p", "p + q must not exceed 12"));
        }
        let d = &self.domain;
        if d.center_p.len() != self.p + 1 {
            return Err(VerifyError::config("domain.center_p", format!("expected {} entries (p + 1)", self.p + 1)));
        }
        if d.center_p.iter().any(|c| !c.is_finite()) {
            return Err(VerifyError::config("domain.center_p", "entries must be finite"));
        }
        if !(d.rho > 0.0 && d.rho.is_finite()) {
            return Err(VerifyError::config("domain.rho", "rho > 0 is required"));
        }
        if !(d.r0 > d.rho && d.r0.is_finite()) {
            return Err(VerifyError::config(
                "domain.r0",
                format!("r0 > rho is required to keep the domain off the real axis (r0 = {}, rho = {})", d.r0, d.rho),
            ));
        }
        if self.levels.is_empty() {
            return Err(VerifyError::config("levels", "at least one level is required"));
        }
        if self.levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(VerifyError::config("levels", "levels must be strictly ascending"));
        }
        if self.levels[0] < 1 || *self.levels.last().unwrap() > 8 {
            return Err(VerifyError::config("levels", "levels must lie in 1..=8"));
        }
        if !(self.fd_step > 0.0 && self.fd_step < 0.1) {
            return Err(VerifyError::config("fd_step", "fd_step must lie in (0, 0.1)"));
        }
        if !(self.pv_factor >= 2.0 && self.pv_factor.is_finite()) {
            return Err(VerifyError::config("pv_factor", "pv_factor >= 2 is required (epsilon at least twice the mesh)"));
        }
        for (i, name) in self.suites.iter().enumerate() {
            if !crate::suites::SUITES.contains(&name.as_str()) && name != "all" {
                return Err(VerifyError::config(format!("suites[{i}]"), format!("unknown suite `{name}`")));
            }
        }
        Ok(())
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.p, self.q).expect("validated")
    }

    pub fn mirrored_domain(&self) -> MirroredBallDomain {
        MirroredBallDomain::new(&self.domain.center_p, self.domain.r0, self.domain.rho).expect("validated")
    }

    pub fn finest(&self) -> usize {
        *self.levels.last().expect("validated")
    }
}
