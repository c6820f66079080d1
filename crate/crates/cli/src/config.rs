//! Benchmark configuration with the protocol defaults, serialised as a JSON
//! sidecar next to every output so a run can be reproduced from its files.

use scalesmith::grid2d::Detector;
use scalesmith::kernels1d::Method;
use serde::{Deserialize, Serialize};

/// Scale-selection sweep configuration. Defaults: 50 log-spaced reference
/// scales in [1/3, 3], an 80-level search grid in [0.1, 5], all schemes and
/// all detectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub detectors: Vec<Detector>,
    pub sigma0_min: f64,
    pub sigma0_max: f64,
    pub sigma0_steps: usize,
    pub grid_min: f64,
    pub grid_max: f64,
    pub grid_levels: usize,
    /// Worker threads; 0 picks the number of available cores.
    pub workers: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            methods: Method::ALL.to_vec(),
            detectors: Detector::ALL.to_vec(),
            sigma0_min: 1.0 / 3.0,
            sigma0_max: 3.0,
            sigma0_steps: 50,
            grid_min: 0.1,
            grid_max: 5.0,
            grid_levels: 80,
            workers: 0,
        }
    }
}

impl BenchConfig {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.methods.is_empty() || self.detectors.is_empty() {
            anyhow::bail!("config needs at least one method and one detector");
        }
        if !self.sigma0_min.is_finite()
            || self.sigma0_min <= 0.0
            || self.sigma0_max < self.sigma0_min
        {
            anyhow::bail!("invalid sigma0 range");
        }
        if self.sigma0_steps == 0 {
            anyhow::bail!("sigma0_steps must be positive");
        }
        if !self.grid_min.is_finite()
            || self.grid_min <= 0.0
            || self.grid_max <= self.grid_min
            || self.grid_levels < 2
        {
            anyhow::bail!("invalid search grid");
        }
        Ok(())
    }
}

/// Spread-sweep configuration. Defaults: 100 log-spaced sigmas in [0.1, 2],
/// all schemes, derivative orders 0..=4.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpreadConfig {
    pub methods: Vec<Method>,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub samples: usize,
    pub workers: usize,
}

impl Default for SpreadConfig {
    fn default() -> Self {
        SpreadConfig {
            methods: Method::ALL.to_vec(),
            sigma_min: 0.1,
            sigma_max: 2.0,
            samples: 100,
            workers: 0,
        }
    }
}

impl SpreadConfig {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serialises");
        s.push('\n');
        s
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.methods.is_empty() {
            anyhow::bail!("config needs at least one method");
        }
        if !self.sigma_min.is_finite()
            || self.sigma_min <= 0.0
            || self.sigma_max <= self.sigma_min
            || self.samples < 2
        {
            anyhow::bail!("invalid sigma sweep");
        }
        Ok(())
    }
}
