//! Run configuration shared by every verifier.

use std::path::PathBuf;

use fqdist_core::field::{Field, FieldDescriptor, DEFAULT_MAX_UNIVERSE};
use serde::Serialize;

use crate::error::{HarnessError, Result};

/// Environment variable that overrides the scan ceiling.
pub const MAX_UNIVERSE_ENV: &str = "FQDIST_MAX_UNIVERSE";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// `(p, ell)` pairs.
    pub fields: Vec<(u32, u32)>,
    pub dims: Vec<usize>,
    pub deltas: Vec<f64>,
    pub alpha: f64,
    /// Per-configuration sample count; each verifier has its own default.
    pub samples: Option<usize>,
    pub seed: u64,
    pub max_universe: u64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            fields: vec![(5, 1)],
            dims: vec![2],
            deltas: vec![0.5],
            alpha: 0.5,
            samples: None,
            seed: 0,
            max_universe: DEFAULT_MAX_UNIVERSE,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn new(fields: Vec<(u32, u32)>, dims: Vec<usize>) -> Self {
        RunConfig {
            fields,
            dims,
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = Some(samples);
        self
    }

    pub fn with_deltas(mut self, deltas: Vec<f64>) -> Self {
        self.deltas = deltas;
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    /// Reads the ceiling override from the environment, if set.
    pub fn with_env_ceiling(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(MAX_UNIVERSE_ENV) {
            self.max_universe = v.trim().parse().map_err(|_| {
                HarnessError::Config(format!("{MAX_UNIVERSE_ENV}={v} is not an integer"))
            })?;
        }
        Ok(self)
    }

    pub fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// Builds every configured field, rejecting even or composite `p`.
    pub fn build_fields(&self) -> Result<Vec<Field>> {
        if self.fields.is_empty() {
            return Err(HarnessError::Config("no fields configured".into()));
        }
        self.fields
            .iter()
            .map(|&(p, ell)| {
                Field::new(p, ell)
                    .map(|f| f.with_max_universe(self.max_universe))
                    .map_err(|e| HarnessError::Config(format!("F_{{{p}^{ell}}}: {e}")))
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.build_fields()?;
        if self.dims.is_empty() {
            return Err(HarnessError::Config("no dimensions configured".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d == 0) {
            return Err(HarnessError::Config(format!("dimension {d} is not allowed")));
        }
        if let Some(d) = self.deltas.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
            return Err(HarnessError::Config(format!("delta {d} not in (0, 1)")));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(HarnessError::Config(format!(
                "alpha {} not in (0, 1]",
                self.alpha
            )));
        }
        Ok(())
    }

    pub fn params(&self) -> Params {
        Params {
            fields: self
                .build_fields()
                .map(|fs| fs.iter().map(Field::descriptor).collect())
                .unwrap_or_default(),
            dims: self.dims.clone(),
            deltas: self.deltas.clone(),
            alpha: self.alpha,
            samples: self.samples,
            max_universe: self.max_universe,
        }
    }
}

/// The configuration as recorded in a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    pub fields: Vec<FieldDescriptor>,
    pub dims: Vec<usize>,
    pub deltas: Vec<f64>,
    pub alpha: f64,
    pub samples: Option<usize>,
    pub max_universe: u64,
}
