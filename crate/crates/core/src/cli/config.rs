//! Run configuration: defaults, an optional TOML file, then flags.

use serde::{Deserialize, Serialize};

use rittdyn::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// "Q" or "Q(zeta<k>)".
    pub field: String,
    pub degree_cap: u64,
    pub ritt_steps: usize,
    pub max_order: u32,
    pub orbit_budget: usize,
    pub k_max: usize,
    pub depth: usize,
    pub breadth: usize,
    pub seed: u64,
    pub lyapunov_tol: f64,
    pub margin: f64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: "Q(zeta12)".into(),
            degree_cap: rittdyn::ratmap::DEFAULT_DEGREE_CAP,
            ritt_steps: rittdyn::ritt::DEFAULT_MAX_STEPS,
            max_order: rittdyn::ritt::DEFAULT_MAX_ORDER,
            orbit_budget: rittdyn::semigroup::DEFAULT_ORBIT_BUDGET,
            k_max: rittdyn::correspondence::DEFAULT_K_MAX,
            depth: rittdyn::exponents::DEFAULT_DEPTH,
            breadth: rittdyn::exponents::DEFAULT_BREADTH,
            seed: 0,
            lyapunov_tol: 0.02,
            margin: rittdyn::exponents::DEFAULT_MARGIN,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Parse {
            pos: e.span().map_or(0, |s| s.start),
            msg: e.message().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("degree_cap", self.degree_cap as usize),
            ("ritt_steps", self.ritt_steps),
            ("max_order", self.max_order as usize),
            ("orbit_budget", self.orbit_budget),
            ("k_max", self.k_max),
            ("depth", self.depth),
            ("breadth", self.breadth),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Precondition(format!("{name} must be positive")));
        }
        if !(self.lyapunov_tol > 0.0 && self.margin > 0.0) {
            return Err(Error::Precondition("tolerances must be positive".into()));
        }
        Ok(())
    }

    pub fn conductor(&self) -> Result<u32> {
        rittdyn::parse::parse_field(&self.field)
    }
}
