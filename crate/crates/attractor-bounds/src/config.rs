//! The JSON run configuration shared by every CLI command.
//!
//! One document describes the domain, the equation parameters, the method
//! constants, and (optionally) the simulation section and a parameter sweep.
//! Scalar flags can override individual fields so a run stays captured by a
//! single artifact.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;

use crate::bounds::CGLParams;
use crate::error::{Error, Result};
use crate::geometry::Domain;
use crate::sim::{InitialCondition, SimConfig};
use crate::spectrum::MethodConstants;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Spectrum,
    Bounds,
    Simulate,
    Report,
}

impl std::fmt::Display for CommandKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Bounds => "bounds",
            CommandKind::Simulate => "simulate",
            CommandKind::Report => "report",
        };
        f.write_str(s)
    }
}

/// Method constants as configured: the Melas numerator and the Lieb–Thirring
/// constant. Both are required; neither has a canonical numeric value here.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConstsSpec {
    pub c: f64,
    #[serde(rename = "C_star", alias = "c_star")]
    pub c_star: f64,
}

/// The `sim` section (the domain lives at the top level of the config).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimSection {
    pub modes_per_axis: Vec<usize>,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default)]
    pub burn_in: f64,
    pub initial_condition: InitialCondition,
    #[serde(default)]
    pub tangent_count: usize,
    #[serde(default = "default_reorth_interval")]
    pub reorth_interval: usize,
    #[serde(default = "default_overflow_guard")]
    pub overflow_guard: f64,
}

fn default_reorth_interval() -> usize {
    10
}

fn default_overflow_guard() -> f64 {
    1e8
}

/// One sweep point: scalar overrides applied on top of the base config.
/// The same shape backs the CLI override flags.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalarOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ScalarOverrides {
    pub fn is_empty(&self) -> bool {
        self.gamma.is_none()
            && self.c.is_none()
            && self.delta.is_none()
            && self.m_max.is_none()
            && self.dt.is_none()
            && self.t_end.is_none()
            && self.seed.is_none()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    /// Optional intent marker; when present it must match the subcommand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    pub domain: Domain,
    pub params: CGLParams,
    pub consts: ConstsSpec,
    /// Time-averaged ‖u‖^{n+2}_{L^{n+2}} datum for the bounds command;
    /// defaults to 0 with a warning when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Row count for the spectrum verification table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    /// Λ₁ override; required for ball domains, optional for boxes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<ScalarOverrides>>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Apply scalar overrides (CLI flags or one sweep point), returning the
    /// resolved copy.
    pub fn with_overrides(&self, ov: &ScalarOverrides) -> Self {
        let mut cfg = self.clone();
        if let Some(g) = ov.gamma {
            cfg.params.gamma = g;
        }
        if let Some(c) = ov.c {
            cfg.consts.c = c;
        }
        if let Some(d) = ov.delta {
            cfg.delta = Some(d);
        }
        if let Some(m) = ov.m_max {
            cfg.m_max = Some(m);
        }
        if let Some(sim) = cfg.sim.as_mut() {
            if let Some(dt) = ov.dt {
                sim.dt = dt;
            }
            if let Some(t) = ov.t_end {
                sim.t_end = t;
            }
            if let Some(seed) = ov.seed {
                sim.initial_condition = sim.initial_condition.with_seed(seed);
            }
        }
        cfg
    }

    /// Validate the domain/params/consts triple and build the method
    /// constants for the domain's dimension.
    pub fn build_consts(&self) -> Result<MethodConstants> {
        self.domain.validate()?;
        self.params.validate()?;
        MethodConstants::new(self.domain.dim(), self.consts.c, self.consts.c_star)
    }

    /// Assemble the simulator config from the `sim` section and the shared
    /// domain. Errors when the section is missing.
    pub fn build_sim_config(&self) -> Result<SimConfig> {
        let section = self
            .sim
            .as_ref()
            .ok_or_else(|| Error::InvalidConfig("missing sim section".into()))?;
        let cfg = SimConfig {
            domain: self.domain.clone(),
            modes_per_axis: section.modes_per_axis.clone(),
            dt: section.dt,
            t_end: section.t_end,
            burn_in: section.burn_in,
            initial_condition: section.initial_condition.clone(),
            tangent_count: section.tangent_count,
            reorth_interval: section.reorth_interval,
            overflow_guard: section.overflow_guard,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sweep points, or a single empty override when no sweep is configured.
    pub fn sweep_points(&self) -> Vec<ScalarOverrides> {
        match &self.sweep {
            Some(points) if !points.is_empty() => points.clone(),
            _ => vec![ScalarOverrides::default()],
        }
    }

    pub fn has_sweep(&self) -> bool {
        self.sweep.as_ref().is_some_and(|s| !s.is_empty())
    }
}
