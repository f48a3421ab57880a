//! JSON configuration file. Every section is optional; command-line flags
//! override whatever the file sets.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rotorcool_core::analysis::{DesignScanSpec, SweepSpec};
use rotorcool_core::properties::FluidRow;
use rotorcool_core::{
    calibrated_preset, FluidPropertyTable, OperatingPoint, ShaftSpec, Solver, SolverConfig,
};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub solver: SolverConfig,
    /// Base operating point for single-point commands.
    #[serde(default)]
    pub operating_point: OperatingPoint,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub design_scan: Option<DesignScanSpec>,
    /// Replacement oil table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fluid_properties: Option<Vec<FluidRow>>,
    /// Replacement shaft specifications keyed by `model_id`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub geometry: Vec<ShaftSpec>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let cfg: Self = serde_json::from_str(&text)
            .with_context(|| format!("invalid config {}", path.display()))?;
        cfg.solver
            .validate()
            .with_context(|| format!("invalid solver section in {}", path.display()))?;
        Ok(cfg)
    }

    pub fn solver(&self) -> Result<Solver> {
        let mut solver = Solver::new(self.solver.clone());
        if let Some(rows) = &self.fluid_properties {
            solver.fluid = FluidPropertyTable::new(rows.clone()).context("invalid fluid_properties")?;
        }
        Ok(solver)
    }

    pub fn shaft(&self, model: u8) -> Result<ShaftSpec> {
        match self.geometry.iter().find(|g| g.model_id == model) {
            Some(g) => Ok(g.clone()),
            None => Ok(calibrated_preset(model)?),
        }
    }

    /// The sweep section with file-level geometry overrides folded in.
    pub fn sweep_spec(&self) -> SweepSpec {
        let mut spec = self.sweep.clone().unwrap_or_default();
        for g in &self.geometry {
            if !spec.geometry.iter().any(|s| s.model_id == g.model_id) {
                spec.geometry.push(g.clone());
            }
        }
        spec
    }

    /// Fully expanded view for `config show`.
    pub fn effective(&self) -> Self {
        let mut out = self.clone();
        if out.fluid_properties.is_none() {
            out.fluid_properties = Some(FluidPropertyTable::atf().rows().to_vec());
        }
        out.sweep = Some(self.sweep.clone().unwrap_or_else(SweepSpec::reference_grid));
        out
    }
}
