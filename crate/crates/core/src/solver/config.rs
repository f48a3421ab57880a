use serde::{Deserialize, Serialize};

use crate::error::SolveError;

/// How the laminar and turbulent branches are joined between the two
/// transition Reynolds numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlendMode {
    /// Linear in Re between `transition_low` and `transition_high`.
    #[default]
    Linear,
    /// Hard switch at `transition_low`.
    Step,
}

/// Temperature at which heat-transfer properties are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyMode {
    #[default]
    Bulk,
    /// Mean of bulk and wall (or ambient) temperature; heat transfer only.
    Film,
}

/// Correlation constants and numerical controls for [`march`](super::march).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Laminar Darcy constant, f = C/Re.
    pub laminar_friction_constant: f64,
    /// Blasius prefactor.
    pub blasius_coeff: f64,
    pub blasius_exponent: f64,
    /// C_f in (1 + C_f·Re_rot/Re)^e.
    pub friction_rotation_coeff: f64,
    pub friction_rotation_exponent: f64,
    /// Disables only the rotation factor on the friction factor.
    pub friction_rotation: bool,
    /// Fully developed laminar Nusselt number at constant wall temperature.
    pub laminar_nusselt: f64,
    /// Adds the thermally developing (Hausen) contribution to the laminar
    /// branch over each contiguous run.
    pub thermal_entrance: bool,
    pub dittus_boelter_coeff: f64,
    pub dittus_boelter_re_exponent: f64,
    pub dittus_boelter_pr_exponent: f64,
    /// C_n in (1 + C_n·Re_rot/(Re + 1))^e.
    pub nusselt_rotation_coeff: f64,
    pub nusselt_rotation_exponent: f64,
    pub transition_low: f64,
    pub transition_high: f64,
    pub blend: BlendMode,
    pub property_mode: PropertyMode,
    /// Freeze every property at the inlet temperature.
    pub constant_properties: bool,
    /// Master switch for every rotation term (tangential velocity,
    /// centrifugal head, rotational Reynolds number).
    pub rotation: bool,
    /// Series conduction resistance through the steel casing.
    pub wall_conduction: bool,
    /// Stop when the largest nodal temperature change falls below this, K.
    pub tolerance_c: f64,
    pub max_iterations: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            laminar_friction_constant: 64.0,
            blasius_coeff: 0.316,
            blasius_exponent: -0.25,
            friction_rotation_coeff: 0.1,
            friction_rotation_exponent: 0.5,
            friction_rotation: true,
            laminar_nusselt: 3.66,
            thermal_entrance: true,
            dittus_boelter_coeff: 0.023,
            dittus_boelter_re_exponent: 0.8,
            dittus_boelter_pr_exponent: 0.4,
            nusselt_rotation_coeff: 0.5,
            nusselt_rotation_exponent: 0.3,
            transition_low: 2300.0,
            transition_high: 4000.0,
            blend: BlendMode::Linear,
            property_mode: PropertyMode::Bulk,
            constant_properties: false,
            rotation: true,
            wall_conduction: true,
            tolerance_c: 1e-6,
            max_iterations: 100,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |msg: String| Err(SolveError::Config(msg));
        if !(self.transition_low > 0.0 && self.transition_high > self.transition_low) {
            return bad(format!(
                "transition bounds must satisfy 0 < low < high, got {} and {}",
                self.transition_low, self.transition_high
            ));
        }
        if !(self.tolerance_c.is_finite() && self.tolerance_c > 0.0) {
            return bad(format!("tolerance_c must be positive, got {}", self.tolerance_c));
        }
        if self.max_iterations == 0 {
            return bad("max_iterations must be at least 1".into());
        }
        let positive = [
            ("laminar_friction_constant", self.laminar_friction_constant),
            ("blasius_coeff", self.blasius_coeff),
            ("laminar_nusselt", self.laminar_nusselt),
            ("dittus_boelter_coeff", self.dittus_boelter_coeff),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        let non_negative = [
            ("friction_rotation_coeff", self.friction_rotation_coeff),
            ("nusselt_rotation_coeff", self.nusselt_rotation_coeff),
            ("friction_rotation_exponent", self.friction_rotation_exponent),
            ("nusselt_rotation_exponent", self.nusselt_rotation_exponent),
        ];
        for (name, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return bad(format!("{name} must be non-negative, got {v}"));
            }
        }
        Ok(())
    }
}
