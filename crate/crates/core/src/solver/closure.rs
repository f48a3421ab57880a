//! Rotation kinematics and the friction / heat-transfer correlations that
//! close the one-dimensional balances.

use super::config::{BlendMode, SolverConfig};
use crate::error::SolveError;

/// Peripheral speed of solid-body rotation, m/s.
#[inline]
pub fn tangential_velocity(omega_rad_s: f64, radius_m: f64) -> f64 {
    radius_m * omega_rad_s
}

/// Pressure rise from `r1` out to `r2` in a fluid rotating with the shaft,
/// ρω²(r2² − r1²)/2, Pa. Negate for inward flow.
#[inline]
pub fn centrifugal_delta_p(density_kg_m3: f64, omega_rad_s: f64, r1_m: f64, r2_m: f64) -> f64 {
    0.5 * density_kg_m3 * omega_rad_s * omega_rad_s * (r2_m * r2_m - r1_m * r1_m)
}

/// ρωD_h²/μ
#[inline]
pub fn rotational_reynolds(
    density_kg_m3: f64,
    omega_rad_s: f64,
    hydraulic_diameter_m: f64,
    dynamic_viscosity_pa_s: f64,
) -> f64 {
    density_kg_m3 * omega_rad_s * hydraulic_diameter_m * hydraulic_diameter_m
        / dynamic_viscosity_pa_s
}

/// P = ρ·Q·c_p·(T_out − T_in), W.
#[inline]
pub fn heat_transfer_rate(
    density_kg_m3: f64,
    flow_m3_s: f64,
    specific_heat_j_kgk: f64,
    outlet_temperature_c: f64,
    inlet_temperature_c: f64,
) -> f64 {
    density_kg_m3 * flow_m3_s * specific_heat_j_kgk * (outlet_temperature_c - inlet_temperature_c)
}

/// Darcy friction factor with the default constants.
pub fn friction_factor(reynolds: f64, rotational_reynolds: f64) -> Result<f64, SolveError> {
    SolverConfig::default().friction_factor(reynolds, rotational_reynolds)
}

/// Fully developed Nusselt number with the default constants.
pub fn nusselt(reynolds: f64, prandtl: f64, rotational_reynolds: f64) -> Result<f64, SolveError> {
    SolverConfig::default().nusselt(reynolds, prandtl, rotational_reynolds, None)
}

impl SolverConfig {
    /// Weight of the turbulent branch at `reynolds`.
    fn turbulent_weight(&self, reynolds: f64) -> f64 {
        match self.blend {
            BlendMode::Linear => {
                if reynolds <= self.transition_low {
                    0.0
                } else if reynolds >= self.transition_high {
                    1.0
                } else {
                    (reynolds - self.transition_low) / (self.transition_high - self.transition_low)
                }
            }
            BlendMode::Step => {
                if reynolds < self.transition_low {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    fn blend(&self, reynolds: f64, laminar: impl Fn() -> f64, turbulent: impl Fn() -> f64) -> f64 {
        let w = self.turbulent_weight(reynolds);
        if w == 0.0 {
            laminar()
        } else if w == 1.0 {
            turbulent()
        } else {
            (1.0 - w) * laminar() + w * turbulent()
        }
    }

    pub fn friction_factor(&self, reynolds: f64, rotational_reynolds: f64) -> Result<f64, SolveError> {
        if !(reynolds.is_finite() && reynolds > 0.0) {
            return Err(SolveError::Domain {
                what: "Reynolds number",
                value: reynolds,
            });
        }
        let base = self.blend(
            reynolds,
            || self.laminar_friction_constant / reynolds,
            || self.blasius_coeff * reynolds.powf(self.blasius_exponent),
        );
        if !self.friction_rotation || rotational_reynolds == 0.0 {
            return Ok(base);
        }
        let factor = (1.0 + self.friction_rotation_coeff * rotational_reynolds / reynolds)
            .powf(self.friction_rotation_exponent);
        Ok(base * factor)
    }

    /// Laminar Nusselt number; with `diameter_over_length` the Hausen
    /// thermally developing term is added to the fully developed value.
    pub fn laminar_nusselt(&self, reynolds: f64, prandtl: f64, diameter_over_length: Option<f64>) -> f64 {
        match diameter_over_length {
            Some(d_over_l) => {
                let graetz = reynolds * prandtl * d_over_l;
                self.laminar_nusselt + 0.0668 * graetz / (1.0 + 0.04 * graetz.powf(2.0 / 3.0))
            }
            None => self.laminar_nusselt,
        }
    }

    /// Nusselt number, laminar/Dittus–Boelter blend times the rotation
    /// augmentation. `diameter_over_length` enables the entrance term.
    pub fn nusselt(
        &self,
        reynolds: f64,
        prandtl: f64,
        rotational_reynolds: f64,
        diameter_over_length: Option<f64>,
    ) -> Result<f64, SolveError> {
        if !(reynolds.is_finite() && reynolds > 0.0) {
            return Err(SolveError::Domain {
                what: "Reynolds number",
                value: reynolds,
            });
        }
        if !(prandtl.is_finite() && prandtl > 0.0) {
            return Err(SolveError::Domain {
                what: "Prandtl number",
                value: prandtl,
            });
        }
        let base = self.blend(
            reynolds,
            || self.laminar_nusselt(reynolds, prandtl, diameter_over_length),
            || {
                self.dittus_boelter_coeff
                    * reynolds.powf(self.dittus_boelter_re_exponent)
                    * prandtl.powf(self.dittus_boelter_pr_exponent)
            },
        );
        if rotational_reynolds == 0.0 {
            return Ok(base);
        }
        let augmentation = (1.0 + self.nusselt_rotation_coeff * rotational_reynolds / (reynolds + 1.0))
            .powf(self.nusselt_rotation_exponent);
        Ok(base * augmentation)
    }
}
