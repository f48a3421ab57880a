//! Steady one-dimensional solution of coolant temperature, pressure and
//! velocity along a [`ChannelNetwork`] under rotation.
//!
//! Mass flow is constant along the serial path. The bulk temperature is
//! advanced segment by segment with the exact constant-wall-temperature
//! exponential (ε-NTU) update, using properties at the local bulk temperature
//! from the previous sweep; sweeps repeat until the temperature field stops
//! changing. Pressure is then integrated upstream from the outlet, which is
//! the gauge zero: friction losses add, and radial passages add or remove the
//! centrifugal head.

mod closure;
mod config;

pub use closure::{
    centrifugal_delta_p, friction_factor, heat_transfer_rate, nusselt, rotational_reynolds,
    tangential_velocity,
};
pub use config::{BlendMode, PropertyMode, SolverConfig};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, SolveError};
use crate::geometry::{ChannelNetwork, FlowSegment, SegmentKind};
use crate::properties::{FluidPropertyTable, FluidState, SolidPropertyTable};

pub const RPM_TO_RAD_S: f64 = std::f64::consts::PI / 30.0;
pub const LPM_TO_M3_S: f64 = 1e-3 / 60.0;

fn default_wall() -> f64 {
    100.0
}
fn default_ambient() -> f64 {
    65.0
}
fn default_free_convection() -> f64 {
    10.0
}

/// Boundary conditions of one solve, in catalogue units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    /// 1/min
    pub rpm: f64,
    /// l/min
    pub flow_lpm: f64,
    pub inlet_temp_c: f64,
    #[serde(default = "default_wall")]
    pub wall_temp_c: f64,
    #[serde(default = "default_ambient")]
    pub ambient_temp_c: f64,
    /// Still-air coefficient on the non-heated outer surface, W/(m²·K).
    #[serde(default = "default_free_convection")]
    pub free_convection_w_m2k: f64,
}

impl Default for OperatingPoint {
    /// 10000 1/min, 5 l/min, 80 °C inlet.
    fn default() -> Self {
        Self {
            rpm: 10000.0,
            flow_lpm: 5.0,
            inlet_temp_c: 80.0,
            wall_temp_c: default_wall(),
            ambient_temp_c: default_ambient(),
            free_convection_w_m2k: default_free_convection(),
        }
    }
}

impl OperatingPoint {
    pub fn new(rpm: f64, flow_lpm: f64, inlet_temp_c: f64) -> Self {
        Self {
            rpm,
            flow_lpm,
            inlet_temp_c,
            ..Self::default()
        }
    }

    pub fn omega_rad_s(&self) -> f64 {
        self.rpm * RPM_TO_RAD_S
    }

    pub fn flow_m3_s(&self) -> f64 {
        self.flow_lpm * LPM_TO_M3_S
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        let bad = |m: String| Err(SolveError::OperatingPoint(m));
        if !(self.flow_lpm.is_finite() && self.flow_lpm > 0.0) {
            return bad(format!("inlet flow must be positive, got {} l/min", self.flow_lpm));
        }
        if !(self.rpm.is_finite() && self.rpm >= 0.0) {
            return bad(format!("rotational speed must be non-negative, got {} 1/min", self.rpm));
        }
        if !(self.inlet_temp_c.is_finite() && self.wall_temp_c.is_finite()) {
            return bad("temperatures must be finite".into());
        }
        if self.inlet_temp_c >= self.wall_temp_c {
            return bad(format!(
                "inlet temperature {} °C must be below the wall temperature {} °C",
                self.inlet_temp_c, self.wall_temp_c
            ));
        }
        if !self.ambient_temp_c.is_finite() {
            return bad("ambient temperature must be finite".into());
        }
        if !(self.free_convection_w_m2k.is_finite() && self.free_convection_w_m2k >= 0.0) {
            return bad(format!(
                "free convection coefficient must be non-negative, got {}",
                self.free_convection_w_m2k
            ));
        }
        Ok(())
    }
}

/// Converged state of one segment. Velocities and dimensionless groups are per
/// passage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentState {
    pub kind: SegmentKind,
    pub inlet_temperature_c: f64,
    pub outlet_temperature_c: f64,
    /// Mean of inlet and outlet temperature.
    pub bulk_temperature_c: f64,
    /// At the segment inlet, relative to the network outlet.
    pub gauge_pressure_pa: f64,
    pub friction_loss_pa: f64,
    /// Pressure change along the flow direction due to rotation.
    pub centrifugal_rise_pa: f64,
    pub axial_velocity_m_s: f64,
    pub tangential_velocity_m_s: f64,
    pub reynolds: f64,
    pub rotational_reynolds: f64,
    pub nusselt: f64,
    pub heat_transfer_coefficient_w_m2k: f64,
    pub heat_input_w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub outlet_temperature_c: f64,
    pub total_heat_rate_w: f64,
    pub max_gauge_pressure_pa: f64,
    pub max_velocity_m_s: f64,
    pub per_segment: Vec<SegmentState>,
    pub iterations: usize,
    pub converged: bool,
    pub mass_flow_kg_s: f64,
    /// ρ(T_in)·Q·c_p(T_in), W/K.
    pub capacity_rate_w_k: f64,
    /// Sum of friction losses along the path.
    pub friction_pressure_pa: f64,
    /// Q times the friction pressure loss; proxy for hydraulic loss power.
    pub friction_power_w: f64,
}

impl SolveResult {
    pub fn summed_segment_heat_w(&self) -> f64 {
        self.per_segment.iter().map(|s| s.heat_input_w).sum()
    }
}

/// Property tables plus correlation configuration; everything `march` needs
/// besides the geometry and the boundary conditions.
#[derive(Debug, Clone, Default)]
pub struct Solver {
    pub fluid: FluidPropertyTable,
    pub solid: SolidPropertyTable,
    pub config: SolverConfig,
}

/// Per-segment quantities that depend only on temperature.
struct Local {
    props: FluidState,
    axial_velocity: f64,
    reynolds: f64,
    rotational_reynolds: f64,
    nusselt: f64,
    htc: f64,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Self {
            config,
            ..Self::default()
        }
    }

    fn props(&self, inlet: &FluidState, temperature_c: f64) -> FluidState {
        if self.config.constant_properties {
            *inlet
        } else {
            self.fluid.fluid_at(temperature_c)
        }
    }

    fn sink_temperature(seg: &FlowSegment, op: &OperatingPoint) -> f64 {
        if seg.heated {
            op.wall_temp_c
        } else {
            op.ambient_temp_c
        }
    }

    fn local(
        &self,
        seg: &FlowSegment,
        op: &OperatingPoint,
        inlet: &FluidState,
        omega: f64,
        bulk_c: f64,
    ) -> Result<Local, SolveError> {
        let props = self.props(inlet, bulk_c);
        let dh = seg.hydraulic_diameter_m;
        let axial_velocity = op.flow_m3_s() / seg.flow_area_m2;
        let reynolds = props.density_kg_m3 * axial_velocity * dh / props.dynamic_viscosity_pa_s;
        let rot_re = rotational_reynolds(props.density_kg_m3, omega, dh, props.dynamic_viscosity_pa_s);

        let ht = match self.config.property_mode {
            PropertyMode::Bulk => props,
            PropertyMode::Film => {
                self.props(inlet, 0.5 * (bulk_c + Self::sink_temperature(seg, op)))
            }
        };
        let (ht_re, ht_rot_re) = match self.config.property_mode {
            PropertyMode::Bulk => (reynolds, rot_re),
            PropertyMode::Film => (
                ht.density_kg_m3 * axial_velocity * dh / ht.dynamic_viscosity_pa_s,
                rotational_reynolds(ht.density_kg_m3, omega, dh, ht.dynamic_viscosity_pa_s),
            ),
        };
        let entrance = self.config.thermal_entrance.then(|| dh / seg.run_length_m);
        let nu = self.config.nusselt(ht_re, ht.prandtl, ht_rot_re, entrance)?;
        Ok(Local {
            props,
            axial_velocity,
            reynolds,
            rotational_reynolds: rot_re,
            nusselt: nu,
            htc: nu * ht.thermal_conductivity_w_mk / dh,
        })
    }

    /// Overall conductance U·A of a segment against its sink, W/K.
    fn conductance(&self, seg: &FlowSegment, op: &OperatingPoint, htc: f64, bulk_c: f64) -> f64 {
        if seg.heat_exchange_area_m2 == 0.0 {
            return 0.0;
        }
        let resistance = if seg.heated {
            let wall = match (self.config.wall_conduction, seg.wall_radii_m) {
                (true, Some((r_in, r_out))) if r_out > r_in => {
                    let k = self
                        .solid
                        .solid_at(0.5 * (op.wall_temp_c + bulk_c))
                        .thermal_conductivity_w_mk;
                    r_in * (r_out / r_in).ln() / k
                }
                _ => 0.0,
            };
            1.0 / htc + wall
        } else {
            if op.free_convection_w_m2k == 0.0 {
                return 0.0;
            }
            1.0 / htc + 1.0 / op.free_convection_w_m2k
        };
        seg.heat_exchange_area_m2 / resistance
    }

    /// Exit temperature of one segment given its inlet temperature and the
    /// previous estimate of its exit temperature.
    ///
    /// Properties are piecewise linear in temperature, so a single midpoint
    /// evaluation loses accuracy when the segment's temperature path crosses a
    /// table node. The segment is then split at the node: each piece takes the
    /// exact exponential update with properties at its own midpoint, and the
    /// area fraction needed to reach the node follows from inverting that
    /// update.
    #[allow(clippy::too_many_arguments)]
    fn advance(
        &self,
        seg: &FlowSegment,
        op: &OperatingPoint,
        inlet: &FluidState,
        omega: f64,
        capacity: f64,
        t_up: f64,
        t_guess: f64,
    ) -> Result<f64, SolveError> {
        let sink = Self::sink_temperature(seg, op);
        let ntu = |bulk: f64| -> Result<f64, SolveError> {
            let local = self.local(seg, op, inlet, omega, bulk)?;
            Ok(self.conductance(seg, op, local.htc, bulk) / capacity)
        };
        let mut t = t_up;
        let mut remaining = 1.0;
        if !self.config.constant_properties {
            let rising = sink > t;
            loop {
                // Next node strictly between the current temperature and the
                // estimated exit, in the direction of travel.
                let nodes = self.fluid.rows().iter().map(|r| r.temperature_c);
                let next_node = if rising {
                    nodes.filter(|&x| x > t && x < t_guess && x < sink).reduce(f64::min)
                } else {
                    nodes.filter(|&x| x < t && x > t_guess && x > sink).reduce(f64::max)
                };
                let Some(node) = next_node else { break };
                let needed = ((sink - t) / (sink - node)).ln() / ntu(0.5 * (t + node))?;
                // Also stops on NaN.
                #[allow(clippy::neg_cmp_op_on_partial_ord)]
                if !(needed < remaining) {
                    break;
                }
                t = node;
                remaining -= needed;
            }
        }
        let bulk = 0.5 * (t + t_guess);
        Ok(t - (sink - t) * (-ntu(bulk)? * remaining).exp_m1())
    }

    /// Steady solution of `network` at `op`.
    pub fn march(&self, network: &ChannelNetwork, op: &OperatingPoint) -> Result<SolveResult, SolveError> {
        op.validate()?;
        self.config.validate()?;
        let segs = &network.segments;
        let n = segs.len();
        if n == 0 {
            return Err(SolveError::Geometry(GeometryError::TooFewSegments { min: 1, got: 0 }));
        }

        let omega = if self.config.rotation { op.omega_rad_s() } else { 0.0 };
        let flow = op.flow_m3_s();
        let t_in = op.inlet_temp_c;
        let inlet = self.fluid.fluid_at(t_in);
        let mass_flow = inlet.density_kg_m3 * flow;
        let capacity = mass_flow * inlet.specific_heat_j_kgk;

        let mut temps = vec![t_in; n + 1];
        let mut next = vec![t_in; n + 1];
        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.config.max_iterations {
            iterations += 1;
            let mut max_change: f64 = 0.0;
            for (i, seg) in segs.iter().enumerate() {
                let t_up = next[i];
                let t_down = if seg.heat_exchange_area_m2 == 0.0 {
                    t_up
                } else {
                    self.advance(seg, op, &inlet, omega, capacity, t_up, temps[i + 1])?
                };
                if !t_down.is_finite() {
                    return Err(SolveError::NonFinite {
                        quantity: "temperature",
                        segment: i,
                        iteration: iterations,
                    });
                }
                max_change = max_change.max((t_down - temps[i + 1]).abs());
                next[i + 1] = t_down;
            }
            std::mem::swap(&mut temps, &mut next);
            if max_change < self.config.tolerance_c {
                converged = true;
                break;
            }
        }

        let mut per_segment = Vec::with_capacity(n);
        for (i, seg) in segs.iter().enumerate() {
            let (t_up, t_down) = (temps[i], temps[i + 1]);
            let bulk = 0.5 * (t_up + t_down);
            let local = self.local(seg, op, &inlet, omega, bulk)?;
            let rho = local.props.density_kg_m3;
            let f = self.config.friction_factor(local.reynolds, local.rotational_reynolds)?;
            let v = local.axial_velocity;
            let friction = f * seg.length_m / seg.hydraulic_diameter_m * 0.5 * rho * v * v;
            let centrifugal = match seg.kind {
                SegmentKind::RadialInlet | SegmentKind::RadialOutlet => {
                    centrifugal_delta_p(rho, omega, seg.radius_start_m, seg.radius_end_m)
                }
                _ => 0.0,
            };
            if !(friction.is_finite() && centrifugal.is_finite()) {
                return Err(SolveError::NonFinite {
                    quantity: "pressure",
                    segment: i,
                    iteration: iterations,
                });
            }
            per_segment.push(SegmentState {
                kind: seg.kind,
                inlet_temperature_c: t_up,
                outlet_temperature_c: t_down,
                bulk_temperature_c: bulk,
                gauge_pressure_pa: 0.0,
                friction_loss_pa: friction,
                centrifugal_rise_pa: centrifugal,
                axial_velocity_m_s: v,
                tangential_velocity_m_s: tangential_velocity(omega, seg.mean_radius_m),
                reynolds: local.reynolds,
                rotational_reynolds: local.rotational_reynolds,
                nusselt: local.nusselt,
                heat_transfer_coefficient_w_m2k: local.htc,
                heat_input_w: capacity * (t_down - t_up),
            });
        }

        // Upstream from the outlet: p_in = p_out + friction − rise.
        let mut p_down = 0.0;
        for state in per_segment.iter_mut().rev() {
            p_down = p_down + state.friction_loss_pa - state.centrifugal_rise_pa;
            state.gauge_pressure_pa = p_down;
        }

        let max_gauge_pressure_pa = per_segment
            .iter()
            .map(|s| s.gauge_pressure_pa)
            .fold(0.0, f64::max);
        let max_velocity_m_s = per_segment
            .iter()
            .map(|s| s.axial_velocity_m_s.hypot(s.tangential_velocity_m_s))
            .fold(0.0, f64::max);
        let friction_pressure_pa: f64 = per_segment.iter().map(|s| s.friction_loss_pa).sum();
        let outlet_temperature_c = temps[n];

        Ok(SolveResult {
            outlet_temperature_c,
            total_heat_rate_w: heat_transfer_rate(
                inlet.density_kg_m3,
                flow,
                inlet.specific_heat_j_kgk,
                outlet_temperature_c,
                t_in,
            ),
            max_gauge_pressure_pa,
            max_velocity_m_s,
            per_segment,
            iterations,
            converged,
            mass_flow_kg_s: mass_flow,
            capacity_rate_w_k: capacity,
            friction_pressure_pa,
            friction_power_w: flow * friction_pressure_pa,
        })
    }

    /// Solves the network produced by `build` at each segment count.
    pub fn grid_convergence<F>(
        &self,
        build: F,
        op: &OperatingPoint,
        counts: &[usize],
    ) -> Result<ConvergenceTable, SolveError>
    where
        F: Fn(usize) -> Result<ChannelNetwork, GeometryError>,
    {
        let ascending = counts.windows(2).all(|w| w[0] < w[1]);
        if counts.is_empty() || !ascending || counts.iter().any(|&c| c < 10) {
            return Err(SolveError::Counts(counts.to_vec()));
        }
        let rows = counts
            .iter()
            .map(|&n| {
                let net = build(n)?;
                let r = self.march(&net, op)?;
                Ok(ConvergenceRow {
                    n_segments: n,
                    outlet_temperature_c: r.outlet_temperature_c,
                    max_gauge_pressure_pa: r.max_gauge_pressure_pa,
                    converged: r.converged,
                })
            })
            .collect::<Result<Vec<_>, SolveError>>()?;
        Ok(ConvergenceTable { rows })
    }
}

/// Solves with built-in properties and default configuration.
pub fn march(network: &ChannelNetwork, op: &OperatingPoint) -> Result<SolveResult, SolveError> {
    Solver::default().march(network, op)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n_segments: usize,
    pub outlet_temperature_c: f64,
    pub max_gauge_pressure_pa: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// |ΔT_out| and |Δp_max| between successive rows.
    pub fn differences(&self) -> Vec<(f64, f64)> {
        self.rows
            .windows(2)
            .map(|w| {
                (
                    (w[1].outlet_temperature_c - w[0].outlet_temperature_c).abs(),
                    (w[1].max_gauge_pressure_pa - w[0].max_gauge_pressure_pa).abs(),
                )
            })
            .collect()
    }

    /// Successive outlet-temperature differences strictly shrink.
    pub fn contracting(&self) -> bool {
        self.differences().windows(2).all(|w| w[1].0 < w[0].0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_network, calibrated_preset, preset};
    use approx::assert_relative_eq;

    fn single_heated_segment(area: f64) -> ChannelNetwork {
        let mut net = build_network(&preset(1).unwrap(), 10).unwrap();
        let mut seg = net.segments[1].clone();
        seg.heat_exchange_area_m2 = area;
        seg.wall_radii_m = None;
        net.segments = vec![seg];
        net.total_heated_area_m2 = area;
        net
    }

    #[test]
    fn operating_point_rejects_bad_inputs() {
        let op = OperatingPoint { flow_lpm: 0.0, ..OperatingPoint::default() };
        assert!(op.validate().is_err());
        let op = OperatingPoint::new(-1.0, 5.0, 80.0);
        assert!(op.validate().is_err());
        let op = OperatingPoint::new(0.0, 5.0, 100.0);
        assert!(op.validate().is_err());
        assert!(OperatingPoint::default().validate().is_ok());
    }

    #[test]
    fn unit_conversions() {
        let op = OperatingPoint::new(10000.0, 5.0, 80.0);
        assert_relative_eq!(op.omega_rad_s(), 1047.1975511965977, max_relative = 1e-15);
        assert_relative_eq!(op.flow_m3_s(), 8.3333e-5, max_relative = 1e-5);
    }

    #[test]
    fn hollow_shaft_at_rest_warms_between_inlet_and_wall() {
        let net = build_network(&preset(1).unwrap(), 100).unwrap();
        let op = OperatingPoint::new(0.0, 5.0, 80.0);
        let r = march(&net, &op).unwrap();
        assert!(r.converged);
        assert!(r.outlet_temperature_c > 80.0 && r.outlet_temperature_c < 100.0);
        let p = heat_transfer_rate(800.8, op.flow_m3_s(), 2130.0, r.outlet_temperature_c, 80.0);
        assert_relative_eq!(r.total_heat_rate_w, p, max_relative = 1e-12);
        assert!((r.summed_segment_heat_w() - p).abs() / p <= 1e-9);
    }

    #[test]
    fn single_segment_half_approach() {
        // Constant properties and no rotation, so h is known up front and the
        // area can be chosen to make hA/(ṁc_p) = ln 2.
        let solver = Solver::new(SolverConfig {
            constant_properties: true,
            rotation: false,
            ..SolverConfig::default()
        });
        let op = OperatingPoint::new(0.0, 5.0, 80.0);
        let probe = single_heated_segment(1e-3);
        let first = solver.march(&probe, &op).unwrap();
        let h = first.per_segment[0].heat_transfer_coefficient_w_m2k;
        let area = std::f64::consts::LN_2 * first.capacity_rate_w_k / h;
        let r = solver.march(&single_heated_segment(area), &op).unwrap();
        assert_relative_eq!(r.outlet_temperature_c, 100.0 - 20.0 / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn energy_closure_and_bounds_all_models() {
        for model in 1..=4 {
            let net = build_network(&calibrated_preset(model).unwrap(), 60).unwrap();
            for &(rpm, t_in) in &[(0.0, 50.0), (10000.0, 80.0), (18000.0, 60.0)] {
                let op = OperatingPoint::new(rpm, 4.0, t_in);
                let r = march(&net, &op).unwrap();
                assert!(r.converged);
                let closure = (r.summed_segment_heat_w() - r.total_heat_rate_w).abs()
                    / r.total_heat_rate_w.abs().max(1.0);
                assert!(closure <= 1e-6, "model {model}: {closure}");
                for s in &r.per_segment {
                    assert!(s.bulk_temperature_c >= t_in.min(op.ambient_temp_c) - 1e-9);
                    assert!(s.bulk_temperature_c <= op.wall_temp_c);
                }
                assert!(r.max_gauge_pressure_pa >= 0.0);
            }
        }
    }

    #[test]
    fn rest_solution_independent_of_rotation_switch() {
        for model in 1..=4 {
            let net = build_network(&calibrated_preset(model).unwrap(), 40).unwrap();
            let op = OperatingPoint::new(0.0, 5.0, 70.0);
            let on = march(&net, &op).unwrap();
            let off = Solver::new(SolverConfig {
                rotation: false,
                ..SolverConfig::default()
            })
            .march(&net, &op)
            .unwrap();
            assert!((on.outlet_temperature_c - off.outlet_temperature_c).abs() <= 1e-12);
            assert!((on.max_gauge_pressure_pa - off.max_gauge_pressure_pa).abs() <= 1e-12);
            assert!((on.total_heat_rate_w - off.total_heat_rate_w).abs() <= 1e-12);
        }
    }

    #[test]
    fn non_convergence_is_flagged_not_fatal() {
        let net = build_network(&calibrated_preset(2).unwrap(), 20).unwrap();
        let solver = Solver::new(SolverConfig {
            max_iterations: 1,
            ..SolverConfig::default()
        });
        let r = solver.march(&net, &OperatingPoint::default()).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 1);
        assert!(r.outlet_temperature_c > 80.0);
    }

    #[test]
    fn tangential_component_is_omega_r() {
        let net = build_network(&calibrated_preset(4).unwrap(), 20).unwrap();
        let op = OperatingPoint::new(10000.0, 5.0, 80.0);
        let r = march(&net, &op).unwrap();
        for (s, seg) in r.per_segment.iter().zip(&net.segments) {
            assert_eq!(s.tangential_velocity_m_s, op.omega_rad_s() * seg.mean_radius_m);
        }
        assert!(r.max_velocity_m_s > 40.0 && r.max_velocity_m_s < 50.0);
    }

    #[test]
    fn film_mode_runs_and_differs() {
        let net = build_network(&calibrated_preset(3).unwrap(), 30).unwrap();
        let op = OperatingPoint::default();
        let bulk = march(&net, &op).unwrap();
        let film = Solver::new(SolverConfig {
            property_mode: PropertyMode::Film,
            ..SolverConfig::default()
        })
        .march(&net, &op)
        .unwrap();
        assert!(film.converged);
        assert_ne!(bulk.outlet_temperature_c, film.outlet_temperature_c);
    }

    #[test]
    fn convergence_counts_validated() {
        let solver = Solver::default();
        let build = |n| build_network(&preset(1).unwrap(), n);
        let op = OperatingPoint::new(0.0, 5.0, 80.0);
        assert!(solver.grid_convergence(build, &op, &[]).is_err());
        assert!(solver.grid_convergence(build, &op, &[20, 10]).is_err());
        assert!(solver.grid_convergence(build, &op, &[5, 10]).is_err());
        let one = solver.grid_convergence(build, &op, &[50]).unwrap();
        assert_eq!(one.rows.len(), 1);
        assert!(one.differences().is_empty());
    }

    #[test]
    fn convergence_monotone_outlet_temperature_model_one() {
        let solver = Solver::default();
        let build = |n| build_network(&preset(1).unwrap(), n);
        let op = OperatingPoint::new(0.0, 5.0, 80.0);
        let table = solver.grid_convergence(build, &op, &[10, 20]).unwrap();
        let (a, b) = (table.rows[0].outlet_temperature_c, table.rows[1].outlet_temperature_c);
        assert!(a.is_finite() && b.is_finite());
        assert!((a - b).abs() < 1e-3);
    }

    #[test]
    fn node_crossing_keeps_second_order_contraction() {
        // The unheated lead section cools an 80 °C inlet just below the 80 °C
        // table node, so the heated run crosses that kink.
        let solver = Solver::default();
        let spec = calibrated_preset(1).unwrap();
        let op = OperatingPoint::default();
        let net = build_network(&spec, 100).unwrap();
        let r = solver.march(&net, &op).unwrap();
        assert!(r.per_segment[1].inlet_temperature_c < 80.0);
        let table = solver
            .grid_convergence(|n| build_network(&spec, n), &op, &[100, 200, 400])
            .unwrap();
        assert!(table.contracting(), "{:?}", table.differences());
        let d = table.differences();
        assert!(d[0].0 / d[1].0 > 3.0);
    }

    #[test]
    fn every_node_pressure_is_quadratic_in_speed() {
        let solver = Solver::new(SolverConfig {
            constant_properties: true,
            friction_rotation: false,
            ..SolverConfig::default()
        });
        for model in 2..=4 {
            let net = build_network(&calibrated_preset(model).unwrap(), 40).unwrap();
            let p = |rpm| {
                solver
                    .march(&net, &OperatingPoint::new(rpm, 5.0, 80.0))
                    .unwrap()
                    .per_segment
                    .iter()
                    .map(|s| s.gauge_pressure_pa)
                    .collect::<Vec<_>>()
            };
            let (p0, p1, p2) = (p(0.0), p(5000.0), p(10000.0));
            for k in 0..p0.len() {
                let (d1, d2) = (p1[k] - p0[k], p2[k] - p0[k]);
                if d1 == 0.0 {
                    assert_eq!(d2, 0.0);
                } else {
                    assert!((d2 / (4.0 * d1) - 1.0).abs() <= 1e-9, "model {model} node {k}");
                }
            }
        }
    }
}
