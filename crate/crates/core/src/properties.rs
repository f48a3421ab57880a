//! Temperature-dependent properties of the coolant oil and the shaft steel.
//!
//! Both tables are evaluated by piecewise-linear interpolation between the
//! tabulated rows. Outside the tabulated range the boundary row is returned and
//! the state is flagged as clamped; linear extrapolation of viscosity would
//! turn negative a few tens of kelvin past the last row.

use serde::{Deserialize, Serialize};

use crate::error::PropertyError;

/// Maximum relative mismatch tolerated between the tabulated dynamic viscosity
/// and density × kinematic viscosity.
pub const VISCOSITY_CONSISTENCY_LIMIT: f64 = 0.005;

/// One tabulated row of the oil property table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluidRow {
    pub temperature_c: f64,
    pub density_kg_m3: f64,
    pub kinematic_viscosity_m2_s: f64,
    pub specific_heat_j_kgk: f64,
    pub thermal_conductivity_w_mk: f64,
    pub dynamic_viscosity_pa_s: f64,
}

impl FluidRow {
    const fn new(t: f64, rho: f64, nu: f64, cp: f64, k: f64, mu: f64) -> Self {
        Self {
            temperature_c: t,
            density_kg_m3: rho,
            kinematic_viscosity_m2_s: nu,
            specific_heat_j_kgk: cp,
            thermal_conductivity_w_mk: k,
            dynamic_viscosity_pa_s: mu,
        }
    }

    fn fields(&self) -> [(&'static str, f64); 6] {
        [
            ("temperature_c", self.temperature_c),
            ("density_kg_m3", self.density_kg_m3),
            ("kinematic_viscosity_m2_s", self.kinematic_viscosity_m2_s),
            ("specific_heat_j_kgk", self.specific_heat_j_kgk),
            ("thermal_conductivity_w_mk", self.thermal_conductivity_w_mk),
            ("dynamic_viscosity_pa_s", self.dynamic_viscosity_pa_s),
        ]
    }
}

/// Fuchs FES 821-6436A ATF, 40–120 °C in 5 K steps.
pub const ATF_ROWS: [FluidRow; 17] = [
    FluidRow::new(40.0, 826.3, 0.0000179, 1980.0, 0.14, 0.01479077),
    FluidRow::new(45.0, 823.1, 0.000015, 2000.0, 0.14, 0.0123465),
    FluidRow::new(50.0, 820.0, 0.0000127, 2020.0, 0.14, 0.010414),
    FluidRow::new(55.0, 816.8, 0.0000109, 2040.0, 0.14, 0.00890312),
    FluidRow::new(60.0, 813.6, 0.0000094, 2060.0, 0.14, 0.00764784),
    FluidRow::new(65.0, 810.4, 0.0000083, 2080.0, 0.13, 0.00672632),
    FluidRow::new(70.0, 807.2, 0.0000073, 2090.0, 0.13, 0.00589256),
    FluidRow::new(75.0, 804.0, 0.0000065, 2110.0, 0.13, 0.005226),
    FluidRow::new(80.0, 800.8, 0.0000058, 2130.0, 0.13, 0.00464464),
    FluidRow::new(85.0, 797.5, 0.0000052, 2150.0, 0.13, 0.004147),
    FluidRow::new(90.0, 794.3, 0.0000048, 2170.0, 0.13, 0.00381264),
    FluidRow::new(95.0, 791.1, 0.0000044, 2190.0, 0.13, 0.00348084),
    FluidRow::new(100.0, 787.9, 0.000004, 2210.0, 0.13, 0.0031516),
    FluidRow::new(105.0, 784.6, 0.0000037, 2220.0, 0.13, 0.00290302),
    FluidRow::new(110.0, 781.4, 0.0000034, 2240.0, 0.13, 0.00265676),
    FluidRow::new(115.0, 778.1, 0.0000032, 2260.0, 0.13, 0.00248992),
    FluidRow::new(120.0, 774.9, 0.000003, 2280.0, 0.13, 0.0023247),
];

/// One tabulated row of the shaft steel table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolidRow {
    pub temperature_c: f64,
    pub density_kg_m3: f64,
    pub thermal_conductivity_w_mk: f64,
    /// 10⁻⁶ m²/s
    pub thermal_diffusivity_e6_m2_s: f64,
    /// µΩ·m
    pub electrical_resistivity_uohm_m: f64,
    pub specific_heat_kj_kgk: f64,
}

/// Case-hardening steel 20MnCr5.
pub const STEEL_20MNCR5_ROWS: [SolidRow; 3] = [
    SolidRow {
        temperature_c: 20.0,
        density_kg_m3: 7850.0,
        thermal_conductivity_w_mk: 45.9,
        thermal_diffusivity_e6_m2_s: 12.7,
        electrical_resistivity_uohm_m: 0.227,
        specific_heat_kj_kgk: 0.46,
    },
    SolidRow {
        temperature_c: 100.0,
        density_kg_m3: 7850.0,
        thermal_conductivity_w_mk: 45.77,
        thermal_diffusivity_e6_m2_s: 12.0,
        electrical_resistivity_uohm_m: 0.276,
        specific_heat_kj_kgk: 0.47,
    },
    SolidRow {
        temperature_c: 200.0,
        density_kg_m3: 7850.0,
        thermal_conductivity_w_mk: 45.60,
        thermal_diffusivity_e6_m2_s: 11.0,
        electrical_resistivity_uohm_m: 0.346,
        specific_heat_kj_kgk: 0.49,
    },
];

/// Coolant properties evaluated at one temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluidState {
    pub temperature_c: f64,
    pub density_kg_m3: f64,
    pub kinematic_viscosity_m2_s: f64,
    pub specific_heat_j_kgk: f64,
    pub thermal_conductivity_w_mk: f64,
    pub dynamic_viscosity_pa_s: f64,
    pub prandtl: f64,
    /// Requested temperature was outside the table; boundary row returned.
    pub clamped: bool,
}

impl FluidState {
    fn from_row(row: &FluidRow, requested_c: f64, clamped: bool) -> Self {
        Self {
            temperature_c: requested_c,
            density_kg_m3: row.density_kg_m3,
            kinematic_viscosity_m2_s: row.kinematic_viscosity_m2_s,
            specific_heat_j_kgk: row.specific_heat_j_kgk,
            thermal_conductivity_w_mk: row.thermal_conductivity_w_mk,
            dynamic_viscosity_pa_s: row.dynamic_viscosity_pa_s,
            prandtl: row.dynamic_viscosity_pa_s * row.specific_heat_j_kgk
                / row.thermal_conductivity_w_mk,
            clamped,
        }
    }
}

/// Steel properties evaluated at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolidState {
    pub thermal_conductivity_w_mk: f64,
    pub density_kg_m3: f64,
    pub specific_heat_kj_kgk: f64,
    pub clamped: bool,
}

/// Where `t` falls in a strictly increasing node list.
enum Bracket {
    Node(usize),
    Between(usize, f64),
    Below,
    Above,
}

fn bracket<R>(rows: &[R], temperature: impl Fn(&R) -> f64, t: f64) -> Bracket {
    let last = rows.len() - 1;
    if t.is_nan() || t < temperature(&rows[0]) {
        return Bracket::Below;
    }
    if t > temperature(&rows[last]) {
        return Bracket::Above;
    }
    // first node >= t
    let hi = rows.partition_point(|r| temperature(r) < t);
    let t_hi = temperature(&rows[hi]);
    if t_hi == t {
        return Bracket::Node(hi);
    }
    let t_lo = temperature(&rows[hi - 1]);
    Bracket::Between(hi - 1, (t - t_lo) / (t_hi - t_lo))
}

#[inline]
fn lerp(a: f64, b: f64, w: f64) -> f64 {
    a + (b - a) * w
}

/// Temperature-indexed coolant property table.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidPropertyTable {
    rows: Vec<FluidRow>,
}

impl FluidPropertyTable {
    /// Validates ordering and positivity. Trend and μ = ρν consistency are
    /// checked separately so that deliberately perturbed tables can still be
    /// loaded and diagnosed.
    pub fn new(rows: Vec<FluidRow>) -> Result<Self, PropertyError> {
        if rows.is_empty() {
            return Err(PropertyError::Empty);
        }
        for (i, row) in rows.iter().enumerate() {
            for (field, value) in row.fields() {
                let ok = if field == "temperature_c" {
                    value.is_finite()
                } else {
                    value.is_finite() && value > 0.0
                };
                if !ok {
                    return Err(PropertyError::NonPositive {
                        row: i,
                        field,
                        value,
                    });
                }
            }
        }
        for (i, w) in rows.windows(2).enumerate() {
            if w[1].temperature_c <= w[0].temperature_c {
                return Err(PropertyError::NotIncreasing {
                    row: i + 1,
                    prev: w[0].temperature_c,
                    next: w[1].temperature_c,
                });
            }
        }
        Ok(Self { rows })
    }

    /// Built-in ATF table.
    pub fn atf() -> Self {
        Self {
            rows: ATF_ROWS.to_vec(),
        }
    }

    /// Loads a JSON array of rows with the same keys as [`FluidRow`].
    pub fn from_json(text: &str) -> Result<Self, PropertyError> {
        let rows: Vec<FluidRow> =
            serde_json::from_str(text).map_err(|e| PropertyError::Parse(e.to_string()))?;
        Self::new(rows)
    }

    pub fn rows(&self) -> &[FluidRow] {
        &self.rows
    }

    pub fn min_temperature(&self) -> f64 {
        self.rows[0].temperature_c
    }

    pub fn max_temperature(&self) -> f64 {
        self.rows[self.rows.len() - 1].temperature_c
    }

    /// Piecewise-linear evaluation, clamped outside the table.
    pub fn fluid_at(&self, temperature_c: f64) -> FluidState {
        match bracket(&self.rows, |r| r.temperature_c, temperature_c) {
            Bracket::Node(i) => FluidState::from_row(&self.rows[i], temperature_c, false),
            Bracket::Below => FluidState::from_row(&self.rows[0], temperature_c, true),
            Bracket::Above => {
                FluidState::from_row(&self.rows[self.rows.len() - 1], temperature_c, true)
            }
            Bracket::Between(lo, w) => {
                let (a, b) = (&self.rows[lo], &self.rows[lo + 1]);
                let row = FluidRow {
                    temperature_c,
                    density_kg_m3: lerp(a.density_kg_m3, b.density_kg_m3, w),
                    kinematic_viscosity_m2_s: lerp(
                        a.kinematic_viscosity_m2_s,
                        b.kinematic_viscosity_m2_s,
                        w,
                    ),
                    specific_heat_j_kgk: lerp(a.specific_heat_j_kgk, b.specific_heat_j_kgk, w),
                    thermal_conductivity_w_mk: lerp(
                        a.thermal_conductivity_w_mk,
                        b.thermal_conductivity_w_mk,
                        w,
                    ),
                    dynamic_viscosity_pa_s: lerp(
                        a.dynamic_viscosity_pa_s,
                        b.dynamic_viscosity_pa_s,
                        w,
                    ),
                };
                FluidState::from_row(&row, temperature_c, false)
            }
        }
    }

    /// Per-row relative mismatch between μ and ρ·ν.
    pub fn consistency_check(&self) -> ConsistencyReport {
        let per_row: Vec<(f64, f64)> = self
            .rows
            .iter()
            .map(|r| {
                let mu = r.dynamic_viscosity_pa_s;
                let rel = (mu - r.density_kg_m3 * r.kinematic_viscosity_m2_s).abs() / mu;
                (r.temperature_c, rel)
            })
            .collect();
        let max_relative = per_row.iter().map(|&(_, e)| e).fold(0.0, f64::max);
        let offending = per_row
            .iter()
            .enumerate()
            .filter(|(_, &(_, e))| e > VISCOSITY_CONSISTENCY_LIMIT)
            .map(|(i, _)| i)
            .collect();
        ConsistencyReport {
            per_row,
            max_relative,
            offending,
        }
    }
}

impl Default for FluidPropertyTable {
    fn default() -> Self {
        Self::atf()
    }
}

/// Result of [`FluidPropertyTable::consistency_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    /// (temperature °C, |μ − ρν| / μ) for every row.
    pub per_row: Vec<(f64, f64)>,
    pub max_relative: f64,
    /// Indices of rows above [`VISCOSITY_CONSISTENCY_LIMIT`].
    pub offending: Vec<usize>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Temperature-indexed shaft material table.
#[derive(Debug, Clone, PartialEq)]
pub struct SolidPropertyTable {
    rows: Vec<SolidRow>,
}

impl SolidPropertyTable {
    pub fn new(rows: Vec<SolidRow>) -> Result<Self, PropertyError> {
        if rows.is_empty() {
            return Err(PropertyError::Empty);
        }
        for (i, r) in rows.iter().enumerate() {
            let checks = [
                ("density_kg_m3", r.density_kg_m3),
                ("thermal_conductivity_w_mk", r.thermal_conductivity_w_mk),
                ("thermal_diffusivity_e6_m2_s", r.thermal_diffusivity_e6_m2_s),
                (
                    "electrical_resistivity_uohm_m",
                    r.electrical_resistivity_uohm_m,
                ),
                ("specific_heat_kj_kgk", r.specific_heat_kj_kgk),
            ];
            for (field, value) in checks {
                if !(value.is_finite() && value > 0.0) {
                    return Err(PropertyError::NonPositive {
                        row: i,
                        field,
                        value,
                    });
                }
            }
        }
        for (i, w) in rows.windows(2).enumerate() {
            if w[1].temperature_c <= w[0].temperature_c {
                return Err(PropertyError::NotIncreasing {
                    row: i + 1,
                    prev: w[0].temperature_c,
                    next: w[1].temperature_c,
                });
            }
        }
        Ok(Self { rows })
    }

    pub fn steel_20mncr5() -> Self {
        Self {
            rows: STEEL_20MNCR5_ROWS.to_vec(),
        }
    }

    pub fn rows(&self) -> &[SolidRow] {
        &self.rows
    }

    pub fn solid_at(&self, temperature_c: f64) -> SolidState {
        let pick = |r: &SolidRow, clamped| SolidState {
            thermal_conductivity_w_mk: r.thermal_conductivity_w_mk,
            density_kg_m3: r.density_kg_m3,
            specific_heat_kj_kgk: r.specific_heat_kj_kgk,
            clamped,
        };
        match bracket(&self.rows, |r| r.temperature_c, temperature_c) {
            Bracket::Node(i) => pick(&self.rows[i], false),
            Bracket::Below => pick(&self.rows[0], true),
            Bracket::Above => pick(&self.rows[self.rows.len() - 1], true),
            Bracket::Between(lo, w) => {
                let (a, b) = (&self.rows[lo], &self.rows[lo + 1]);
                SolidState {
                    thermal_conductivity_w_mk: lerp(
                        a.thermal_conductivity_w_mk,
                        b.thermal_conductivity_w_mk,
                        w,
                    ),
                    density_kg_m3: lerp(a.density_kg_m3, b.density_kg_m3, w),
                    specific_heat_kj_kgk: lerp(a.specific_heat_kj_kgk, b.specific_heat_kj_kgk, w),
                    clamped: false,
                }
            }
        }
    }
}

impl Default for SolidPropertyTable {
    fn default() -> Self {
        Self::steel_20mncr5()
    }
}
