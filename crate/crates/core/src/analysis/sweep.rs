use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::format::format_sig6;
use crate::error::{AnalysisError, GeometryError};
use crate::geometry::{build_network, calibrated_preset, ChannelNetwork, ShaftSpec, MIN_AXIAL_SEGMENTS, MM2};
use crate::solver::{OperatingPoint, Solver};

pub const REFERENCE_SPEEDS_RPM: [f64; 8] = [
    0.0, 3000.0, 5000.0, 7000.0, 9000.0, 10000.0, 12000.0, 18000.0,
];
pub const REFERENCE_FLOWS_LPM: [f64; 4] = [3.0, 4.0, 5.0, 6.0];
pub const REFERENCE_INLET_TEMPS_C: [f64; 4] = [50.0, 60.0, 70.0, 80.0];

pub const SPEED_RANGE_RPM: (f64, f64) = (0.0, 18000.0);
pub const FLOW_RANGE_LPM: (f64, f64) = (3.0, 6.0);
pub const INLET_TEMP_RANGE_C: (f64, f64) = (50.0, 80.0);

pub const CSV_HEADER: [&str; 10] = [
    "model",
    "rpm",
    "flow_lpm",
    "inlet_temp_c",
    "outlet_temp_c",
    "heat_rate_w",
    "max_pressure_pa",
    "max_velocity_m_s",
    "heat_per_area_w_m2",
    "converged",
];

fn default_base_model() -> u8 {
    4
}
fn default_segments() -> usize {
    200
}

/// Cartesian grid of models and operating points. An empty axis is held at
/// the corresponding base value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    #[serde(default)]
    pub models: Vec<u8>,
    #[serde(default)]
    pub speeds_rpm: Vec<f64>,
    #[serde(default)]
    pub flows_lpm: Vec<f64>,
    #[serde(default)]
    pub inlet_temps_c: Vec<f64>,
    #[serde(default = "default_base_model")]
    pub base_model: u8,
    /// Values for non-swept axes, plus wall and ambient conditions.
    #[serde(default)]
    pub base: OperatingPoint,
    #[serde(default = "default_segments")]
    pub n_axial_segments: usize,
    /// Permit values outside the reference grid ranges.
    #[serde(default)]
    pub allow_out_of_range: bool,
    /// Replacement shaft specifications keyed by their `model_id`; models not
    /// listed use the calibrated presets.
    #[serde(default)]
    pub geometry: Vec<ShaftSpec>,
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            models: Vec::new(),
            speeds_rpm: Vec::new(),
            flows_lpm: Vec::new(),
            inlet_temps_c: Vec::new(),
            base_model: default_base_model(),
            base: OperatingPoint::default(),
            n_axial_segments: default_segments(),
            allow_out_of_range: false,
            geometry: Vec::new(),
        }
    }
}

impl SweepSpec {
    /// All four models over the full reference grid: 4 × 8 × 4 × 4 = 512 rows.
    pub fn reference_grid() -> Self {
        Self {
            models: vec![1, 2, 3, 4],
            speeds_rpm: REFERENCE_SPEEDS_RPM.to_vec(),
            flows_lpm: REFERENCE_FLOWS_LPM.to_vec(),
            inlet_temps_c: REFERENCE_INLET_TEMPS_C.to_vec(),
            ..Self::default()
        }
    }

    fn axis(values: &[f64], base: f64) -> Vec<f64> {
        if values.is_empty() {
            vec![base]
        } else {
            values.to_vec()
        }
    }

    pub fn validate(&self) -> Result<(), AnalysisError> {
        if self.models.is_empty()
            && self.speeds_rpm.is_empty()
            && self.flows_lpm.is_empty()
            && self.inlet_temps_c.is_empty()
        {
            return Err(AnalysisError::EmptySweep);
        }
        if self.n_axial_segments < MIN_AXIAL_SEGMENTS {
            return Err(GeometryError::TooFewSegments {
                min: MIN_AXIAL_SEGMENTS,
                got: self.n_axial_segments,
            }
            .into());
        }
        for &m in &self.model_list() {
            if !(1..=4).contains(&m) && !self.geometry.iter().any(|g| g.model_id == m) {
                return Err(GeometryError::UnknownModel(m).into());
            }
        }
        if !self.allow_out_of_range {
            let axes = [
                ("rpm", Self::axis(&self.speeds_rpm, self.base.rpm), SPEED_RANGE_RPM),
                ("flow_lpm", Self::axis(&self.flows_lpm, self.base.flow_lpm), FLOW_RANGE_LPM),
                (
                    "inlet_temp_c",
                    Self::axis(&self.inlet_temps_c, self.base.inlet_temp_c),
                    INLET_TEMP_RANGE_C,
                ),
            ];
            for (axis, values, (min, max)) in axes {
                if let Some(&value) = values.iter().find(|v| !(**v >= min && **v <= max)) {
                    return Err(AnalysisError::OutOfRange {
                        axis,
                        value,
                        min,
                        max,
                    });
                }
            }
        }
        Ok(())
    }

    fn model_list(&self) -> Vec<u8> {
        if self.models.is_empty() {
            vec![self.base_model]
        } else {
            self.models.clone()
        }
    }

    pub fn shaft_spec(&self, model: u8) -> Result<ShaftSpec, GeometryError> {
        match self.geometry.iter().find(|g| g.model_id == model) {
            Some(g) => Ok(g.clone()),
            None => calibrated_preset(model),
        }
    }

    /// Every (model, operating point) of the grid in canonical order.
    pub fn points(&self) -> Vec<(u8, OperatingPoint)> {
        let mut models = self.model_list();
        models.sort_unstable();
        let mut speeds = Self::axis(&self.speeds_rpm, self.base.rpm);
        let mut flows = Self::axis(&self.flows_lpm, self.base.flow_lpm);
        let mut temps = Self::axis(&self.inlet_temps_c, self.base.inlet_temp_c);
        for v in [&mut speeds, &mut flows, &mut temps] {
            v.sort_by(f64::total_cmp);
        }
        let mut out = Vec::with_capacity(models.len() * speeds.len() * flows.len() * temps.len());
        for &m in &models {
            for &rpm in &speeds {
                for &flow_lpm in &flows {
                    for &inlet_temp_c in &temps {
                        out.push((
                            m,
                            OperatingPoint {
                                rpm,
                                flow_lpm,
                                inlet_temp_c,
                                ..self.base
                            },
                        ));
                    }
                }
            }
        }
        out
    }
}

/// One solved grid point. Failed solves keep whatever was computed (NaN when
/// nothing was) and carry `converged = false` plus the reason.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub model: u8,
    pub rpm: f64,
    pub flow_lpm: f64,
    pub inlet_temp_c: f64,
    pub outlet_temp_c: f64,
    pub heat_rate_w: f64,
    pub max_pressure_pa: f64,
    pub max_velocity_m_s: f64,
    pub heat_per_area_w_m2: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    /// Friction share of the pressure drop along the path.
    #[serde(skip)]
    pub friction_pressure_pa: f64,
    /// Summed per-segment heat inputs, for closure checks.
    #[serde(skip)]
    pub summed_segment_heat_w: f64,
}

impl SweepRow {
    pub fn key(&self) -> PointKey {
        PointKey {
            rpm: self.rpm,
            flow_lpm: self.flow_lpm,
            inlet_temp_c: self.inlet_temp_c,
        }
    }

    fn failed(model: u8, op: &OperatingPoint, error: String) -> Self {
        Self {
            model,
            rpm: op.rpm,
            flow_lpm: op.flow_lpm,
            inlet_temp_c: op.inlet_temp_c,
            outlet_temp_c: f64::NAN,
            heat_rate_w: f64::NAN,
            max_pressure_pa: f64::NAN,
            max_velocity_m_s: f64::NAN,
            heat_per_area_w_m2: f64::NAN,
            converged: false,
            error: Some(error),
            friction_pressure_pa: f64::NAN,
            summed_segment_heat_w: f64::NAN,
        }
    }

    fn csv_record(&self) -> [String; 10] {
        [
            self.model.to_string(),
            format_sig6(self.rpm),
            format_sig6(self.flow_lpm),
            format_sig6(self.inlet_temp_c),
            format_sig6(self.outlet_temp_c),
            format_sig6(self.heat_rate_w),
            format_sig6(self.max_pressure_pa),
            format_sig6(self.max_velocity_m_s),
            format_sig6(self.heat_per_area_w_m2),
            self.converged.to_string(),
        ]
    }
}

/// Operating point without the model, for lookups across models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointKey {
    pub rpm: f64,
    pub flow_lpm: f64,
    pub inlet_temp_c: f64,
}

impl PointKey {
    pub fn new(rpm: f64, flow_lpm: f64, inlet_temp_c: f64) -> Self {
        Self {
            rpm,
            flow_lpm,
            inlet_temp_c,
        }
    }
}

fn solve_row(
    model: u8,
    op: &OperatingPoint,
    network: &Result<ChannelNetwork, GeometryError>,
    solver: &Solver,
) -> SweepRow {
    let net = match network {
        Ok(net) => net,
        Err(e) => return SweepRow::failed(model, op, e.to_string()),
    };
    match solver.march(net, op) {
        Ok(r) => SweepRow {
            model,
            rpm: op.rpm,
            flow_lpm: op.flow_lpm,
            inlet_temp_c: op.inlet_temp_c,
            outlet_temp_c: r.outlet_temperature_c,
            heat_rate_w: r.total_heat_rate_w,
            max_pressure_pa: r.max_gauge_pressure_pa,
            max_velocity_m_s: r.max_velocity_m_s,
            heat_per_area_w_m2: r.total_heat_rate_w / (net.spec.interface_area_mm2 * MM2),
            converged: r.converged,
            error: (!r.converged).then(|| format!("not converged after {} iterations", r.iterations)),
            friction_pressure_pa: r.friction_pressure_pa,
            summed_segment_heat_w: r.summed_segment_heat_w(),
        },
        Err(e) => SweepRow::failed(model, op, e.to_string()),
    }
}

/// Solves every grid point. Rows run in parallel and come back in canonical
/// (model, rpm, flow, inlet temperature) order; a failing row never aborts
/// the sweep.
pub fn run_sweep(spec: &SweepSpec, solver: &Solver) -> Result<Vec<SweepRow>, AnalysisError> {
    spec.validate()?;
    solver.config.validate()?;
    let networks: BTreeMap<u8, Result<ChannelNetwork, GeometryError>> = spec
        .model_list()
        .into_iter()
        .map(|m| (m, spec.shaft_spec(m).and_then(|s| build_network(&s, spec.n_axial_segments))))
        .collect();
    let points = spec.points();
    let mut rows: Vec<SweepRow> = points
        .par_iter()
        .map(|(m, op)| solve_row(*m, op, &networks[m], solver))
        .collect();
    // `points` is already canonical and par_iter preserves order; the sort
    // keeps the contract independent of that detail.
    rows.sort_by(|a, b| {
        a.model
            .cmp(&b.model)
            .then(a.rpm.total_cmp(&b.rpm))
            .then(a.flow_lpm.total_cmp(&b.flow_lpm))
            .then(a.inlet_temp_c.total_cmp(&b.inlet_temp_c))
    });
    Ok(rows)
}

/// Writes the header and one record per row, LF terminated.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<(), AnalysisError> {
    let csv_err = |e: csv::Error| AnalysisError::Csv(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.csv_record()).map_err(csv_err)?;
    }
    w.flush().map_err(|e| AnalysisError::Csv(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    #[default]
    HeatRate,
    HeatPerArea,
    OutletTemperature,
}

impl Metric {
    fn of(self, row: &SweepRow) -> f64 {
        match self {
            Metric::HeatRate => row.heat_rate_w,
            Metric::HeatPerArea => row.heat_per_area_w_m2,
            Metric::OutletTemperature => row.outlet_temp_c,
        }
    }
}

fn find_row(rows: &[SweepRow], model: u8, point: PointKey) -> Result<&SweepRow, AnalysisError> {
    rows.iter()
        .find(|r| r.model == model && r.key() == point)
        .ok_or(AnalysisError::MissingModel {
            model,
            rpm: point.rpm,
            flow_lpm: point.flow_lpm,
            inlet_temp_c: point.inlet_temp_c,
        })
}

/// `models` ordered best first by `metric` at `point`; ties go to the lower
/// model id.
pub fn rank_models(
    rows: &[SweepRow],
    models: &[u8],
    point: PointKey,
    metric: Metric,
) -> Result<Vec<u8>, AnalysisError> {
    let mut scored = models
        .iter()
        .map(|&m| Ok((m, metric.of(find_row(rows, m, point)?))))
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    Ok(scored.into_iter().map(|(m, _)| m).collect())
}

/// Heat rate of `candidate` over that of `baseline` at `point`.
pub fn improvement_ratio(
    rows: &[SweepRow],
    candidate: u8,
    baseline: u8,
    point: PointKey,
) -> Result<f64, AnalysisError> {
    let base = find_row(rows, baseline, point)?.heat_rate_w;
    if base == 0.0 || !base.is_finite() {
        return Err(AnalysisError::ZeroBaseline);
    }
    Ok(find_row(rows, candidate, point)?.heat_rate_w / base)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedPoint {
    pub point: PointKey,
    pub ranking: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImprovementEntry {
    pub model: u8,
    pub point: PointKey,
    pub ratio: f64,
}

/// Rankings by heat rate at every point where all models were solved, and
/// each model's heat rate relative to the lowest-numbered model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub converged_rows: usize,
    pub baseline_model: Option<u8>,
    pub rankings: Vec<RankedPoint>,
    pub improvement_ratios: Vec<ImprovementEntry>,
}

impl SweepSummary {
    pub fn from_rows(rows: &[SweepRow]) -> Self {
        let mut models: Vec<u8> = rows.iter().map(|r| r.model).collect();
        models.sort_unstable();
        models.dedup();
        let mut points: Vec<PointKey> = Vec::new();
        for r in rows {
            if !points.contains(&r.key()) {
                points.push(r.key());
            }
        }
        let usable = |m: u8, p: PointKey| {
            find_row(rows, m, p)
                .map(|r| r.converged && r.heat_rate_w.is_finite())
                .unwrap_or(false)
        };
        let baseline = models.first().copied();
        let mut rankings = Vec::new();
        let mut improvement_ratios = Vec::new();
        for &p in &points {
            if models.iter().all(|&m| usable(m, p)) {
                if let Ok(ranking) = rank_models(rows, &models, p, Metric::HeatRate) {
                    rankings.push(RankedPoint { point: p, ranking });
                }
            }
            if let Some(b) = baseline.filter(|&b| usable(b, p)) {
                for &m in models.iter().filter(|&&m| m != b && usable(m, p)) {
                    if let Ok(ratio) = improvement_ratio(rows, m, b, p) {
                        improvement_ratios.push(ImprovementEntry { model: m, point: p, ratio });
                    }
                }
            }
        }
        Self {
            rows: rows.len(),
            converged_rows: rows.iter().filter(|r| r.converged).count(),
            baseline_model: baseline,
            rankings,
            improvement_ratios,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(models: Vec<u8>) -> SweepSpec {
        SweepSpec {
            models,
            speeds_rpm: vec![10000.0, 0.0],
            flows_lpm: vec![5.0],
            inlet_temps_c: vec![80.0, 50.0],
            n_axial_segments: 30,
            ..SweepSpec::default()
        }
    }

    #[test]
    fn one_point_one_row() {
        let spec = SweepSpec {
            models: vec![2],
            n_axial_segments: 20,
            ..SweepSpec::default()
        };
        let rows = run_sweep(&spec, &Solver::default()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].rpm, rows[0].flow_lpm, rows[0].inlet_temp_c), (10000.0, 5.0, 80.0));
    }

    #[test]
    fn grid_counts() {
        let mut spec = SweepSpec::reference_grid();
        assert_eq!(spec.points().len(), 512);
        spec.models = vec![2, 3, 4];
        assert_eq!(spec.points().len(), 384);
    }

    #[test]
    fn empty_sweep_rejected() {
        let spec = SweepSpec::default();
        assert_eq!(spec.validate(), Err(AnalysisError::EmptySweep));
    }

    #[test]
    fn ranges_enforced_unless_overridden() {
        let mut spec = small(vec![1]);
        spec.flows_lpm = vec![8.0];
        assert!(matches!(spec.validate(), Err(AnalysisError::OutOfRange { axis: "flow_lpm", .. })));
        spec.allow_out_of_range = true;
        assert!(spec.validate().is_ok());
        let mut spec = small(vec![7]);
        assert!(spec.validate().is_err());
        spec.models = vec![1];
        spec.base.inlet_temp_c = 95.0;
        spec.inlet_temps_c.clear();
        assert!(spec.validate().is_err());
    }

    #[test]
    fn output_is_canonical_and_deterministic() {
        let spec = small(vec![3, 1]);
        let a = run_sweep(&spec, &Solver::default()).unwrap();
        let b = run_sweep(&spec, &Solver::default()).unwrap();
        let keys: Vec<_> = a.iter().map(|r| (r.model, r.rpm, r.inlet_temp_c)).collect();
        assert_eq!(
            keys,
            vec![
                (1, 0.0, 50.0),
                (1, 0.0, 80.0),
                (1, 10000.0, 50.0),
                (1, 10000.0, 80.0),
                (3, 0.0, 50.0),
                (3, 0.0, 80.0),
                (3, 10000.0, 50.0),
                (3, 10000.0, 80.0),
            ]
        );
        let (mut ca, mut cb) = (Vec::new(), Vec::new());
        write_csv(&a, &mut ca).unwrap();
        write_csv(&b, &mut cb).unwrap();
        assert_eq!(ca, cb);
        let text = String::from_utf8(ca).unwrap();
        assert!(text.starts_with(
            "model,rpm,flow_lpm,inlet_temp_c,outlet_temp_c,heat_rate_w,max_pressure_pa,max_velocity_m_s,heat_per_area_w_m2,converged\n"
        ));
        assert!(!text.contains('\r'));
        assert_eq!(text.lines().count(), 9);
    }

    #[test]
    fn heat_per_area_consistent() {
        let rows = run_sweep(&small(vec![1, 2, 3, 4]), &Solver::default()).unwrap();
        for r in &rows {
            let area = calibrated_preset(r.model).unwrap().interface_area_mm2 * 1e-6;
            let want = r.heat_rate_w / area;
            assert!(((r.heat_per_area_w_m2 - want) / want).abs() <= 1e-12);
        }
    }

    #[test]
    fn failing_rows_are_recorded() {
        let mut bad = calibrated_preset(2).unwrap();
        bad.profile_depth_mm = 40.0;
        let spec = SweepSpec {
            models: vec![1, 2],
            geometry: vec![bad],
            n_axial_segments: 20,
            ..SweepSpec::default()
        };
        let rows = run_sweep(&spec, &Solver::default()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].converged);
        assert!(!rows[1].converged);
        assert!(rows[1].heat_rate_w.is_nan());
        assert!(rows[1].error.is_some());
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().contains(",nan,"));
    }

    #[test]
    fn ranking_and_ratios() {
        let rows = run_sweep(&small(vec![1, 2, 3, 4]), &Solver::default()).unwrap();
        let p = PointKey::new(10000.0, 5.0, 80.0);
        let ranking = rank_models(&rows, &[1, 2, 3, 4], p, Metric::HeatRate).unwrap();
        assert_eq!(ranking.first(), Some(&4));
        assert_eq!(ranking.last(), Some(&1));
        assert_eq!(rank_models(&rows, &[2], p, Metric::HeatRate).unwrap(), vec![2]);
        assert_eq!(improvement_ratio(&rows, 3, 3, p).unwrap(), 1.0);
        assert!(improvement_ratio(&rows, 3, 1, p).unwrap() > 1.0);
        let missing = PointKey::new(5000.0, 5.0, 80.0);
        assert!(matches!(
            rank_models(&rows, &[1, 2], missing, Metric::HeatRate),
            Err(AnalysisError::MissingModel { model: 1, .. })
        ));
    }

    #[test]
    fn ties_break_by_model_id() {
        let rows = run_sweep(&small(vec![2]), &Solver::default()).unwrap();
        let mut twin = rows[0].clone();
        twin.model = 1;
        let all = vec![rows[0].clone(), twin];
        let ranking = rank_models(&all, &[2, 1], rows[0].key(), Metric::HeatRate).unwrap();
        assert_eq!(ranking, vec![1, 2]);
    }

    #[test]
    fn zero_baseline_undefined() {
        let mut rows = run_sweep(&small(vec![1, 2]), &Solver::default()).unwrap();
        let p = rows[0].key();
        rows[0].heat_rate_w = 0.0;
        assert_eq!(improvement_ratio(&rows, 2, 1, p), Err(AnalysisError::ZeroBaseline));
    }

    #[test]
    fn summary_lists_rankings_and_ratios() {
        let rows = run_sweep(&small(vec![1, 4]), &Solver::default()).unwrap();
        let s = SweepSummary::from_rows(&rows);
        assert_eq!(s.rows, 8);
        assert_eq!(s.rankings.len(), 4);
        assert_eq!(s.improvement_ratios.len(), 4);
        assert!(s.rankings.iter().all(|r| r.ranking == vec![4, 1]));
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("improvement_ratios"));
    }

    #[test]
    fn spec_json_defaults() {
        let spec: SweepSpec = serde_json::from_str(r#"{"models":[2],"speeds_rpm":[0,5000]}"#).unwrap();
        assert_eq!(spec.n_axial_segments, 200);
        assert_eq!(spec.base, OperatingPoint::default());
        assert_eq!(spec.points().len(), 2);
    }
}
