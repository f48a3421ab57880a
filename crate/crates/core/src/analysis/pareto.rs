use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::geometry::{build_network, ShaftSpec, PROFILE_DEPTH_RANGE_MM};
use crate::solver::{OperatingPoint, Solver};

/// A design variant projected onto (heat per area, max pressure). Higher heat
/// and lower pressure are better.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub n_tooth_channels: u32,
    pub profile_depth_mm: f64,
    pub tooth_fill_fraction: f64,
    pub heat_per_area_w_m2: f64,
    pub max_pressure_pa: f64,
    #[serde(default)]
    pub dominated: bool,
}

impl ParetoPoint {
    /// `self` is at least as good on both axes and strictly better on one.
    pub fn dominates(&self, other: &Self) -> bool {
        self.heat_per_area_w_m2 >= other.heat_per_area_w_m2
            && self.max_pressure_pa <= other.max_pressure_pa
            && (self.heat_per_area_w_m2 > other.heat_per_area_w_m2
                || self.max_pressure_pa < other.max_pressure_pa)
    }

    fn finite(&self) -> bool {
        self.heat_per_area_w_m2.is_finite() && self.max_pressure_pa.is_finite()
    }
}

/// Flags for which points are dominated, O(n log n).
///
/// Points are visited by descending heat. A point is dominated if an earlier
/// group (strictly more heat) reached a pressure no higher than its own, or if
/// its own equal-heat group contains a strictly lower pressure. Points with
/// non-finite coordinates never make the front.
fn dominated_flags(points: &[ParetoPoint]) -> Vec<bool> {
    let mut order: Vec<usize> = (0..points.len()).filter(|&i| points[i].finite()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&points[a], &points[b]);
        pb.heat_per_area_w_m2
            .total_cmp(&pa.heat_per_area_w_m2)
            .then(pa.max_pressure_pa.total_cmp(&pb.max_pressure_pa))
    });

    let mut flags: Vec<bool> = points.iter().map(|p| !p.finite()).collect();
    let mut best_above = f64::INFINITY;
    let mut start = 0;
    while start < order.len() {
        let heat = points[order[start]].heat_per_area_w_m2;
        let end = start
            + order[start..]
                .iter()
                .take_while(|&&i| points[i].heat_per_area_w_m2 == heat)
                .count();
        // Sorted by pressure within the group, so the first is the minimum.
        let group_min = points[order[start]].max_pressure_pa;
        for &i in &order[start..end] {
            let p = points[i].max_pressure_pa;
            flags[i] = best_above <= p || p > group_min;
        }
        best_above = best_above.min(group_min);
        start = end;
    }
    flags
}

/// The nondominated points, in input order, with `dominated` cleared.
pub fn pareto_front(points: &[ParetoPoint]) -> Vec<ParetoPoint> {
    dominated_flags(points)
        .into_iter()
        .zip(points)
        .filter(|(d, _)| !d)
        .map(|(_, p)| ParetoPoint {
            dominated: false,
            ..*p
        })
        .collect()
}

/// Sets `dominated` on every point.
pub fn mark_dominated(points: &mut [ParetoPoint]) {
    let flags = dominated_flags(points);
    for (p, d) in points.iter_mut().zip(flags) {
        p.dominated = d;
    }
}

/// Axes of a design scan around a base shaft.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignScanSpec {
    pub tooth_counts: Vec<u32>,
    pub depths_mm: Vec<f64>,
    pub fill_fractions: Vec<f64>,
    #[serde(default)]
    pub operating_point: OperatingPoint,
    #[serde(default = "default_segments")]
    pub n_axial_segments: usize,
}

fn default_segments() -> usize {
    100
}

/// A variant that could not be built or solved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Infeasible {
    pub n_tooth_channels: u32,
    pub profile_depth_mm: f64,
    pub tooth_fill_fraction: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignScan {
    /// Every solved variant, in (tooth count, depth, fill) order, with the
    /// `dominated` flag set.
    pub points: Vec<ParetoPoint>,
    pub infeasible: Vec<Infeasible>,
}

impl DesignScan {
    pub fn front(&self) -> Vec<ParetoPoint> {
        pareto_front(&self.points)
    }
}

/// Solves every (tooth count, depth, fill) variant of `base` at the scan's
/// operating point.
///
/// Heat per area uses each variant's own wetted heated area, since the
/// catalogue interface area describes the unmodified shaft only.
pub fn design_scan(
    base: &ShaftSpec,
    scan: &DesignScanSpec,
    solver: &Solver,
) -> Result<DesignScan, AnalysisError> {
    let (lo, hi) = PROFILE_DEPTH_RANGE_MM;
    if let Some(&d) = scan.depths_mm.iter().find(|d| !(**d >= lo && **d <= hi)) {
        return Err(AnalysisError::DepthOutOfRange(d));
    }
    scan.operating_point.validate()?;
    solver.config.validate()?;

    let mut variants = Vec::new();
    for &n in &scan.tooth_counts {
        for &depth in &scan.depths_mm {
            for &fill in &scan.fill_fractions {
                variants.push((n, depth, fill));
            }
        }
    }
    let outcomes: Vec<Result<ParetoPoint, Infeasible>> = variants
        .par_iter()
        .map(|&(n, depth, fill)| {
            let spec = ShaftSpec {
                n_tooth_channels: n,
                profile_depth_mm: depth,
                tooth_fill_fraction: fill,
                ..base.clone()
            };
            let infeasible = |reason: String| Infeasible {
                n_tooth_channels: n,
                profile_depth_mm: depth,
                tooth_fill_fraction: fill,
                reason,
            };
            let net = build_network(&spec, scan.n_axial_segments)
                .map_err(|e| infeasible(e.to_string()))?;
            let r = solver
                .march(&net, &scan.operating_point)
                .map_err(|e| infeasible(e.to_string()))?;
            if !r.converged {
                return Err(infeasible(format!("not converged after {} iterations", r.iterations)));
            }
            Ok(ParetoPoint {
                n_tooth_channels: n,
                profile_depth_mm: depth,
                tooth_fill_fraction: fill,
                heat_per_area_w_m2: r.total_heat_rate_w / net.total_heated_area_m2,
                max_pressure_pa: r.max_gauge_pressure_pa,
                dominated: false,
            })
        })
        .collect();

    let mut points = Vec::new();
    let mut infeasible = Vec::new();
    for o in outcomes {
        match o {
            Ok(p) => points.push(p),
            Err(i) => infeasible.push(i),
        }
    }
    mark_dominated(&mut points);
    Ok(DesignScan { points, infeasible })
}
