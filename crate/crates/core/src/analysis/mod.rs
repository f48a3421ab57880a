//! Batch studies on top of the solver: operating-point sweeps, model
//! rankings, the heat-per-area versus pressure trade-off and design scans.

mod fit;
mod format;
mod pareto;
mod sweep;

pub use fit::{quadratic_fit, QuadraticFit};
pub use format::{format_sig6, format_significant};
pub use pareto::{design_scan, mark_dominated, pareto_front, DesignScan, DesignScanSpec, Infeasible, ParetoPoint};
pub use sweep::{
    improvement_ratio, rank_models, run_sweep, write_csv, ImprovementEntry, Metric, PointKey,
    RankedPoint, SweepRow, SweepSpec, SweepSummary, CSV_HEADER, FLOW_RANGE_LPM, INLET_TEMP_RANGE_C, REFERENCE_FLOWS_LPM,
    REFERENCE_INLET_TEMPS_C, REFERENCE_SPEEDS_RPM, SPEED_RANGE_RPM,
};
