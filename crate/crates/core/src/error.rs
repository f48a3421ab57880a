//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PropertyError {
    #[error("property table is empty")]
    Empty,
    #[error("row {row}: temperatures must be strictly increasing ({prev} °C then {next} °C)")]
    NotIncreasing { row: usize, prev: f64, next: f64 },
    #[error("row {row}: {field} must be finite and positive, got {value}")]
    NonPositive {
        row: usize,
        field: &'static str,
        value: f64,
    },
    #[error("cannot read property file: {0}")]
    Parse(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("unknown shaft model {0}; expected 1, 2, 3 or 4")]
    UnknownModel(u8),
    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: f64 },
    #[error("n_axial_segments must be at least {min}, got {got}")]
    TooFewSegments { min: usize, got: usize },
    #[error("profile depth {depth_mm} mm outside the allowed range [{min_mm}, {max_mm}] mm")]
    ProfileDepthOutOfRange {
        depth_mm: f64,
        min_mm: f64,
        max_mm: f64,
    },
    #[error("tooth channel width is {width_mm:.4} mm; increase the tooth count spacing or lower the fill fraction")]
    ChannelWidth { width_mm: f64 },
    #[error("channel does not fit: D_inner + 2·depth = {required_mm:.3} mm exceeds D_outer = {d_outer_mm:.3} mm")]
    RadialBudget { required_mm: f64, d_outer_mm: f64 },
    #[error("inner tube diameter {d_inner_mm} mm must be smaller than outer diameter {d_outer_mm} mm")]
    InnerNotInsideOuter { d_inner_mm: f64, d_outer_mm: f64 },
    #[error("model {0} has tooth channels but is missing {1}")]
    MissingField(u8, &'static str),
    #[error("tooth fill fraction {0} must lie strictly between 0 and 1")]
    FillFraction(f64),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("invalid operating point: {0}")]
    OperatingPoint(String),
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("{what} must be positive, got {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("non-finite {quantity} in segment {segment} (iteration {iteration})")]
    NonFinite {
        quantity: &'static str,
        segment: usize,
        iteration: usize,
    },
    #[error("grid convergence counts must be ascending and each at least 10: {0:?}")]
    Counts(Vec<usize>),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("sweep has no axis to iterate: every axis is empty")]
    EmptySweep,
    #[error("{axis} value {value} lies outside the reference range [{min}, {max}]; set allow_out_of_range to override")]
    OutOfRange {
        axis: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("model {model} has no row at {rpm} 1/min, {flow_lpm} l/min, {inlet_temp_c} °C")]
    MissingModel {
        model: u8,
        rpm: f64,
        flow_lpm: f64,
        inlet_temp_c: f64,
    },
    #[error("baseline heat rate is zero; improvement ratio undefined")]
    ZeroBaseline,
    #[error("profile depth {0} mm is outside [1, 6] mm")]
    DepthOutOfRange(f64),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("csv output failed: {0}")]
    Csv(String),
}
