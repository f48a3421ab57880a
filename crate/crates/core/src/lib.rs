//! Reduced-order thermal-hydraulic model of liquid-cooled rotor shafts.
//!
//! The crate is layered bottom-up: [`properties`] interpolates the oil and
//! steel tables, [`geometry`] turns a shaft specification into a serial
//! network of flow segments, [`solver`] marches coolant temperature and
//! pressure through that network, and [`analysis`] runs sweeps, rankings and
//! design scans on top.

pub mod analysis;
pub mod error;
pub mod geometry;
pub mod properties;
pub mod solver;

pub use error::{AnalysisError, GeometryError, PropertyError, SolveError};
pub use geometry::{
    build_network, calibrate_fill_fraction, calibrated_preset, preset, AreaBasis, ChannelNetwork,
    FlowSegment, InnerProfile, SegmentKind, ShaftSpec,
};
pub use properties::{FluidPropertyTable, FluidState, SolidPropertyTable, SolidState};
pub use solver::{
    march, ConvergenceTable, OperatingPoint, SegmentState, SolveResult, Solver, SolverConfig,
};
