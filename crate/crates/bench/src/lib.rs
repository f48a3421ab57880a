//! Fixtures shared by the benchmarks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rotorcool_core::analysis::{ParetoPoint, SweepSpec};
use rotorcool_core::{build_network, calibrated_preset, ChannelNetwork};

pub fn network(model: u8, n_segments: usize) -> ChannelNetwork {
    build_network(&calibrated_preset(model).unwrap(), n_segments).unwrap()
}

/// Two models, two speeds, two flows, one temperature.
pub fn small_sweep() -> SweepSpec {
    SweepSpec {
        models: vec![1, 4],
        speeds_rpm: vec![0.0, 10000.0],
        flows_lpm: vec![3.0, 6.0],
        inlet_temps_c: vec![80.0],
        n_axial_segments: 100,
        ..SweepSpec::default()
    }
}

/// Random design cloud with a seeded generator.
pub fn pareto_cloud(n: usize, seed: u64) -> Vec<ParetoPoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|i| ParetoPoint {
            n_tooth_channels: i as u32,
            profile_depth_mm: 3.0,
            tooth_fill_fraction: 0.5,
            heat_per_area_w_m2: rng.gen_range(1e4..1e5),
            max_pressure_pa: rng.gen_range(1e4..5e5),
            dominated: false,
        })
        .collect()
}
