//! Parametric shaft geometries and their one-dimensional channel networks.
//!
//! A [`ShaftSpec`] holds the catalogue dimensions of a shaft in millimetres.
//! [`build_network`] compiles it into an ordered list of [`FlowSegment`]s in SI
//! units, inlet to outlet. The hollow shaft (model 1) is a single bore; the
//! toothed shafts (models 2–4) route the coolant from an axial feed bore
//! through radial inlet holes into parallel axial tooth channels, then back to
//! the axis through radial outlet holes.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

const MM: f64 = 1e-3;
pub(crate) const MM2: f64 = 1e-6;

/// Lower bound on `n_axial_segments`.
pub const MIN_AXIAL_SEGMENTS: usize = 10;
/// Admissible profile depth for tooth channels, mm.
pub const PROFILE_DEPTH_RANGE_MM: (f64, f64) = (1.0, 6.0);
/// Search interval for [`calibrate_fill_fraction`].
pub const FILL_FRACTION_RANGE: (f64, f64) = (0.2, 0.8);
/// Relative area tolerance for [`calibrate_fill_fraction`].
pub const CALIBRATION_TOLERANCE: f64 = 1e-3;

// Dimension checks are done in mm on values like 47.8 + 2·4.4.
const FIT_SLACK_MM: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerProfile {
    None,
    Smooth,
    Wavy,
}

fn default_wavy_area_factor() -> f64 {
    1.15
}
fn default_wavy_perimeter_factor() -> f64 {
    0.95
}
fn default_min_casing_wall_mm() -> f64 {
    1.0
}

/// Catalogue dimensions of one shaft, in millimetres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShaftSpec {
    pub model_id: u8,
    pub l_total_mm: f64,
    pub l_tempfix_mm: f64,
    pub d_in_mm: f64,
    pub d_in_post_mm: f64,
    pub d_out_mm: f64,
    pub d_out_pre_mm: Option<f64>,
    pub d_outer_mm: f64,
    pub d_inner_mm: Option<f64>,
    pub fix_temp_area_mm2: f64,
    pub interface_area_mm2: f64,
    pub n_inlet_passages: u32,
    pub d_pin_mm: f64,
    pub n_outlet_passages: u32,
    pub d_pout_mm: f64,
    pub n_tooth_channels: u32,
    pub profile_depth_mm: f64,
    pub tooth_fill_fraction: f64,
    pub inner_profile: InnerProfile,
    /// Flow-area multiplier applied to wavy-profile channels.
    #[serde(default = "default_wavy_area_factor")]
    pub wavy_area_factor: f64,
    /// Wetted-perimeter multiplier applied to wavy-profile channels.
    #[serde(default = "default_wavy_perimeter_factor")]
    pub wavy_perimeter_factor: f64,
    /// Casing thickness floor used for the wall conduction resistance.
    #[serde(default = "default_min_casing_wall_mm")]
    pub min_casing_wall_mm: f64,
}

/// Which share of the catalogue interface area the heated tooth surface must
/// match during calibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AreaBasis {
    /// The full interface area.
    #[default]
    Full,
    /// Interface area scaled by L_tempfix / L_total.
    HeatedFraction,
}

impl ShaftSpec {
    pub fn has_teeth(&self) -> bool {
        self.n_tooth_channels > 0
    }

    /// Mean diameter of the tooth channel ring, mm.
    pub fn channel_mean_diameter_mm(&self) -> Option<f64> {
        self.d_inner_mm.map(|d| d + self.profile_depth_mm)
    }

    /// Circumferential width of one tooth channel, mm.
    pub fn channel_width_mm(&self) -> Option<f64> {
        let d_mean = self.channel_mean_diameter_mm()?;
        if self.n_tooth_channels == 0 {
            return None;
        }
        Some((1.0 - self.tooth_fill_fraction) * PI * d_mean / f64::from(self.n_tooth_channels))
    }

    /// Heated wetted area of the tooth channels (floor plus two flanks per
    /// channel over the fixed-temperature length), mm².
    pub fn tooth_heated_area_mm2(&self) -> Option<f64> {
        let w = self.channel_width_mm()?;
        Some(
            f64::from(self.n_tooth_channels)
                * (w + 2.0 * self.profile_depth_mm)
                * self.l_tempfix_mm,
        )
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(1..=4).contains(&self.model_id) {
            return Err(GeometryError::UnknownModel(self.model_id));
        }
        let positive = [
            ("l_total_mm", self.l_total_mm),
            ("l_tempfix_mm", self.l_tempfix_mm),
            ("d_in_mm", self.d_in_mm),
            ("d_in_post_mm", self.d_in_post_mm),
            ("d_out_mm", self.d_out_mm),
            ("d_outer_mm", self.d_outer_mm),
            ("fix_temp_area_mm2", self.fix_temp_area_mm2),
            ("interface_area_mm2", self.interface_area_mm2),
            ("min_casing_wall_mm", self.min_casing_wall_mm),
        ];
        for (what, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(GeometryError::NonPositive { what, value });
            }
        }
        if self.l_tempfix_mm > self.l_total_mm {
            return Err(GeometryError::NonPositive {
                what: "l_total_mm - l_tempfix_mm",
                value: self.l_total_mm - self.l_tempfix_mm,
            });
        }
        if let Some(d) = self.d_out_pre_mm {
            if !(d.is_finite() && d > 0.0) {
                return Err(GeometryError::NonPositive {
                    what: "d_out_pre_mm",
                    value: d,
                });
            }
        }
        if self.d_out_mm >= self.d_outer_mm {
            return Err(GeometryError::InnerNotInsideOuter {
                d_inner_mm: self.d_out_mm,
                d_outer_mm: self.d_outer_mm,
            });
        }
        if !self.has_teeth() {
            return Ok(());
        }

        let d_inner = self
            .d_inner_mm
            .ok_or(GeometryError::MissingField(self.model_id, "d_inner_mm"))?;
        if !(d_inner.is_finite() && d_inner > 0.0) {
            return Err(GeometryError::NonPositive {
                what: "d_inner_mm",
                value: d_inner,
            });
        }
        if d_inner >= self.d_outer_mm {
            return Err(GeometryError::InnerNotInsideOuter {
                d_inner_mm: d_inner,
                d_outer_mm: self.d_outer_mm,
            });
        }
        let tooth_positive = [
            ("d_pin_mm", self.d_pin_mm),
            ("d_pout_mm", self.d_pout_mm),
            ("wavy_area_factor", self.wavy_area_factor),
            ("wavy_perimeter_factor", self.wavy_perimeter_factor),
        ];
        for (what, value) in tooth_positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(GeometryError::NonPositive { what, value });
            }
        }
        for (what, n) in [
            ("n_inlet_passages", self.n_inlet_passages),
            ("n_outlet_passages", self.n_outlet_passages),
        ] {
            if n == 0 {
                return Err(GeometryError::NonPositive { what, value: 0.0 });
            }
        }
        let (lo, hi) = PROFILE_DEPTH_RANGE_MM;
        if !(lo..=hi).contains(&self.profile_depth_mm) {
            return Err(GeometryError::ProfileDepthOutOfRange {
                depth_mm: self.profile_depth_mm,
                min_mm: lo,
                max_mm: hi,
            });
        }
        let required = d_inner + 2.0 * self.profile_depth_mm;
        if required > self.d_outer_mm + FIT_SLACK_MM {
            return Err(GeometryError::RadialBudget {
                required_mm: required,
                d_outer_mm: self.d_outer_mm,
            });
        }
        if !(self.tooth_fill_fraction > 0.0 && self.tooth_fill_fraction < 1.0) {
            return Err(GeometryError::FillFraction(self.tooth_fill_fraction));
        }
        let width = self.channel_width_mm().unwrap_or(0.0);
        if width <= 0.0 {
            return Err(GeometryError::ChannelWidth { width_mm: width });
        }
        let r_channel = 0.5 * (d_inner + self.profile_depth_mm);
        if r_channel <= 0.5 * self.d_in_post_mm || r_channel <= 0.5 * self.d_out_mm {
            return Err(GeometryError::RadialBudget {
                required_mm: self.d_in_post_mm.max(self.d_out_mm),
                d_outer_mm: 2.0 * r_channel,
            });
        }
        Ok(())
    }
}

/// Default tooth depth: the full radial gap between inner tube and outer
/// diameter, clipped to the admissible range.
fn default_profile_depth_mm(d_outer: f64, d_inner: f64) -> f64 {
    let (lo, hi) = PROFILE_DEPTH_RANGE_MM;
    (0.5 * (d_outer - d_inner)).clamp(lo, hi)
}

/// Catalogue shaft `model_id` (1–4) with default tooth depth and a fill
/// fraction of 0.5.
pub fn preset(model_id: u8) -> Result<ShaftSpec, GeometryError> {
    let toothed = |l_total, l_tempfix, d_in, d_out, d_outer, d_inner, fix, iface, n_pass, d_pass, n_teeth, profile| {
        ShaftSpec {
            model_id,
            l_total_mm: l_total,
            l_tempfix_mm: l_tempfix,
            d_in_mm: d_in,
            d_in_post_mm: 9.0,
            d_out_mm: d_out,
            d_out_pre_mm: Some(18.0),
            d_outer_mm: d_outer,
            d_inner_mm: Some(d_inner),
            fix_temp_area_mm2: fix,
            interface_area_mm2: iface,
            n_inlet_passages: n_pass,
            d_pin_mm: d_pass,
            n_outlet_passages: n_pass,
            d_pout_mm: d_pass,
            n_tooth_channels: n_teeth,
            profile_depth_mm: default_profile_depth_mm(d_outer, d_inner),
            tooth_fill_fraction: 0.5,
            inner_profile: profile,
            wavy_area_factor: default_wavy_area_factor(),
            wavy_perimeter_factor: default_wavy_perimeter_factor(),
            min_casing_wall_mm: default_min_casing_wall_mm(),
        }
    };
    let spec = match model_id {
        1 => ShaftSpec {
            model_id: 1,
            l_total_mm: 340.35,
            l_tempfix_mm: 187.3,
            d_in_mm: 11.3,
            d_in_post_mm: 9.0,
            d_out_mm: 18.0,
            d_out_pre_mm: None,
            d_outer_mm: 52.1,
            d_inner_mm: None,
            fix_temp_area_mm2: 30660.0,
            interface_area_mm2: 41961.0,
            n_inlet_passages: 0,
            d_pin_mm: 0.0,
            n_outlet_passages: 0,
            d_pout_mm: 0.0,
            n_tooth_channels: 0,
            profile_depth_mm: 0.0,
            tooth_fill_fraction: 0.5,
            inner_profile: InnerProfile::None,
            wavy_area_factor: default_wavy_area_factor(),
            wavy_perimeter_factor: default_wavy_perimeter_factor(),
            min_casing_wall_mm: default_min_casing_wall_mm(),
        },
        2 => toothed(
            340.35, 169.2, 11.3, 18.0, 56.6, 47.8, 35476.0, 47547.0, 7, 4.5, 21,
            InnerProfile::Smooth,
        ),
        3 => toothed(
            340.35, 166.6, 11.0, 20.0, 56.6, 45.6, 34968.0, 46489.0, 7, 4.5, 21,
            InnerProfile::Wavy,
        ),
        4 => toothed(
            359.05, 171.2, 11.0, 20.0, 98.0, 88.2, 63882.0, 90393.0, 12, 6.0, 36,
            InnerProfile::Smooth,
        ),
        other => return Err(GeometryError::UnknownModel(other)),
    };
    Ok(spec)
}

/// Preset with its fill fraction calibrated against the full interface area.
pub fn calibrated_preset(model_id: u8) -> Result<ShaftSpec, GeometryError> {
    let spec = preset(model_id)?;
    if !spec.has_teeth() {
        return Ok(spec);
    }
    Ok(calibrate_fill_fraction(&spec, AreaBasis::Full).spec)
}

pub fn hydraulic_diameter(area_m2: f64, perimeter_m: f64) -> Result<f64, GeometryError> {
    if !(area_m2.is_finite() && area_m2 > 0.0) {
        return Err(GeometryError::NonPositive {
            what: "flow area",
            value: area_m2,
        });
    }
    if !(perimeter_m.is_finite() && perimeter_m > 0.0) {
        return Err(GeometryError::NonPositive {
            what: "wetted perimeter",
            value: perimeter_m,
        });
    }
    Ok(4.0 * area_m2 / perimeter_m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    AxialCore,
    RadialInlet,
    RadialOutlet,
    ToothChannel,
}

impl SegmentKind {
    pub fn is_radial(self) -> bool {
        matches!(self, Self::RadialInlet | Self::RadialOutlet)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::AxialCore => "axial_core",
            Self::RadialInlet => "radial_inlet",
            Self::RadialOutlet => "radial_outlet",
            Self::ToothChannel => "tooth_channel",
        }
    }
}

/// One control volume of the network. Areas and perimeters are totals over
/// the `n_parallel` identical passages.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSegment {
    pub kind: SegmentKind,
    pub length_m: f64,
    pub flow_area_m2: f64,
    pub wetted_perimeter_m: f64,
    /// Per passage.
    pub hydraulic_diameter_m: f64,
    pub mean_radius_m: f64,
    pub radius_start_m: f64,
    pub radius_end_m: f64,
    /// Exchanges heat with the fixed-temperature wall; otherwise with ambient
    /// air through free convection (or not at all if the area is zero).
    pub heated: bool,
    pub heat_exchange_area_m2: f64,
    pub n_parallel: u32,
    /// Length of the contiguous run this segment belongs to; sets the thermal
    /// entrance length.
    pub run_length_m: f64,
    /// Inner and outer radius of the solid wall behind a heated surface.
    pub wall_radii_m: Option<(f64, f64)>,
}

impl FlowSegment {
    pub fn passage_area_m2(&self) -> f64 {
        self.flow_area_m2 / f64::from(self.n_parallel)
    }

    pub fn passage_perimeter_m(&self) -> f64 {
        self.wetted_perimeter_m / f64::from(self.n_parallel)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelNetwork {
    pub segments: Vec<FlowSegment>,
    pub total_heated_area_m2: f64,
    pub spec: ShaftSpec,
}

struct Passage {
    n: u32,
    area: f64,
    perimeter: f64,
}

impl Passage {
    fn circular(n: u32, d: f64) -> Self {
        Self {
            n,
            area: 0.25 * PI * d * d,
            perimeter: PI * d,
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn axial_run(
    passage: &Passage,
    run_length: f64,
    pieces: usize,
    heat_area_per_length: f64,
    heated: bool,
    radius: f64,
    wall: Option<(f64, f64)>,
    kind: SegmentKind,
) -> Result<Vec<FlowSegment>, GeometryError> {
    let dh = hydraulic_diameter(passage.area, passage.perimeter)?;
    let n = f64::from(passage.n);
    let len = run_length / pieces as f64;
    Ok((0..pieces)
        .map(|_| FlowSegment {
            kind,
            length_m: len,
            flow_area_m2: n * passage.area,
            wetted_perimeter_m: n * passage.perimeter,
            hydraulic_diameter_m: dh,
            mean_radius_m: radius,
            radius_start_m: radius,
            radius_end_m: radius,
            heated,
            heat_exchange_area_m2: heat_area_per_length * len,
            n_parallel: passage.n,
            run_length_m: run_length,
            wall_radii_m: if heated { wall } else { None },
        })
        .collect())
}

fn radial(
    kind: SegmentKind,
    passage: &Passage,
    r_start: f64,
    r_end: f64,
) -> Result<FlowSegment, GeometryError> {
    let dh = hydraulic_diameter(passage.area, passage.perimeter)?;
    let n = f64::from(passage.n);
    let length = (r_end - r_start).abs();
    Ok(FlowSegment {
        kind,
        length_m: length,
        flow_area_m2: n * passage.area,
        wetted_perimeter_m: n * passage.perimeter,
        hydraulic_diameter_m: dh,
        mean_radius_m: 0.5 * (r_start + r_end),
        radius_start_m: r_start,
        radius_end_m: r_end,
        heated: false,
        heat_exchange_area_m2: 0.0,
        n_parallel: passage.n,
        run_length_m: length,
        wall_radii_m: None,
    })
}

/// Compiles a shaft into its serial flow path with `n_axial_segments`
/// control volumes along the heated run.
pub fn build_network(
    spec: &ShaftSpec,
    n_axial_segments: usize,
) -> Result<ChannelNetwork, GeometryError> {
    if n_axial_segments < MIN_AXIAL_SEGMENTS {
        return Err(GeometryError::TooFewSegments {
            min: MIN_AXIAL_SEGMENTS,
            got: n_axial_segments,
        });
    }
    spec.validate()?;

    let l_total = spec.l_total_mm * MM;
    let l_heat = spec.l_tempfix_mm * MM;
    let l_lead = 0.5 * (l_total - l_heat);
    let mut segments = Vec::with_capacity(n_axial_segments + 4);

    if !spec.has_teeth() {
        let d = spec.d_out_mm * MM;
        let bore = Passage::circular(1, d);
        let wall = Some((0.5 * d, 0.5 * spec.d_outer_mm * MM));
        let core = |len, pieces, heated| {
            axial_run(&bore, len, pieces, PI * d, heated, 0.0, wall, SegmentKind::AxialCore)
        };
        if l_lead > 0.0 {
            segments.extend(core(l_lead, 1, false)?);
        }
        segments.extend(core(l_heat, n_axial_segments, true)?);
        if l_lead > 0.0 {
            segments.extend(core(l_lead, 1, false)?);
        }
    } else {
        let d_inner = spec.d_inner_mm.expect("validated") * MM;
        let depth = spec.profile_depth_mm * MM;
        let width = spec.channel_width_mm().expect("validated") * MM;
        let r_channel = 0.5 * d_inner + 0.5 * depth;
        let r_floor = 0.5 * d_inner + depth;
        let r_casing = (0.5 * spec.d_outer_mm * MM).max(r_floor + spec.min_casing_wall_mm * MM);

        let (area_factor, perimeter_factor) = match spec.inner_profile {
            InnerProfile::Wavy => (spec.wavy_area_factor, spec.wavy_perimeter_factor),
            _ => (1.0, 1.0),
        };
        let channel = Passage {
            n: spec.n_tooth_channels,
            area: width * depth * area_factor,
            perimeter: 2.0 * (width + depth) * perimeter_factor,
        };
        let heated_per_length = f64::from(spec.n_tooth_channels) * (width + 2.0 * depth);

        let d_feed = spec.d_in_post_mm * MM;
        let d_exit = spec.d_out_mm * MM;
        let feed = Passage::circular(1, d_feed);
        let exit = Passage::circular(1, d_exit);

        if l_lead > 0.0 {
            segments.extend(axial_run(
                &feed,
                l_lead,
                1,
                PI * d_feed,
                false,
                0.0,
                None,
                SegmentKind::AxialCore,
            )?);
        }
        segments.push(radial(
            SegmentKind::RadialInlet,
            &Passage::circular(spec.n_inlet_passages, spec.d_pin_mm * MM),
            0.5 * d_feed,
            r_channel,
        )?);
        segments.extend(axial_run(
            &channel,
            l_heat,
            n_axial_segments,
            heated_per_length,
            true,
            r_channel,
            Some((r_floor, r_casing)),
            SegmentKind::ToothChannel,
        )?);
        segments.push(radial(
            SegmentKind::RadialOutlet,
            &Passage::circular(spec.n_outlet_passages, spec.d_pout_mm * MM),
            r_channel,
            0.5 * d_exit,
        )?);
        if l_lead > 0.0 {
            segments.extend(axial_run(
                &exit,
                l_lead,
                1,
                PI * d_exit,
                false,
                0.0,
                None,
                SegmentKind::AxialCore,
            )?);
        }
    }

    let total_heated_area_m2 = segments
        .iter()
        .filter(|s| s.heated)
        .map(|s| s.heat_exchange_area_m2)
        .sum();
    Ok(ChannelNetwork {
        segments,
        total_heated_area_m2,
        spec: spec.clone(),
    })
}

/// Outcome of [`calibrate_fill_fraction`].
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub spec: ShaftSpec,
    pub target_area_mm2: f64,
    pub achieved_area_mm2: f64,
    /// False when the target lies outside the fill-fraction search range and
    /// the nearest bound was returned.
    pub in_range: bool,
    pub iterations: usize,
}

/// Bisects the tooth fill fraction so the heated tooth area matches the
/// catalogue interface area (or its heated share, per `basis`).
///
/// Specs without teeth are returned unchanged and flagged out of range.
pub fn calibrate_fill_fraction(spec: &ShaftSpec, basis: AreaBasis) -> Calibration {
    let target = match basis {
        AreaBasis::Full => spec.interface_area_mm2,
        AreaBasis::HeatedFraction => spec.interface_area_mm2 * spec.l_tempfix_mm / spec.l_total_mm,
    };
    let area_at = |fill: f64| {
        let mut s = spec.clone();
        s.tooth_fill_fraction = fill;
        s.tooth_heated_area_mm2()
    };
    let Some(_) = area_at(0.5) else {
        return Calibration {
            spec: spec.clone(),
            target_area_mm2: target,
            achieved_area_mm2: f64::NAN,
            in_range: false,
            iterations: 0,
        };
    };
    let within = |area: f64| (area - target).abs() <= CALIBRATION_TOLERANCE * target;
    let done = |fill: f64, area: f64, in_range: bool, iterations: usize| {
        let mut s = spec.clone();
        s.tooth_fill_fraction = fill;
        Calibration {
            spec: s,
            target_area_mm2: target,
            achieved_area_mm2: area,
            in_range,
            iterations,
        }
    };

    let (mut lo, mut hi) = FILL_FRACTION_RANGE;
    // Area falls as the fill fraction grows.
    let area_lo = area_at(lo).unwrap();
    let area_hi = area_at(hi).unwrap();
    if target > area_lo && !within(area_lo) {
        return done(lo, area_lo, false, 0);
    }
    if target < area_hi && !within(area_hi) {
        return done(hi, area_hi, false, 0);
    }
    for iteration in 1..=100 {
        let mid = 0.5 * (lo + hi);
        let area = area_at(mid).unwrap();
        if within(area) {
            return done(mid, area, true, iteration);
        }
        if area > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    done(mid, area_at(mid).unwrap(), true, 100)
}

impl ChannelNetwork {
    pub fn n_segments(&self) -> usize {
        self.segments.len()
    }

    /// Largest segment mean radius, m.
    pub fn outermost_radius_m(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.mean_radius_m)
            .fold(0.0, f64::max)
    }

    /// Fixed-order `key: value` listing of the spec and the compiled network.
    pub fn describe(&self) -> String {
        let s = &self.spec;
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x}"));
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k}: {v}");
        };
        line("model_id", s.model_id.to_string());
        line("l_total_mm", s.l_total_mm.to_string());
        line("l_tempfix_mm", s.l_tempfix_mm.to_string());
        line("d_in_mm", s.d_in_mm.to_string());
        line("d_in_post_mm", s.d_in_post_mm.to_string());
        line("d_out_mm", s.d_out_mm.to_string());
        line("d_out_pre_mm", opt(s.d_out_pre_mm));
        line("d_outer_mm", s.d_outer_mm.to_string());
        line("d_inner_mm", opt(s.d_inner_mm));
        line("fix_temp_area_mm2", s.fix_temp_area_mm2.to_string());
        line("interface_area_mm2", s.interface_area_mm2.to_string());
        line("n_inlet_passages", s.n_inlet_passages.to_string());
        line("d_pin_mm", s.d_pin_mm.to_string());
        line("n_outlet_passages", s.n_outlet_passages.to_string());
        line("d_pout_mm", s.d_pout_mm.to_string());
        line("n_tooth_channels", s.n_tooth_channels.to_string());
        line("profile_depth_mm", format!("{:.6}", s.profile_depth_mm));
        line("tooth_fill_fraction", format!("{:.6}", s.tooth_fill_fraction));
        line(
            "inner_profile",
            match s.inner_profile {
                InnerProfile::None => "none",
                InnerProfile::Smooth => "smooth",
                InnerProfile::Wavy => "wavy",
            }
            .to_string(),
        );
        line("segments", self.segments.len().to_string());
        line(
            "total_heated_area_m2",
            format!("{:.6e}", self.total_heated_area_m2),
        );
        line("outermost_radius_m", format!("{:.6e}", self.outermost_radius_m()));
        // Consecutive identical kinds collapse into one group line.
        let mut groups: Vec<(SegmentKind, usize, &FlowSegment)> = Vec::new();
        for seg in &self.segments {
            match groups.last_mut() {
                Some((k, count, first)) if *k == seg.kind && first.heated == seg.heated => {
                    *count += 1
                }
                _ => groups.push((seg.kind, 1, seg)),
            }
        }
        for (i, (kind, count, seg)) in groups.iter().enumerate() {
            line(
                &format!("group_{i}"),
                format!(
                    "{} x{} n_parallel={} d_h_m={:.6e} area_m2={:.6e} r_start_m={:.6e} r_end_m={:.6e} heated={}",
                    kind.name(),
                    count,
                    seg.n_parallel,
                    seg.hydraulic_diameter_m,
                    seg.flow_area_m2,
                    seg.radius_start_m,
                    seg.radius_end_m,
                    seg.heated
                ),
            );
        }
        out
    }
}
