use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use rotorcool_core::analysis::{
    design_scan, format_sig6, format_significant, improvement_ratio, rank_models, run_sweep,
    write_csv, DesignScanSpec, Metric, PointKey, SweepRow, SweepSpec, SweepSummary,
};
use rotorcool_core::{build_network, OperatingPoint};
use serde::Serialize;

use crate::args::*;
use crate::config::FileConfig;
use crate::output::{destination, emit, to_json};

const DEFAULT_SEGMENTS: usize = 200;

fn sig4(x: f64) -> String {
    format_significant(x, 4)
}

/// Prints the human summary unless `--quiet`.
struct Reporter {
    quiet: bool,
}

impl Reporter {
    fn line(&self, s: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", s.as_ref());
        }
    }
}

fn operating_point(base: OperatingPoint, p: &PointArgs) -> OperatingPoint {
    OperatingPoint {
        rpm: p.rpm.unwrap_or(base.rpm),
        flow_lpm: p.flow_lpm.unwrap_or(base.flow_lpm),
        inlet_temp_c: p.inlet_temp_c.unwrap_or(base.inlet_temp_c),
        wall_temp_c: p.wall_temp_c.unwrap_or(base.wall_temp_c),
        ..base
    }
}

fn rows_bytes(rows: &[SweepRow], format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(rows, &mut buf)?;
            Ok(buf)
        }
        Format::Json => to_json(&rows),
    }
}

fn describe_point(row: &SweepRow) -> String {
    format!(
        "model {} at {} 1/min, {} l/min, {} °C",
        row.model,
        format_sig6(row.rpm),
        format_sig6(row.flow_lpm),
        format_sig6(row.inlet_temp_c)
    )
}

fn summary_line(row: &SweepRow) -> String {
    format!(
        "{}: outlet {} °C, heat {} W, max pressure {} bar, max velocity {} m/s{}",
        describe_point(row),
        sig4(row.outlet_temp_c),
        sig4(row.heat_rate_w),
        sig4(row.max_pressure_pa / 1e5),
        sig4(row.max_velocity_m_s),
        if row.converged { "" } else { " (NOT CONVERGED)" }
    )
}

/// Solves `models` at one point; rows that failed outright become errors.
fn solve_point(
    cfg: &FileConfig,
    models: Vec<u8>,
    op: OperatingPoint,
    segments: usize,
) -> Result<Vec<SweepRow>> {
    let spec = SweepSpec {
        models,
        speeds_rpm: vec![op.rpm],
        flows_lpm: vec![op.flow_lpm],
        inlet_temps_c: vec![op.inlet_temp_c],
        base: op,
        n_axial_segments: segments,
        allow_out_of_range: true,
        geometry: cfg.geometry.clone(),
        ..SweepSpec::default()
    };
    let rows = run_sweep(&spec, &cfg.solver()?)?;
    for r in &rows {
        if let (Some(e), true) = (&r.error, r.heat_rate_w.is_nan()) {
            bail!("{}: {e}", describe_point(r));
        }
    }
    Ok(rows)
}

fn simulate(a: &SimulateArgs, rep: &Reporter) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let op = operating_point(cfg.operating_point, &a.point);
    let rows = solve_point(&cfg, vec![a.model], op, a.segments.unwrap_or(DEFAULT_SEGMENTS))?;
    let row = &rows[0];
    if !row.converged {
        eprintln!("warning: {}", row.error.as_deref().unwrap_or("not converged"));
    }
    let dest = destination(&a.output, "simulate");
    emit(dest.as_deref(), &rows_bytes(&rows, a.output.format)?, false)?;
    rep.line(summary_line(row));
    Ok(())
}

fn sweep(a: &SweepArgs, rep: &Reporter) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let mut spec = cfg.sweep_spec();
    if !a.model.is_empty() {
        spec.models = a.model.clone();
    }
    if !a.rpm.is_empty() {
        spec.speeds_rpm = a.rpm.clone();
    }
    if !a.flow_lpm.is_empty() {
        spec.flows_lpm = a.flow_lpm.clone();
    }
    if !a.inlet_temp_c.is_empty() {
        spec.inlet_temps_c = a.inlet_temp_c.clone();
    }
    if let Some(t) = a.wall_temp_c {
        spec.base.wall_temp_c = t;
    }
    if let Some(n) = a.segments {
        spec.n_axial_segments = n;
    }
    spec.allow_out_of_range |= a.allow_out_of_range;
    // Preconditions fail here, before anything is written.
    spec.validate()?;

    let rows = run_sweep(&spec, &cfg.solver()?)?;
    let dest = destination(&a.output, "sweep");
    emit(dest.as_deref(), &rows_bytes(&rows, a.output.format)?, true)?;
    let summary = SweepSummary::from_rows(&rows);
    if let Some(path) = &a.summary {
        emit(Some(path), &to_json(&summary)?, false)?;
    }
    let msg = format!(
        "{} rows, {} converged{}",
        summary.rows,
        summary.converged_rows,
        dest.map(|d| format!(", written to {}", d.display())).unwrap_or_default()
    );
    // With the table on stdout the summary goes to stderr.
    if a.output.out.is_none() && destination(&a.output, "sweep").is_none() {
        if !rep.quiet {
            eprintln!("{msg}");
        }
    } else {
        rep.line(msg);
    }
    Ok(())
}

fn compare(a: &CompareArgs, rep: &Reporter) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let op = operating_point(cfg.operating_point, &a.point);
    let mut models = a.model.clone();
    models.sort_unstable();
    models.dedup();
    let mut solve = models.clone();
    if !solve.contains(&a.baseline) {
        solve.push(a.baseline);
    }
    let rows = solve_point(&cfg, solve, op, a.segments.unwrap_or(DEFAULT_SEGMENTS))?;
    let key = PointKey::new(op.rpm, op.flow_lpm, op.inlet_temp_c);
    let ranking = rank_models(&rows, &models, key, Metric::HeatRate)?;

    rep.line(format!(
        "{} 1/min, {} l/min, {} °C",
        format_sig6(op.rpm),
        format_sig6(op.flow_lpm),
        format_sig6(op.inlet_temp_c)
    ));
    rep.line(format!(
        "{:>5} {:>10} {:>10} {:>12} {:>12} {:>14} {:>10}",
        "model", "outlet °C", "heat W", "p_max bar", "v_max m/s", "heat/area W/m²", "vs model"
    ));
    for &m in &ranking {
        let r = rows.iter().find(|r| r.model == m).expect("solved");
        let ratio = improvement_ratio(&rows, m, a.baseline, key)
            .map(sig4)
            .unwrap_or_else(|_| "-".into());
        rep.line(format!(
            "{:>5} {:>10} {:>10} {:>12} {:>12} {:>14} {:>10}",
            m,
            sig4(r.outlet_temp_c),
            sig4(r.heat_rate_w),
            sig4(r.max_pressure_pa / 1e5),
            sig4(r.max_velocity_m_s),
            sig4(r.heat_per_area_w_m2),
            format!("{ratio} ×{}", a.baseline)
        ));
    }
    rep.line(format!(
        "ranking by heat rate: {}",
        ranking.iter().map(u8::to_string).collect::<Vec<_>>().join(" > ")
    ));

    let shown: Vec<SweepRow> = rows.into_iter().filter(|r| models.contains(&r.model)).collect();
    let dest = destination(&a.output, "compare");
    emit(dest.as_deref(), &rows_bytes(&shown, a.output.format)?, false)
}

fn props(a: &PropsArgs, rep: &Reporter) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let fluid = cfg.solver()?.fluid;
    let states: Vec<_> = match a.temperature_c {
        Some(t) => {
            if !t.is_finite() {
                bail!("temperature must be finite");
            }
            vec![fluid.fluid_at(t)]
        }
        None => fluid.rows().iter().map(|r| fluid.fluid_at(r.temperature_c)).collect(),
    };

    rep.line(format!(
        "{:>8} {:>9} {:>12} {:>9} {:>8} {:>12} {:>8}",
        "T °C", "ρ kg/m³", "ν m²/s", "c_p", "k", "μ Pa·s", "Pr"
    ));
    for s in &states {
        rep.line(format!(
            "{:>8} {:>9} {:>12} {:>9} {:>8} {:>12} {:>8}{}",
            format_sig6(s.temperature_c),
            format_sig6(s.density_kg_m3),
            format_sig6(s.kinematic_viscosity_m2_s),
            format_sig6(s.specific_heat_j_kgk),
            format_sig6(s.thermal_conductivity_w_mk),
            format_sig6(s.dynamic_viscosity_pa_s),
            sig4(s.prandtl),
            if s.clamped { "  (clamped)" } else { "" }
        ));
    }
    let report = fluid.consistency_check();
    rep.line(format!(
        "viscosity consistency |μ − ρν|/μ: max {}% ({})",
        sig4(report.max_relative * 100.0),
        if report.passed() { "within 0.5%" } else { "EXCEEDS 0.5%" }
    ));

    let bytes = match a.output.format {
        Format::Json => to_json(&states)?,
        Format::Csv => {
            let mut s = String::from(
                "temperature_c,density_kg_m3,kinematic_viscosity_m2_s,specific_heat_j_kgk,thermal_conductivity_w_mk,dynamic_viscosity_pa_s,prandtl,clamped\n",
            );
            for st in &states {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{}",
                    format_sig6(st.temperature_c),
                    format_sig6(st.density_kg_m3),
                    format_sig6(st.kinematic_viscosity_m2_s),
                    format_sig6(st.specific_heat_j_kgk),
                    format_sig6(st.thermal_conductivity_w_mk),
                    format_sig6(st.dynamic_viscosity_pa_s),
                    format_sig6(st.prandtl),
                    st.clamped
                );
            }
            s.into_bytes()
        }
    };
    emit(destination(&a.output, "props").as_deref(), &bytes, false)
}

#[derive(Serialize)]
struct ConvergenceRecord {
    n_segments: usize,
    outlet_temp_c: f64,
    max_pressure_pa: f64,
    converged: bool,
}

fn convergence(a: &ConvergenceArgs, rep: &Reporter) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let op = operating_point(cfg.operating_point, &a.point);
    let counts = if a.counts.is_empty() {
        vec![100, 200, 400]
    } else {
        a.counts.clone()
    };
    let spec = cfg.shaft(a.model)?;
    let table = cfg
        .solver()?
        .grid_convergence(|n| build_network(&spec, n), &op, &counts)?;
    let diffs = table.differences();

    rep.line(format!("{:>8} {:>16} {:>14} {:>12}", "segments", "outlet °C", "p_max Pa", "|ΔT_out|"));
    for (i, r) in table.rows.iter().enumerate() {
        let d = if i == 0 {
            "-".to_string()
        } else {
            format!("{:.3e}", diffs[i - 1].0)
        };
        rep.line(format!(
            "{:>8} {:>16.10} {:>14.6} {:>12}",
            r.n_segments, r.outlet_temperature_c, r.max_gauge_pressure_pa, d
        ));
    }
    if diffs.len() >= 2 {
        rep.line(format!("differences contract: {}", table.contracting()));
    }

    let records: Vec<ConvergenceRecord> = table
        .rows
        .iter()
        .map(|r| ConvergenceRecord {
            n_segments: r.n_segments,
            outlet_temp_c: r.outlet_temperature_c,
            max_pressure_pa: r.max_gauge_pressure_pa,
            converged: r.converged,
        })
        .collect();
    let bytes = match a.output.format {
        Format::Json => to_json(&records)?,
        Format::Csv => {
            // More digits than the sweep tables: the differences of interest
            // are far below six significant figures.
            let mut s = String::from("n_segments,outlet_temp_c,max_pressure_pa,converged\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},{:.12e},{:.12e},{}",
                    r.n_segments, r.outlet_temp_c, r.max_pressure_pa, r.converged
                );
            }
            s.into_bytes()
        }
    };
    emit(destination(&a.output, "convergence").as_deref(), &bytes, false)
}

fn design(a: &DesignScanArgs, rep: &Reporter) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let base = cfg.shaft(a.model)?;
    let mut scan = cfg.design_scan.clone().unwrap_or(DesignScanSpec {
        tooth_counts: vec![base.n_tooth_channels],
        depths_mm: vec![base.profile_depth_mm],
        fill_fractions: vec![base.tooth_fill_fraction],
        operating_point: cfg.operating_point,
        n_axial_segments: 100,
    });
    if !a.teeth.is_empty() {
        scan.tooth_counts = a.teeth.clone();
    }
    if !a.depths_mm.is_empty() {
        scan.depths_mm = a.depths_mm.clone();
    }
    if !a.fills.is_empty() {
        scan.fill_fractions = a.fills.clone();
    }
    scan.operating_point = operating_point(scan.operating_point, &a.point);
    if let Some(n) = a.segments {
        scan.n_axial_segments = n;
    }
    if scan.tooth_counts.is_empty() || scan.depths_mm.is_empty() || scan.fill_fractions.is_empty() {
        bail!("design scan needs at least one tooth count, depth and fill fraction");
    }

    let result = design_scan(&base, &scan, &cfg.solver()?)?;
    for i in &result.infeasible {
        eprintln!(
            "skipped: {} teeth, depth {} mm, fill {}: {}",
            i.n_tooth_channels,
            format_sig6(i.profile_depth_mm),
            format_sig6(i.tooth_fill_fraction),
            i.reason
        );
    }
    let front = result.front();
    rep.line(format!(
        "{} variants solved, {} infeasible, {} on the Pareto front",
        result.points.len(),
        result.infeasible.len(),
        front.len()
    ));
    for p in &front {
        rep.line(format!(
            "  {} teeth, depth {} mm, fill {}: {} W/m², {} bar",
            p.n_tooth_channels,
            sig4(p.profile_depth_mm),
            sig4(p.tooth_fill_fraction),
            sig4(p.heat_per_area_w_m2),
            sig4(p.max_pressure_pa / 1e5)
        ));
    }

    let bytes = match a.output.format {
        Format::Json => to_json(&result)?,
        Format::Csv => {
            let mut s = String::from(
                "n_tooth_channels,profile_depth_mm,tooth_fill_fraction,heat_per_area_w_m2,max_pressure_pa,dominated\n",
            );
            for p in &result.points {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    p.n_tooth_channels,
                    format_sig6(p.profile_depth_mm),
                    format_sig6(p.tooth_fill_fraction),
                    format_sig6(p.heat_per_area_w_m2),
                    format_sig6(p.max_pressure_pa),
                    p.dominated
                );
            }
            s.into_bytes()
        }
    };
    emit(destination(&a.output, "design-scan").as_deref(), &bytes, false)
}

fn config_show(a: &ConfigArg) -> Result<()> {
    let cfg = FileConfig::load(a.config.as_deref())?;
    let bytes = to_json(&cfg.effective())?;
    emit(None, &bytes, true)
}

fn geometry_describe(a: &DescribeArgs) -> Result<()> {
    let cfg = FileConfig::load(a.config.config.as_deref())?;
    let net = build_network(&cfg.shaft(a.model)?, a.segments)
        .with_context(|| format!("cannot build model {}", a.model))?;
    print!("{}", net.describe());
    Ok(())
}

pub fn run(cli: &Cli) -> Result<()> {
    let rep = Reporter { quiet: cli.quiet };
    match &cli.command {
        Command::Simulate(a) => simulate(a, &rep),
        Command::Sweep(a) => sweep(a, &rep),
        Command::Compare(a) => compare(a, &rep),
        Command::Props(a) => props(a, &rep),
        Command::Convergence(a) => convergence(a, &rep),
        Command::DesignScan(a) => design(a, &rep),
        Command::Config(ConfigCommand::Show(a)) => config_show(a),
        Command::Geometry(GeometryCommand::Describe(a)) => geometry_describe(a),
    }
}
