use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "rotorcool",
    version,
    about = "Steady thermal-hydraulic model of liquid-cooled rotor shafts"
)]
pub struct Cli {
    /// Suppress the human-readable summary on stdout.
    #[arg(short, long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one shaft at one operating point.
    Simulate(SimulateArgs),
    /// Solve a grid of models and operating points.
    Sweep(SweepArgs),
    /// Solve several models at one operating point and rank them.
    Compare(CompareArgs),
    /// Print the oil property table or the state at one temperature.
    Props(PropsArgs),
    /// Grid-refinement study for one shaft.
    Convergence(ConvergenceArgs),
    /// Scan tooth count, profile depth and fill fraction around a shaft.
    DesignScan(DesignScanArgs),
    /// Configuration utilities.
    #[command(subcommand)]
    Config(ConfigCommand),
    /// Geometry utilities.
    #[command(subcommand)]
    Geometry(GeometryCommand),
}

#[derive(Debug, Subcommand)]
pub enum ConfigCommand {
    /// Print the effective configuration (defaults merged with --config).
    Show(ConfigArg),
}

#[derive(Debug, Subcommand)]
pub enum GeometryCommand {
    /// Print the compiled flow network of a shaft.
    Describe(DescribeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
pub struct ConfigArg {
    /// JSON configuration file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; replaced atomically. Defaults to $ROTORCOOL_OUT_DIR/<command>.<format> when that variable is set.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Operating-point flags shared by single-point commands.
#[derive(Debug, Args)]
pub struct PointArgs {
    /// Rotational speed, 1/min [default: 10000].
    #[arg(long, value_name = "N")]
    pub rpm: Option<f64>,
    /// Inlet flow, l/min [default: 5].
    #[arg(long, value_name = "X")]
    pub flow_lpm: Option<f64>,
    /// Inlet temperature, °C [default: 80].
    #[arg(long, value_name = "X")]
    pub inlet_temp_c: Option<f64>,
    /// Heated wall temperature, °C [default: 100].
    #[arg(long, value_name = "X")]
    pub wall_temp_c: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub model: u8,
    #[command(flatten)]
    pub point: PointArgs,
    /// Axial control volumes along the heated run [default: 200].
    #[arg(long, value_name = "N")]
    pub segments: Option<usize>,
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Models to sweep; replaces the configured list.
    #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=4))]
    pub model: Vec<u8>,
    /// Speeds, 1/min, comma separated; replaces the configured list.
    #[arg(long, value_delimiter = ',', value_name = "N,..")]
    pub rpm: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_name = "X,..")]
    pub flow_lpm: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_name = "X,..")]
    pub inlet_temp_c: Vec<f64>,
    #[arg(long, value_name = "X")]
    pub wall_temp_c: Option<f64>,
    #[arg(long, value_name = "N")]
    pub segments: Option<usize>,
    /// Allow values outside the reference grid ranges.
    #[arg(long)]
    pub allow_out_of_range: bool,
    /// Also write a JSON summary with rankings and improvement ratios.
    #[arg(long, value_name = "PATH")]
    pub summary: Option<PathBuf>,
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Models to compare.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4",
          value_parser = clap::value_parser!(u8).range(1..=4))]
    pub model: Vec<u8>,
    /// Reference model for improvement ratios.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub baseline: u8,
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_name = "N")]
    pub segments: Option<usize>,
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PropsArgs {
    /// Interpolate at this temperature instead of printing the table.
    #[arg(long, value_name = "X")]
    pub temperature_c: Option<f64>,
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub model: u8,
    #[command(flatten)]
    pub point: PointArgs,
    /// Segment counts, ascending [default: 100,200,400].
    #[arg(long, value_delimiter = ',', value_name = "N,..")]
    pub counts: Vec<usize>,
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DesignScanArgs {
    /// Base shaft; must have tooth channels.
    #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
    pub model: u8,
    #[arg(long, value_delimiter = ',', value_name = "N,..")]
    pub teeth: Vec<u32>,
    /// Profile depths, mm, within [1, 6].
    #[arg(long, value_delimiter = ',', value_name = "X,..")]
    pub depths_mm: Vec<f64>,
    #[arg(long, value_delimiter = ',', value_name = "X,..")]
    pub fills: Vec<f64>,
    #[command(flatten)]
    pub point: PointArgs,
    #[arg(long, value_name = "N")]
    pub segments: Option<usize>,
    #[command(flatten)]
    pub config: ConfigArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DescribeArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub model: u8,
    /// Axial control volumes along the heated run.
    #[arg(long, default_value_t = 10, value_name = "N")]
    pub segments: usize,
    #[command(flatten)]
    pub config: ConfigArg,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn simulate_defaults_left_to_config() {
        let cli = Cli::try_parse_from(["rotorcool", "simulate", "--model", "1", "--rpm", "10000"]).unwrap();
        let Command::Simulate(a) = cli.command else { panic!() };
        assert_eq!(a.model, 1);
        assert_eq!(a.point.rpm, Some(10000.0));
        assert_eq!(a.point.flow_lpm, None);
        assert_eq!(a.output.format, Format::Csv);
    }

    #[test]
    fn model_out_of_range_is_usage_error() {
        let err = Cli::try_parse_from(["rotorcool", "simulate", "--model", "5"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn lists_split_on_commas() {
        let cli = Cli::try_parse_from(["rotorcool", "sweep", "--rpm", "0,5000", "--model", "2,3"]).unwrap();
        let Command::Sweep(a) = cli.command else { panic!() };
        assert_eq!(a.rpm, vec![0.0, 5000.0]);
        assert_eq!(a.model, vec![2, 3]);
    }
}
