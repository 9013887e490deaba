use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ilt_core::quadrature::MAX_ORDER;
use ilt_core::TestFunction;

#[derive(Debug, Parser)]
#[command(
    name = "ilt",
    version,
    about = "Inverse Laplace transform from real samples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the Laplace transform of a test function at the interpolation points.
    Sample(SampleArgs),
    /// Reconstruct a function from a `p,mu` sample file.
    Reconstruct(ReconstructArgs),
    /// Tabulate the squared-error budget over a range of m.
    Bound(BoundArgs),
    /// Write the four example data sets (fig1.csv .. fig4.csv).
    Figures(FiguresArgs),
    /// Report node geometry and stability constants of a sample file.
    Diagnose(DiagnoseArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NodeSchedule {
    /// α_j = σ / j
    Harmonic,
    /// α_j = σ (2 v(j) - 1), v the base-2 van der Corput sequence
    Spread,
}

impl NodeSchedule {
    pub fn name(self) -> &'static str {
        match self {
            NodeSchedule::Harmonic => "harmonic",
            NodeSchedule::Spread => "spread",
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long = "fn", value_parser = TestFunction::from_str)]
    pub function: TestFunction,
    #[arg(long, default_value_t = 0.25)]
    pub sigma: f64,
    #[arg(long, value_parser = positive)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = NodeSchedule::Harmonic)]
    pub nodes: NodeSchedule,
    #[arg(long, default_value_t = 64, value_parser = quad_order)]
    pub quad_order: usize,
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReconstructArgs {
    /// Sample file with columns `p,mu`
    pub samples: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    pub sigma: f64,
    /// Truncation fraction (default 0.99 θ0(σ))
    #[arg(long)]
    pub theta: Option<f64>,
    /// Interpolation order (default: all samples, or m(ε) when --eps is given)
    #[arg(long, value_parser = positive)]
    pub m: Option<usize>,
    /// Add uniform noise of this amplitude to the samples before reconstructing
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Circle radius for the stability constants D_m
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Points on the circle used for D_m
    #[arg(long, default_value_t = ilt_core::interpolation::DEFAULT_GRID, value_parser = circle_points)]
    pub circle_grid: usize,
    /// Evaluation grid as start:end:points
    #[arg(long, default_value = "0:5:101", allow_hyphen_values = true)]
    pub grid: GridSpec,
    /// Keep every Lagrange coefficient
    #[arg(long)]
    pub no_truncate: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 0.25)]
    pub sigma: f64,
    #[arg(long)]
    pub theta: Option<f64>,
    /// Range of m as `first:last`, or `last` for 1:last
    #[arg(long, default_value = "1:20")]
    pub m: MRange,
    /// Take both norms from a test function
    #[arg(long = "fn", value_parser = TestFunction::from_str)]
    pub function: Option<TestFunction>,
    /// ‖f‖² in L²ρ
    #[arg(long, conflicts_with = "function", requires = "deriv_norm_sq")]
    pub norm_sq: Option<f64>,
    /// ‖√x f'‖² in L²ρ
    #[arg(long, conflicts_with = "function", requires = "norm_sq")]
    pub deriv_norm_sq: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value_t = 0.25)]
    pub sigma: f64,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 64, value_parser = quad_order)]
    pub quad_order: usize,
    /// Output directory
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    pub samples: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, default_value_t = ilt_core::interpolation::DEFAULT_GRID, value_parser = circle_points)]
    pub circle_grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        let step = (self.end - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.start + step * i as f64)
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(format!("grid `{s}` is not of the form start:end:points"));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("grid `{s}`: {e}"))
        };
        let (start, end) = (num(a)?, num(b)?);
        let points: usize = n.trim().parse().map_err(|e| format!("grid `{s}`: {e}"))?;
        if points == 0 {
            return Err(format!("grid `{s}` is empty"));
        }
        if !(start.is_finite() && end.is_finite()) || end < start {
            return Err(format!("grid `{s}` needs finite start <= end"));
        }
        Ok(GridSpec { start, end, points })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MRange {
    pub first: usize,
    pub last: usize,
}

impl FromStr for MRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (first, last) = match s.split_once(':') {
            Some((a, b)) => (positive(a)?, positive(b)?),
            None => (1, positive(s)?),
        };
        if first > last {
            return Err(format!("m range `{s}` is empty"));
        }
        Ok(MRange { first, last })
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn quad_order(s: &str) -> Result<usize, String> {
    let q = positive(s)?;
    if q > MAX_ORDER {
        return Err(format!("quadrature order is limited to {MAX_ORDER}"));
    }
    Ok(q)
}

fn circle_points(s: &str) -> Result<usize, String> {
    let n = positive(s)?;
    if n < ilt_core::interpolation::MIN_GRID {
        return Err(format!(
            "at least {} circle points are needed",
            ilt_core::interpolation::MIN_GRID
        ));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parses() {
        let g: GridSpec = "0:2:5".parse().unwrap();
        assert_eq!(g.values(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!("1:1:1".parse::<GridSpec>().unwrap().values(), vec![1.0]);
        assert!("0:1:0".parse::<GridSpec>().is_err());
        assert!("0:1".parse::<GridSpec>().is_err());
        assert!("2:1:4".parse::<GridSpec>().is_err());
    }

    #[test]
    fn m_range_parses() {
        assert_eq!(
            "20".parse::<MRange>().unwrap(),
            MRange { first: 1, last: 20 }
        );
        assert_eq!(
            "3:7".parse::<MRange>().unwrap(),
            MRange { first: 3, last: 7 }
        );
        assert!("0:3".parse::<MRange>().is_err());
        assert!("5:3".parse::<MRange>().is_err());
    }
}
