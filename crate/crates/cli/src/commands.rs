use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use ilt_core::sampling::{format_decimal, read_samples_csv, write_samples_csv};
use ilt_core::*;

use crate::args::*;
use crate::manifest::RunManifest;

/// A failed command, sorted by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Numeric(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Data(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn usage(e: impl fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "usage error: {m}"),
            Failure::Data(m) => write!(f, "data error: {m}"),
            Failure::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFiniteEval { .. }
            | Error::NonFiniteCoefficient { .. }
            | Error::UnderResolved { .. }
            | Error::QuadratureOrder { .. } => Failure::Numeric(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Sample(a) => sample(a),
        Command::Reconstruct(a) => reconstruct_cmd(a),
        Command::Bound(a) => bound(a),
        Command::Figures(a) => figures(a),
        Command::Diagnose(a) => diagnose(a),
    }
}

fn open_output(path: Option<&Path>) -> std::result::Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => {
            let file =
                File::create(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(file))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_samples(path: &Path) -> std::result::Result<SampleSet, Failure> {
    let file = File::open(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    read_samples_csv(file).map_err(|e| match Failure::from(e) {
        Failure::Data(m) => Failure::Data(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn resolve_theta(sigma: f64, theta: Option<f64>) -> std::result::Result<f64, Failure> {
    let limit = theta0(sigma).map_err(Failure::usage)?;
    let theta = theta.unwrap_or(regularize::DEFAULT_THETA_FRACTION * limit);
    if !(theta > 0.0 && theta < limit) {
        return Err(Failure::Usage(format!(
            "theta = {theta} must satisfy 0 < theta < theta0(sigma) = {limit} for the error bound to contract"
        )));
    }
    Ok(theta)
}

fn check_eps(eps: Option<f64>) -> std::result::Result<(), Failure> {
    match eps {
        Some(e) if !(e.is_finite() && e > 0.0) => {
            Err(Failure::Usage(format!("eps = {e} must be positive")))
        }
        _ => Ok(()),
    }
}

/// Writes comment lines, a header row and numeric rows. Rows are checked for
/// finiteness before anything is written.
fn write_table(
    out: Option<&Path>,
    comments: &[String],
    header: &[&str],
    rows: &[Vec<f64>],
) -> Outcome {
    if let Some((i, _)) = rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.iter().any(|v| !v.is_finite()))
    {
        return Err(Failure::Numeric(format!(
            "non-finite value in output row {}",
            i + 1
        )));
    }
    let mut sink = open_output(out)?;
    for line in comments {
        writeln!(sink, "# {line}")?;
    }
    let mut writer = csv::Writer::from_writer(sink);
    let csv_err = |e: csv::Error| Failure::Data(e.to_string());
    writer.write_record(header).map_err(csv_err)?;
    for row in rows {
        writer
            .write_record(row.iter().map(|v| format_decimal(*v)))
            .map_err(csv_err)?;
    }
    writer.flush()?;
    Ok(())
}

fn nodes(schedule: NodeSchedule, sigma: f64, m: usize) -> Result<Vec<f64>> {
    match schedule {
        NodeSchedule::Harmonic => default_nodes(sigma, m),
        NodeSchedule::Spread => spread_nodes(sigma, m),
    }
}

fn sample(a: SampleArgs) -> Outcome {
    if !(a.sigma > 0.0 && a.sigma < 1.0) {
        return Err(Failure::Usage(format!(
            "sigma = {} must lie in (0, 1)",
            a.sigma
        )));
    }
    let points = nodes(a.nodes, a.sigma, a.m).map_err(Failure::usage)?;
    let f = a.function;
    let samples = make_samples(|x| f.eval(x), &points, a.quad_order)?;

    let mut manifest = RunManifest::new("sample");
    manifest
        .set("fn", f)
        .set("sigma", a.sigma)
        .set("m", a.m)
        .set("nodes", a.nodes.name())
        .set("quad_order", a.quad_order)
        .set_path("output", a.out.as_deref());
    let sink = open_output(a.out.as_deref())?;
    write_samples_csv(sink, &samples, &manifest.lines())?;
    Ok(())
}

fn reconstruct_cmd(a: ReconstructArgs) -> Outcome {
    check_eps(a.eps)?;
    let theta = resolve_theta(a.sigma, a.theta)?;
    let mut samples = read_samples(&a.samples)?;

    let mut manifest = RunManifest::new("reconstruct");
    manifest.set("sigma", a.sigma).set("theta", theta);

    let m = match a.eps {
        Some(eps) => {
            let profile = build_psi(&dm_profile(&samples.alphas(), a.radius, a.circle_grid)?)?;
            samples = add_noise(&samples, eps, a.seed)?;
            let m = match a.m {
                Some(m) => m,
                None => {
                    let choice = choose_m(eps, &profile)?;
                    if let Some(w) = choice.warning {
                        let note = match w {
                            ChoiceWarning::Clamped => "m(eps) fell below 1 and was clamped to 1",
                            ChoiceWarning::ProfileExhausted => "psi stays below eps^(-3/4) for every available m; using all samples",
                        };
                        eprintln!("warning: {note}");
                        manifest.set("warning", note);
                    }
                    choice.m
                }
            };
            manifest
                .set("eps", eps)
                .set("seed", a.seed)
                .set("radius", a.radius)
                .set("grid_size", a.circle_grid);
            m
        }
        None => a.m.unwrap_or(samples.len()),
    };
    if m > samples.len() {
        return Err(Error::NotEnoughSamples {
            m,
            available: samples.len(),
        }
        .into());
    }
    let config = ReconstructionConfig::new(a.sigma, theta, m).map_err(Failure::usage)?;
    let series = if a.no_truncate {
        samples.prefix(m)?.check_band(a.sigma)?;
        interpolate_untruncated(&samples, m)?
    } else {
        reconstruct(&samples, &config)?
    };

    manifest
        .set("m", m)
        .set("truncate", !a.no_truncate)
        .set(
            "x_grid",
            format!("{}:{}:{}", a.grid.start, a.grid.end, a.grid.points),
        )
        .set_path("input", Some(&a.samples))
        .set_path("output", a.out.as_deref());
    let mut comments = manifest.lines();
    comments.push(format!(
        "coefficients: {}",
        series
            .coeffs()
            .iter()
            .map(|c| format_decimal(*c))
            .collect::<Vec<_>>()
            .join(",")
    ));
    let rows: Vec<Vec<f64>> = a
        .grid
        .values()
        .into_iter()
        .map(|x| vec![x, series.eval(x)])
        .collect();
    write_table(
        a.out.as_deref(),
        &comments,
        &["x", "f_reconstructed"],
        &rows,
    )
}

fn bound(a: BoundArgs) -> Outcome {
    check_eps(a.eps)?;
    let theta = resolve_theta(a.sigma, a.theta)?;
    let (norm_sq, deriv_norm_sq) = match (a.function, a.norm_sq, a.deriv_norm_sq) {
        (Some(f), _, _) => (f.norm_sq(), f.sqrtx_deriv_norm_sq()),
        (None, Some(n), Some(d)) => (n, d),
        _ => {
            return Err(Failure::Usage(
                "give --fn, or both --norm-sq and --deriv-norm-sq".into(),
            ))
        }
    };
    let mut rows = Vec::new();
    for m in a.m.first..=a.m.last {
        let config = ReconstructionConfig::new(a.sigma, theta, m).map_err(Failure::usage)?;
        let budget = match a.eps {
            Some(eps) => thm3_bound(eps, &config, norm_sq, deriv_norm_sq),
            None => thm2_bound(&config, norm_sq, deriv_norm_sq),
        }
        .map_err(Failure::usage)?;
        rows.push(vec![
            m as f64,
            budget.bias,
            budget.tail,
            budget.noise,
            budget.total,
        ]);
    }

    let mut manifest = RunManifest::new("bound");
    manifest
        .set("sigma", a.sigma)
        .set("theta", theta)
        .set("m", format!("{}:{}", a.m.first, a.m.last))
        .set("norm_sq", norm_sq)
        .set("deriv_norm_sq", deriv_norm_sq)
        .set(
            "eps",
            a.eps.map_or_else(|| "-".to_string(), |e| e.to_string()),
        )
        .set_path("output", a.out.as_deref());
    if let Some(f) = a.function {
        manifest.set("fn", f);
    }
    write_table(
        a.out.as_deref(),
        &manifest.lines(),
        &["m", "bias", "tail", "noise", "total"],
        &rows,
    )
}

struct Figure {
    file: &'static str,
    function: TestFunction,
    m: usize,
    truncate: bool,
    half_width: f64,
}

const FIGURES: [Figure; 4] = [
    Figure {
        file: "fig1.csv",
        function: TestFunction::ExpNeg,
        m: 10,
        truncate: true,
        half_width: 1.8,
    },
    Figure {
        file: "fig2.csv",
        function: TestFunction::ExpNeg,
        m: 12,
        truncate: false,
        half_width: 1.8,
    },
    Figure {
        file: "fig3.csv",
        function: TestFunction::ExpQuarter,
        m: 4,
        truncate: true,
        half_width: 2.8,
    },
    Figure {
        file: "fig4.csv",
        function: TestFunction::ExpQuarter,
        m: 11,
        truncate: false,
        half_width: 2.8,
    },
];

const FIGURE_POINTS: usize = 361;

fn figures(a: FiguresArgs) -> Outcome {
    let theta = resolve_theta(a.sigma, a.theta)?;
    std::fs::create_dir_all(&a.out)
        .map_err(|e| Failure::Data(format!("{}: {e}", a.out.display())))?;
    for fig in &FIGURES {
        let f = fig.function;
        let points = default_nodes(a.sigma, fig.m)?;
        let samples = make_samples(|x| f.eval(x), &points, a.quad_order)?;
        let series = if fig.truncate {
            reconstruct(
                &samples,
                &ReconstructionConfig::new(a.sigma, theta, fig.m).map_err(Failure::usage)?,
            )?
        } else {
            interpolate_untruncated(&samples, fig.m)?
        };
        let grid = GridSpec {
            start: -fig.half_width,
            end: fig.half_width,
            points: FIGURE_POINTS,
        };
        let rows: Vec<Vec<f64>> = grid
            .values()
            .into_iter()
            .map(|x| vec![x, f.eval(x), series.eval(x)])
            .collect();
        let path = a.out.join(fig.file);
        let mut manifest = RunManifest::new("figures");
        manifest
            .set("figure", fig.file)
            .set("fn", f)
            .set("sigma", a.sigma)
            .set("theta", theta)
            .set("m", fig.m)
            .set("truncate", fig.truncate)
            .set("quad_order", a.quad_order)
            .set("nodes", "harmonic")
            .set(
                "x_grid",
                format!("{}:{}:{}", grid.start, grid.end, grid.points),
            )
            .set_path("output", Some(&path));
        write_table(
            Some(&path),
            &manifest.lines(),
            &["x", "f_true", "f_approx"],
            &rows,
        )?;
        let sup = rows.iter().map(|r| (r[1] - r[2]).abs()).fold(0.0, f64::max);
        println!(
            "{}  m={} {}  max|f_true - f_approx| = {sup:.4e}",
            path.display(),
            fig.m,
            if fig.truncate {
                "truncated"
            } else {
                "untruncated"
            }
        );
    }
    Ok(())
}

const EPS_GRID: [f64; 8] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8];

fn diagnose(a: DiagnoseArgs) -> Outcome {
    let samples = read_samples(&a.samples)?;
    let alphas = samples.alphas();
    let sigma = samples.max_abs_alpha();
    let trend = uniqueness_trend(samples.points())?;
    let profile = build_psi(&dm_profile(&alphas, a.radius, a.circle_grid)?)?;

    let mut manifest = RunManifest::new("diagnose");
    manifest
        .set("radius", a.radius)
        .set("grid_size", a.circle_grid)
        .set_path("input", Some(&a.samples))
        .set_path("output", a.out.as_deref());

    let mut sink = open_output(a.out.as_deref())?;
    for line in manifest.lines() {
        writeln!(sink, "# {line}")?;
    }
    writeln!(sink, "samples: {}", samples.len())?;
    writeln!(sink, "sigma (max |alpha|): {}", format_decimal(sigma))?;
    match theta0(sigma) {
        Ok(t) => writeln!(sink, "theta0: {}", format_decimal(t))?,
        Err(_) => writeln!(sink, "theta0: undefined (sigma outside (0, 1/3))")?,
    }
    let last = *trend.last().expect("sample files are non-empty");
    writeln!(
        sink,
        "uniqueness partial sum: {} over {} terms",
        format_decimal(last),
        trend.len()
    )?;
    let increments: Vec<f64> = trend
        .iter()
        .scan(0.0, |prev, s| {
            let d = s - *prev;
            *prev = *s;
            Some(d)
        })
        .collect();
    let smallest = increments.iter().copied().fold(f64::INFINITY, f64::min);
    writeln!(
        sink,
        "smallest increment 1 - |alpha_j|: {}",
        format_decimal(smallest)
    )?;
    writeln!(sink)?;
    writeln!(
        sink,
        "{:>4}  {:>24}  {:>24}  {:>24}  {:>24}  {:>24}",
        "m", "p", "alpha", "partial_sum", "D_m", "psi"
    )?;
    for (i, p) in samples.points().iter().enumerate() {
        writeln!(
            sink,
            "{:>4}  {:>24}  {:>24}  {:>24}  {:>24.16e}  {:>24.16e}",
            i + 1,
            format_decimal(*p),
            format_decimal(alphas[i]),
            format_decimal(trend[i]),
            profile.dms()[i],
            profile.psis()[i],
        )?;
    }
    writeln!(sink)?;
    writeln!(sink, "{:>8}  {:>6}  note", "eps", "m(eps)")?;
    for eps in EPS_GRID {
        let choice = choose_m(eps, &profile)?;
        let note = match choice.warning {
            None => "",
            Some(ChoiceWarning::Clamped) => "clamped to 1",
            Some(ChoiceWarning::ProfileExhausted) => "profile exhausted",
        };
        let line = format!("{eps:>8.0e}  {:>6}  {note}", choice.m);
        writeln!(sink, "{}", line.trim_end())?;
    }
    sink.flush()?;
    Ok(())
}
