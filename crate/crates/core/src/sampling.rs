//! Discrete Laplace data `{(p_j, μ_j)}` and the transforms that act on it.

use std::io::{Read, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quadrature::gauss_laguerre;

/// Slack allowed when checking `|α_j| ≤ σ`; `1 - 1/p` rarely reproduces σ to the last bit.
pub const BAND_TOLERANCE: f64 = 1e-12;

const DUPLICATE_RTOL: f64 = 1e-14;

/// Node `α = 1 - 1/p` in the unit disc for an abscissa `p > 1/2`.
pub fn alpha_of(p: f64) -> Result<f64> {
    if p.is_finite() && p > 0.5 {
        Ok(1.0 - 1.0 / p)
    } else {
        Err(Error::AbscissaTooSmall { index: 0, p })
    }
}

/// `∫_0^∞ e^{-px} f(x) dx`, rewritten as `(1/p) ∫_0^∞ f(t/p) e^{-t} dt` and evaluated
/// with an `order`-point Gauss–Laguerre rule.
pub fn forward_laplace<F: Fn(f64) -> f64>(f: F, p: f64, order: usize) -> Result<f64> {
    if !(p.is_finite() && p > 0.5) {
        return Err(Error::AbscissaTooSmall { index: 0, p });
    }
    let rule = gauss_laguerre(order)?;
    Ok(rule.try_integrate(|t| f(t / p))? / p)
}

/// Transform abscissae `p_j` with their sampled values `μ_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    points: Vec<f64>,
    values: Vec<f64>,
}

impl SampleSet {
    /// Validates finiteness, `p_j > 1/2` and pairwise distinct abscissae.
    pub fn new(points: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                values: values.len(),
            });
        }
        validate_points(&points)?;
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue { index });
        }
        Ok(Self { points, values })
    }

    pub fn empty() -> Self {
        Self {
            points: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `α_j = 1 - 1/p_j`.
    pub fn alphas(&self) -> Vec<f64> {
        self.points.iter().map(|p| 1.0 - 1.0 / p).collect()
    }

    /// `ν_j = p_j μ_j`, the values of `Φf` at `α_j`.
    pub fn scaled_values(&self) -> Vec<f64> {
        self.points
            .iter()
            .zip(&self.values)
            .map(|(p, mu)| p * mu)
            .collect()
    }

    /// `max_j |α_j|`, or 0 for an empty set.
    pub fn max_abs_alpha(&self) -> f64 {
        self.alphas().iter().fold(0.0, |acc, a| acc.max(a.abs()))
    }

    /// Checks `|α_j| ≤ σ` for every sample.
    pub fn check_band(&self, sigma: f64) -> Result<()> {
        for (index, alpha) in self.alphas().into_iter().enumerate() {
            if alpha.abs() > sigma + BAND_TOLERANCE {
                return Err(Error::OutOfBand {
                    index,
                    alpha,
                    sigma,
                });
            }
        }
        Ok(())
    }

    /// The first `m` samples.
    pub fn prefix(&self, m: usize) -> Result<SampleSet> {
        if m > self.len() {
            return Err(Error::NotEnoughSamples {
                m,
                available: self.len(),
            });
        }
        Ok(SampleSet {
            points: self.points[..m].to_vec(),
            values: self.values[..m].to_vec(),
        })
    }

    /// Copy with every value replaced; abscissae unchanged.
    pub fn with_values(&self, values: Vec<f64>) -> Result<SampleSet> {
        SampleSet::new(self.points.clone(), values)
    }
}

fn validate_points(points: &[f64]) -> Result<()> {
    for (index, &p) in points.iter().enumerate() {
        if !(p.is_finite() && p > 0.5) {
            return Err(Error::AbscissaTooSmall { index, p });
        }
        for (first, &q) in points[..index].iter().enumerate() {
            if (p - q).abs() <= DUPLICATE_RTOL * p.abs().max(q.abs()) {
                return Err(Error::DuplicateAbscissa { index, first, p });
            }
        }
    }
    Ok(())
}

/// Exact-data sample set `μ_j = forward_laplace(f, p_j, order)`.
pub fn make_samples<F: Fn(f64) -> f64>(f: F, points: &[f64], order: usize) -> Result<SampleSet> {
    validate_points(points)?;
    let values = points
        .iter()
        .map(|&p| forward_laplace(&f, p, order))
        .collect::<Result<Vec<_>>>()?;
    SampleSet::new(points.to_vec(), values)
}

/// Abscissae with nodes `α_j = σ/j`, `j = 1..=m`, accumulating at `p = 1`.
pub fn default_nodes(sigma: f64, m: usize) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma < 1.0 / 3.0) {
        return Err(Error::SigmaRange(sigma));
    }
    if m == 0 {
        return Err(Error::Empty("node count must be at least 1"));
    }
    Ok((1..=m).map(|j| 1.0 / (1.0 - sigma / j as f64)).collect())
}

/// Abscissae with nodes `α_j = σ (2 v(j) - 1)`, `v` the base-2 van der Corput sequence.
///
/// Nodes fill `(-σ, σ)` with spacing `O(σ/m)` and start at `α_1 = 0` (`p = 1`). Unlike
/// [`default_nodes`], whose spacing shrinks like `σ/j²`, the interpolation stays well
/// conditioned in `f64` beyond `m ≈ 14`.
pub fn spread_nodes(sigma: f64, m: usize) -> Result<Vec<f64>> {
    if !(sigma > 0.0 && sigma < 1.0 / 3.0) {
        return Err(Error::SigmaRange(sigma));
    }
    if m == 0 {
        return Err(Error::Empty("node count must be at least 1"));
    }
    Ok((1..=m)
        .map(|j| {
            let alpha = sigma * (2.0 * van_der_corput(j) - 1.0);
            1.0 / (1.0 - alpha)
        })
        .collect())
}

fn van_der_corput(mut j: usize) -> f64 {
    let mut value = 0.0;
    let mut digit = 0.5;
    while j > 0 {
        if j & 1 == 1 {
            value += digit;
        }
        digit *= 0.5;
        j >>= 1;
    }
    value
}

/// Perturbs the data so that `sup_j p_j |μ_j - μ_j^ε| < ε`.
///
/// Each scaled value `ν_j = p_j μ_j` receives an independent uniform draw from
/// `(-ε, ε)`; the stream is ChaCha8 seeded by `seed`, so output depends only on
/// `(samples, eps, seed)`.
pub fn add_noise(samples: &SampleSet, eps: f64, seed: u64) -> Result<SampleSet> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::NoiseLevel(eps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // shrink slightly so rounding in μ + η/p cannot reach the open bound
    let half_width = eps * (1.0 - 1e-9);
    let values = samples
        .points
        .iter()
        .zip(&samples.values)
        .map(|(&p, &mu)| {
            let eta: f64 = rng.gen_range(-half_width..half_width);
            mu + eta / p
        })
        .collect();
    samples.with_values(values)
}

/// Shifts abscissae accumulating at `ρ0 > 1` to `p'_j = p_j - ρ0 + 1`.
///
/// Data at the shifted points are the transform of `f̃(x) = e^{-(ρ0-1)x} f(x)`,
/// so a reconstruction of `f̃` is mapped back with [`unshift_value`].
pub fn shift_reduce(points: &[f64], rho0: f64) -> Result<Vec<f64>> {
    if !(rho0.is_finite() && rho0 >= 1.0) {
        return Err(Error::ShiftRange(rho0));
    }
    let shifted: Vec<f64> = points.iter().map(|p| p - rho0 + 1.0).collect();
    for (index, &p) in shifted.iter().enumerate() {
        if p <= 0.5 {
            return Err(Error::AbscissaTooSmall { index, p });
        }
    }
    Ok(shifted)
}

/// `f(x) = e^{(ρ0-1)x} f̃(x)`.
pub fn unshift_value(rho0: f64, x: f64, reduced: f64) -> f64 {
    ((rho0 - 1.0) * x).exp() * reduced
}

/// Partial sum over the first `count` abscissae of `1/p` (p > 1) and `(2p-1)/p`
/// (1/2 < p < 1), i.e. `Σ (1 - |α_j|)`.
///
/// Divergence of the full series gives uniqueness; a finite prefix can only show the trend.
pub fn uniqueness_partial_sum(points: &[f64], count: usize) -> Result<f64> {
    if count > points.len() {
        return Err(Error::InvalidArgument(format!(
            "prefix length {count} exceeds {} points",
            points.len()
        )));
    }
    validate_points(&points[..count])?;
    Ok(points[..count]
        .iter()
        .map(|&p| {
            if p >= 1.0 {
                1.0 / p
            } else {
                (2.0 * p - 1.0) / p
            }
        })
        .sum())
}

/// All partial sums `S_1, …, S_n` of [`uniqueness_partial_sum`].
pub fn uniqueness_trend(points: &[f64]) -> Result<Vec<f64>> {
    validate_points(points)?;
    let mut acc = 0.0;
    Ok(points
        .iter()
        .map(|&p| {
            acc += if p >= 1.0 {
                1.0 / p
            } else {
                (2.0 * p - 1.0) / p
            };
            acc
        })
        .collect())
}

/// Decimal rendering with 17 significant digits.
pub fn format_decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v:.16}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (16 - magnitude).clamp(0, 340) as usize;
    format!("{v:.decimals$}")
}

/// Writes `#`-prefixed comment lines, then a `p,mu` table.
pub fn write_samples_csv<W: Write>(
    mut out: W,
    samples: &SampleSet,
    comments: &[String],
) -> Result<()> {
    for line in comments {
        writeln!(out, "# {line}")?;
    }
    let mut writer = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    writer.write_record(["p", "mu"]).map_err(io)?;
    for (p, mu) in samples.points.iter().zip(&samples.values) {
        writer
            .write_record([format_decimal(*p), format_decimal(*mu)])
            .map_err(io)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a `p,mu` table, skipping `#` comment lines. Record numbers in errors are
/// 1-based data rows.
pub fn read_samples_csv<R: Read>(input: R) -> Result<SampleSet> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(|e| Error::SampleFormat {
        record: 0,
        message: e.to_string(),
    })?;
    if headers.len() != 2 || &headers[0] != "p" || &headers[1] != "mu" {
        return Err(Error::SampleFormat {
            record: 0,
            message: format!(
                "expected header 'p,mu', found '{}'",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut points = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| Error::SampleFormat {
            record: row,
            message: e.to_string(),
        })?;
        let field = |k: usize| -> Result<f64> {
            record[k].parse::<f64>().map_err(|e| Error::SampleFormat {
                record: row,
                message: format!("'{}': {e}", &record[k]),
            })
        };
        points.push(field(0)?);
        values.push(field(1)?);
    }
    SampleSet::new(points, values).map_err(|e| match e {
        Error::DuplicateAbscissa { index, first, p } => Error::SampleFormat {
            record: index + 1,
            message: format!("p = {p} duplicates row {}", first + 1),
        },
        Error::AbscissaTooSmall { index, p } => Error::SampleFormat {
            record: index + 1,
            message: format!("p = {p} must exceed 1/2"),
        },
        other => other,
    })
}
