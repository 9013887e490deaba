//! Lagrange interpolation in monomial form at the nodes `α_j`, the truncation rule,
//! and the stability constants that drive the noise-adapted choice of `m`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default number of boundary samples used by [`compute_dm`].
pub const DEFAULT_GRID: usize = 4096;
pub const MIN_GRID: usize = 256;

const NODE_RTOL: f64 = 1e-14;

/// Polynomial `Σ c_k z^k`; trailing zeros are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialPoly {
    coeffs: Vec<f64>,
}

impl MonomialPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty("polynomial needs at least one coefficient"));
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Nominal degree, `len - 1`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * z + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }
}

fn check_distinct(nodes: &[f64]) -> Result<()> {
    for (i, &a) in nodes.iter().enumerate() {
        for (j, &b) in nodes[..i].iter().enumerate() {
            if (a - b).abs() <= NODE_RTOL * a.abs().max(b.abs()) {
                return Err(Error::DuplicateNode {
                    first: j,
                    second: i,
                    value: a,
                });
            }
        }
    }
    Ok(())
}

/// Monomial coefficients of the degree `≤ m-1` interpolant through `(nodes[k], values[k])`.
///
/// Builds the Newton form by divided differences, then expands it into the power
/// basis by nested multiplication with `(z - x_k)`.
pub fn lagrange_coeffs(nodes: &[f64], values: &[f64]) -> Result<MonomialPoly> {
    if nodes.len() != values.len() {
        return Err(Error::LengthMismatch {
            points: nodes.len(),
            values: values.len(),
        });
    }
    if nodes.is_empty() {
        return Err(Error::Empty("interpolation needs at least one node"));
    }
    check_distinct(nodes)?;
    let m = nodes.len();

    let mut dd = values.to_vec();
    for level in 1..m {
        for i in (level..m).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
        }
    }

    // p(z) = dd[0] + (z - x0)(dd[1] + (z - x1)(dd[2] + ...))
    let mut poly = vec![0.0; m];
    poly[0] = dd[m - 1];
    for k in (0..m - 1).rev() {
        let deg = m - 1 - k;
        for i in (1..=deg).rev() {
            poly[i] = poly[i - 1] - nodes[k] * poly[i];
        }
        poly[0] = dd[k] - nodes[k] * poly[0];
    }
    MonomialPoly::new(poly)
}

/// `K = ⌊θ(m-1)⌋`, the largest index kept by the truncation.
pub fn truncation_cutoff(m: usize, theta: f64) -> usize {
    let raw = theta * (m.saturating_sub(1)) as f64;
    (raw + 1e-12).floor().max(0.0) as usize
}

/// Zeroes every coefficient with index above `⌊θ(m-1)⌋`.
pub fn truncate_poly(poly: &MonomialPoly, m: usize, theta: f64) -> Result<MonomialPoly> {
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::TruncationFraction(theta));
    }
    if m == 0 || poly.coeffs.len() > m {
        return Err(Error::InvalidArgument(format!(
            "polynomial of degree {} exceeds m - 1 = {}",
            poly.degree(),
            m as i64 - 1
        )));
    }
    let cutoff = truncation_cutoff(m, theta);
    let coeffs = poly
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if k <= cutoff { c } else { 0.0 })
        .collect();
    Ok(MonomialPoly { coeffs })
}

/// `ω_m(z) = Π (z - α_j)`.
pub fn omega_eval(nodes: &[f64], z: Complex64) -> Complex64 {
    nodes
        .iter()
        .fold(Complex64::new(1.0, 0.0), |acc, &a| acc * (z - a))
}

/// `ω_m'(α_n) = Π_{j≠n} (α_n - α_j)`.
pub fn omega_prime(nodes: &[f64], n: usize) -> Result<f64> {
    if n >= nodes.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: nodes.len(),
        });
    }
    let a = nodes[n];
    Ok(nodes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != n)
        .map(|(_, &b)| a - b)
        .product())
}

/// `|ℓ_n(z)| = |ω_m(z) / ((z - α_n) ω_m'(α_n))|`, computed as a product of ratios.
pub fn lagrange_basis_abs(nodes: &[f64], n: usize, z: Complex64) -> f64 {
    let a = nodes[n];
    nodes
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != n)
        .map(|(_, &b)| (z - b).norm() / (a - b).abs())
        .product()
}

/// Points `R e^{2πik/grid}` on the circle of radius `R`.
pub fn circle_grid(radius: f64, grid_size: usize) -> Vec<Complex64> {
    (0..grid_size)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / grid_size as f64))
        .collect()
}

fn check_dm_args(nodes: &[f64], radius: f64, grid_size: usize) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::Empty("D_m needs at least one node"));
    }
    if grid_size < MIN_GRID {
        return Err(Error::GridTooCoarse(grid_size));
    }
    check_distinct(nodes)?;
    let max_node = nodes.iter().fold(0.0f64, |acc, a| acc.max(a.abs()));
    if radius.is_nan() || radius <= max_node {
        return Err(Error::RadiusTooSmall { radius, max_node });
    }
    Ok(())
}

/// `D_m = max_n max_{|z| ≤ R} |ℓ_n(z)|`.
///
/// Each `ℓ_n` is a polynomial, so the disc maximum sits on `|z| = R`; that circle is
/// sampled at `grid_size` equally spaced points.
pub fn compute_dm(nodes: &[f64], radius: f64, grid_size: usize) -> Result<f64> {
    check_dm_args(nodes, radius, grid_size)?;
    let grid = circle_grid(radius, grid_size);
    Ok(dm_on_grid(nodes, &grid))
}

fn dm_on_grid(nodes: &[f64], grid: &[Complex64]) -> f64 {
    if nodes.len() == 1 {
        return 1.0;
    }
    (0..nodes.len())
        .map(|n| {
            grid.iter()
                .map(|&z| lagrange_basis_abs(nodes, n, z))
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// `D_1, …, D_M` for the leading prefixes of `nodes`.
pub fn dm_profile(nodes: &[f64], radius: f64, grid_size: usize) -> Result<Vec<f64>> {
    check_dm_args(nodes, radius, grid_size)?;
    let grid = circle_grid(radius, grid_size);
    Ok((1..=nodes.len())
        .map(|m| dm_on_grid(&nodes[..m], &grid))
        .collect())
}

/// Tabulated `D_m` and the majorant `ψ(m) = max_{k ≤ m} k D_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilityProfile {
    dms: Vec<f64>,
    psis: Vec<f64>,
}

impl StabilityProfile {
    pub fn dms(&self) -> &[f64] {
        &self.dms
    }

    pub fn psis(&self) -> &[f64] {
        &self.psis
    }

    /// Largest tabulated `m`.
    pub fn max_m(&self) -> usize {
        self.dms.len()
    }

    /// `D_m` for `1 ≤ m ≤ max_m`.
    pub fn dm(&self, m: usize) -> Option<f64> {
        m.checked_sub(1).and_then(|i| self.dms.get(i)).copied()
    }

    /// `ψ(m)` for `1 ≤ m ≤ max_m`.
    pub fn psi(&self, m: usize) -> Option<f64> {
        m.checked_sub(1).and_then(|i| self.psis.get(i)).copied()
    }
}

pub fn build_psi(dms: &[f64]) -> Result<StabilityProfile> {
    if dms.is_empty() {
        return Err(Error::Empty("stability profile needs at least one D_m"));
    }
    if let Some(i) = dms.iter().position(|d| !(d.is_finite() && *d > 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "D_{} = {} must be positive and finite",
            i + 1,
            dms[i]
        )));
    }
    let mut running = 0.0f64;
    let psis = dms
        .iter()
        .enumerate()
        .map(|(i, d)| {
            running = running.max((i + 1) as f64 * d);
            running
        })
        .collect();
    Ok(StabilityProfile {
        dms: dms.to_vec(),
        psis,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChoiceWarning {
    /// Formula gave `m < 1` (including `ε^{-3/4} < ψ(1)`): clamped to `m = 1`.
    Clamped,
    /// `ψ(max_m) ≤ ε^{-3/4}`: the profile is too short to locate `ψ^{-1}`.
    ProfileExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MChoice {
    pub m: usize,
    pub warning: Option<ChoiceWarning>,
}

/// `m(ε) = ⌊ψ^{-1}(ε^{-3/4})⌋ - 1` with `ψ^{-1}` the generalized inverse over the table.
pub fn choose_m(eps: f64, profile: &StabilityProfile) -> Result<MChoice> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::NoiseLevel(eps));
    }
    let target = eps.powf(-0.75);
    // powf is not exact at integer targets (1e-4 -> 999.99...)
    let admissible = |psi: f64| psi <= target * (1.0 + 1e-12);
    let largest = profile.psis.iter().rposition(|&psi| admissible(psi));
    Ok(match largest {
        None => MChoice {
            m: 1,
            warning: Some(ChoiceWarning::Clamped),
        },
        Some(i) if i + 1 == profile.max_m() => MChoice {
            m: profile.max_m(),
            warning: Some(ChoiceWarning::ProfileExhausted),
        },
        Some(i) => {
            let m_inv = i + 1;
            if m_inv <= 1 {
                MChoice {
                    m: 1,
                    warning: Some(ChoiceWarning::Clamped),
                }
            } else {
                MChoice {
                    m: m_inv - 1,
                    warning: None,
                }
            }
        }
    })
}
