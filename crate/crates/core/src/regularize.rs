//! Reconstruction `F_m = Φ^{-1} L_m^θ(T_m f)` and its error budgets.
//!
//! The scaled samples `ν_j = p_j μ_j` are the values of `Φf` at `α_j = 1 - 1/p_j`.
//! Interpolating them, discarding monomial coefficients above `⌊θ(m-1)⌋`, and reading
//! the survivors as Laguerre coefficients gives the regularized solution. Keeping
//! `θ < θ0(σ)` makes the contraction ratio `q = 2σ^{1-θ}/(1-σ)` less than one, which is
//! what drives the bias term of the bound to zero.

use crate::error::{Error, Result};
use crate::interpolation::{lagrange_coeffs, truncate_poly, truncation_cutoff};
use crate::laguerre::{l2rho_norm_sq, LaguerreSeries};
use crate::sampling::SampleSet;

/// Default quadrature order for error measurement.
pub const DEFAULT_QUAD_ORDER: usize = 64;

/// Fraction of `θ0` used when no truncation fraction is given.
pub const DEFAULT_THETA_FRACTION: f64 = 0.99;

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma < 1.0 / 3.0 {
        Ok(())
    } else {
        Err(Error::SigmaRange(sigma))
    }
}

/// Root of `2σ^{1-x}/(1-σ) = 1`, i.e. `1 - ln((1-σ)/2) / ln σ`.
pub fn theta0(sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(1.0 - ((1.0 - sigma) / 2.0).ln() / sigma.ln())
}

/// `q(σ, θ) = 2σ^{1-θ}/(1-σ)`.
pub fn contraction_ratio(sigma: f64, theta: f64) -> f64 {
    2.0 * sigma.powf(1.0 - theta) / (1.0 - sigma)
}

/// Validated parameters of one reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructionConfig {
    sigma: f64,
    theta: f64,
    m: usize,
    quad_order: usize,
}

impl ReconstructionConfig {
    pub fn new(sigma: f64, theta: f64, m: usize) -> Result<Self> {
        let limit = theta0(sigma)?;
        if !(theta > 0.0 && theta < limit) {
            return Err(Error::ThetaRange {
                theta,
                theta0: limit,
            });
        }
        if m == 0 {
            return Err(Error::Empty("interpolation order m must be at least 1"));
        }
        Ok(Self {
            sigma,
            theta,
            m,
            quad_order: DEFAULT_QUAD_ORDER,
        })
    }

    /// `θ = 0.99 θ0(σ)`.
    pub fn with_default_theta(sigma: f64, m: usize) -> Result<Self> {
        Self::new(sigma, DEFAULT_THETA_FRACTION * theta0(sigma)?, m)
    }

    pub fn with_quad_order(mut self, order: usize) -> Self {
        self.quad_order = order;
        self
    }

    pub fn with_m(self, m: usize) -> Result<Self> {
        Self::new(self.sigma, self.theta, m).map(|c| c.with_quad_order(self.quad_order))
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn quad_order(&self) -> usize {
        self.quad_order
    }

    /// `K = ⌊θ(m-1)⌋`.
    pub fn cutoff(&self) -> usize {
        truncation_cutoff(self.m, self.theta)
    }

    pub fn theta0(&self) -> f64 {
        theta0(self.sigma).expect("sigma validated at construction")
    }

    pub fn ratio(&self) -> f64 {
        contraction_ratio(self.sigma, self.theta)
    }
}

fn interpolant(samples: &SampleSet, m: usize, sigma: Option<f64>) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::Empty("interpolation order m must be at least 1"));
    }
    let used = samples.prefix(m)?;
    if let Some(sigma) = sigma {
        used.check_band(sigma)?;
    }
    Ok(lagrange_coeffs(&used.alphas(), &used.scaled_values())?.into_coeffs())
}

/// Regularized reconstruction from the first `m` samples; the result has `K + 1`
/// Laguerre coefficients.
pub fn reconstruct(samples: &SampleSet, config: &ReconstructionConfig) -> Result<LaguerreSeries> {
    let full = interpolant(samples, config.m, Some(config.sigma))?;
    let poly = crate::interpolation::MonomialPoly::new(full)?;
    let mut kept = truncate_poly(&poly, config.m, config.theta)?.into_coeffs();
    kept.truncate(config.cutoff() + 1);
    LaguerreSeries::new(kept)
}

/// Full Lagrange interpolant `Φ^{-1} L_m(ν)` from the first `m` samples, without
/// truncation. Not a regularizer: shown for comparison with [`reconstruct`].
pub fn interpolate_untruncated(samples: &SampleSet, m: usize) -> Result<LaguerreSeries> {
    LaguerreSeries::new(interpolant(samples, m, None)?)
}

/// Terms of the squared-error bound, reported separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    pub bias: f64,
    pub tail: f64,
    pub noise: f64,
    pub total: f64,
}

fn check_norm(value: f64, what: &str) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "{what} = {value} must be finite and nonnegative"
        )))
    }
}

/// Exact-data bound `(1+mθ)² ‖f‖² q^{2m} + ‖√x f'‖² / (mθ)`.
///
/// Both norm arguments are squared norms.
pub fn thm2_bound(
    config: &ReconstructionConfig,
    norm_f_sq: f64,
    deriv_norm_sq: f64,
) -> Result<ErrorBudget> {
    check_norm(norm_f_sq, "squared norm of f")?;
    check_norm(deriv_norm_sq, "squared norm of sqrt(x) f'")?;
    let m_theta = config.m as f64 * config.theta;
    let bias = (1.0 + m_theta).powi(2) * norm_f_sq * config.ratio().powi(2 * config.m as i32);
    let tail = deriv_norm_sq / m_theta;
    Ok(ErrorBudget {
        bias,
        tail,
        noise: 0.0,
        total: bias + tail,
    })
}

/// Noisy-data bound at `m = m(ε)`: twice the exact-data terms plus `2√ε`.
pub fn thm3_bound(
    eps: f64,
    config: &ReconstructionConfig,
    norm_f_sq: f64,
    deriv_norm_sq: f64,
) -> Result<ErrorBudget> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::NoiseLevel(eps));
    }
    let exact = thm2_bound(config, norm_f_sq, deriv_norm_sq)?;
    let bias = 2.0 * exact.bias;
    let tail = 2.0 * exact.tail;
    let noise = 2.0 * eps.sqrt();
    Ok(ErrorBudget {
        bias,
        tail,
        noise,
        total: bias + tail + noise,
    })
}

/// Noisy-data bound before substituting `m(ε)`: the noise term is `2ε² m² D_m²`.
/// Valid for any `m`, and sharper than [`thm3_bound`] when `D_m` is known.
pub fn noisy_bound_with_dm(
    eps: f64,
    config: &ReconstructionConfig,
    dm: f64,
    norm_f_sq: f64,
    deriv_norm_sq: f64,
) -> Result<ErrorBudget> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::NoiseLevel(eps));
    }
    check_norm(dm, "D_m")?;
    let exact = thm2_bound(config, norm_f_sq, deriv_norm_sq)?;
    let bias = 2.0 * exact.bias;
    let tail = 2.0 * exact.tail;
    let noise = 2.0 * (eps * config.m as f64 * dm).powi(2);
    Ok(ErrorBudget {
        bias,
        tail,
        noise,
        total: bias + tail + noise,
    })
}

/// `(1 + mθ) ‖f‖ q^m`, a bound on every kept coefficient error `|a_k - ℓ_k|`.
pub fn coefficient_error_bound(config: &ReconstructionConfig, norm_f: f64) -> f64 {
    let m = config.m as f64;
    (1.0 + m * config.theta) * norm_f * config.ratio().powi(config.m as i32)
}

/// `‖f - s‖²_{L²ρ}` by Gauss–Laguerre quadrature (see [`l2rho_norm_sq`]).
pub fn l2rho_error<F: Fn(f64) -> f64>(f: F, s: &LaguerreSeries, order: usize) -> Result<f64> {
    if order < DEFAULT_QUAD_ORDER {
        return Err(Error::InvalidArgument(format!(
            "error quadrature order {order} is below {DEFAULT_QUAD_ORDER}"
        )));
    }
    l2rho_norm_sq(|x| f(x) - s.eval(x), order)
}
