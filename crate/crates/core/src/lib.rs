//! Reconstruction of a function on `(0, ∞)` from real samples of its Laplace transform.
//!
//! The function is expanded in the orthonormal Laguerre basis of `L²ρ(0, ∞)`
//! (weight `e^{-x}`). Its coefficient sequence is the Taylor sequence of an analytic
//! function `Φf` on the unit disc, and a transform sample `μ_j` at `p_j` gives the
//! point value `Φf(1 - 1/p_j) = p_j μ_j`. Recovery is then analytic interpolation: a
//! Lagrange polynomial through those values, truncated to its leading coefficients,
//! read back as a Laguerre series.
//!
//! ```
//! use ilt_core::{default_nodes, make_samples, reconstruct, ReconstructionConfig};
//!
//! let points = default_nodes(0.25, 10).unwrap();
//! let samples = make_samples(|x| (-x).exp(), &points, 64).unwrap();
//! let config = ReconstructionConfig::new(0.25, 0.29, 10).unwrap();
//! let series = reconstruct(&samples, &config).unwrap();
//! assert!((series.coeffs()[0] - 0.5).abs() < 1e-8);
//! ```

pub mod error;
pub mod functions;
pub mod interpolation;
pub mod laguerre;
pub mod quadrature;
pub mod regularize;
pub mod sampling;

pub use error::{Error, Result};
pub use functions::TestFunction;
pub use interpolation::{
    build_psi, choose_m, compute_dm, dm_profile, lagrange_coeffs, omega_eval, omega_prime,
    truncate_poly, truncation_cutoff, ChoiceWarning, MChoice, MonomialPoly, StabilityProfile,
};
pub use laguerre::{
    default_projection_order, generating_function_eval, l2rho_norm_sq, laguerre_eval, project,
    LaguerreSeries,
};
pub use quadrature::{gauss_laguerre, QuadratureRule};
pub use regularize::{
    coefficient_error_bound, contraction_ratio, interpolate_untruncated, l2rho_error,
    noisy_bound_with_dm, reconstruct, theta0, thm2_bound, thm3_bound, ErrorBudget,
    ReconstructionConfig,
};
pub use sampling::{
    add_noise, alpha_of, default_nodes, forward_laplace, make_samples, shift_reduce, spread_nodes,
    uniqueness_partial_sum, uniqueness_trend, unshift_value, SampleSet,
};
