//! Orthonormal Laguerre basis of `L²ρ(0, ∞)` (weight `e^{-x}`) and the power-series
//! image `Φf(z) = Σ a_n z^n` on the unit disc.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_laguerre, MAX_ORDER};

/// `L_n(x)` by the three-term recurrence `(k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}`.
pub fn laguerre_eval(n: usize, x: f64) -> f64 {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Fills `out[k] = L_k(x)` for `k < out.len()`.
pub fn laguerre_table(x: f64, out: &mut [f64]) {
    let mut prev = 0.0;
    let mut cur = 1.0;
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = cur;
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
}

/// Generating function `exp(xz/(z-1)) / (1-z) = Σ L_n(x) z^n`, defined for `|z| < 1`.
pub fn generating_function_eval(x: f64, z: Complex64) -> Result<Complex64> {
    check_disc(z)?;
    let one = Complex64::new(1.0, 0.0);
    Ok((x * z / (z - one)).exp() / (one - z))
}

fn check_disc(z: Complex64) -> Result<()> {
    let modulus = z.norm();
    if modulus < 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideDisc { modulus })
    }
}

/// Finite Laguerre expansion `Σ_{n=0}^{N} a_n L_n`.
///
/// The same coefficients are the Taylor coefficients of `Φf` at the origin, so the
/// series carries both the `L²ρ` function and its Hardy-space image.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreSeries {
    coeffs: Vec<f64>,
}

impl LaguerreSeries {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Empty(
                "Laguerre series needs at least one coefficient",
            ));
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    /// The series `c · L_0`.
    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            coeffs: vec![0.0; len.max(1)],
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Highest basis index `N`.
    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `Σ a_n L_n(x)` by Clenshaw's backward recurrence.
    pub fn eval(&self, x: f64) -> f64 {
        // L_{k+1} = A_k L_k + B_k L_{k-1}, A_k = (2k+1-x)/(k+1), B_k = -k/(k+1).
        let mut b1 = 0.0; // b_{k+1}
        let mut b2 = 0.0; // b_{k+2}
        for (k, &a) in self.coeffs.iter().enumerate().rev() {
            let kf = k as f64;
            let alpha = (2.0 * kf + 1.0 - x) / (kf + 1.0);
            let beta_next = -(kf + 1.0) / (kf + 2.0);
            let b0 = a + alpha * b1 + beta_next * b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    /// `Φf(z) = Σ a_n z^n` by Horner's rule, restricted to the open unit disc.
    pub fn phi_eval(&self, z: Complex64) -> Result<Complex64> {
        check_disc(z)?;
        Ok(self.horner(z))
    }

    /// Power-series evaluation without the disc check; used for plotting the
    /// polynomial side on real segments that leave the disc.
    pub fn horner(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    /// `Σ a_n^2`, which equals both `‖f‖²_{L²ρ}` and `‖Φf‖²_{H²}`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|a| a * a).sum()
    }

    /// `Σ n a_n^2`, a lower bound for `‖√x f'‖²_{L²ρ}`.
    pub fn sobolev_weighted_sum(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| n as f64 * a * a)
            .sum()
    }
}

/// `‖g‖²_{L²ρ} = ∫ g(x)² e^{-x} dx`.
///
/// Evaluated as `2 ∫ g(2t)² e^{-t} e^{-t} dt`, which keeps integrands growing like
/// `e^{x/2}` (the edge of `L²ρ`) well resolved.
pub fn l2rho_norm_sq<G: Fn(f64) -> f64>(g: G, order: usize) -> Result<f64> {
    let rule = gauss_laguerre(order)?;
    rule.try_integrate(|t| {
        let v = g(2.0 * t);
        2.0 * v * v * (-t).exp()
    })
}

/// Default quadrature order for projecting onto indices `0..=max_index`.
pub fn default_projection_order(max_index: usize) -> usize {
    (4 * (max_index + 1)).clamp(64, MAX_ORDER)
}

/// Coefficients `a_n = ⟨f, L_n⟩` for `n ≤ max_index`, by Gauss–Laguerre quadrature.
pub fn project<F: Fn(f64) -> f64>(f: F, max_index: usize, order: usize) -> Result<LaguerreSeries> {
    if order < max_index + 1 {
        return Err(Error::UnderResolved {
            order,
            max_index,
            needed: max_index + 1,
        });
    }
    let rule = gauss_laguerre(order)?;
    let mut coeffs = vec![0.0; max_index + 1];
    let mut basis = vec![0.0; max_index + 1];
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let value = f(x);
        if !value.is_finite() {
            return Err(Error::NonFiniteEval { x, value });
        }
        laguerre_table(x, &mut basis);
        let wf = w * value;
        for (c, l) in coeffs.iter_mut().zip(&basis) {
            *c += wf * l;
        }
    }
    LaguerreSeries::new(coeffs)
}
