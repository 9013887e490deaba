//! Built-in test functions with closed-form transforms, coefficients, and norms.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestFunction {
    /// `e^{-x}`, coefficients `2^{-(n+1)}`, `Φf(z) = 1/(2-z)`.
    ExpNeg,
    /// `e^{x/4}`, coefficients `(4/3)(-1/3)^n`, `Φf(z) = 4/(3+z)`.
    ExpQuarter,
}

impl TestFunction {
    pub const ALL: [TestFunction; 2] = [TestFunction::ExpNeg, TestFunction::ExpQuarter];

    pub fn name(self) -> &'static str {
        match self {
            TestFunction::ExpNeg => "exp-neg",
            TestFunction::ExpQuarter => "exp-quarter",
        }
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            TestFunction::ExpNeg => (-x).exp(),
            TestFunction::ExpQuarter => (0.25 * x).exp(),
        }
    }

    pub fn derivative(self, x: f64) -> f64 {
        match self {
            TestFunction::ExpNeg => -(-x).exp(),
            TestFunction::ExpQuarter => 0.25 * (0.25 * x).exp(),
        }
    }

    /// `∫_0^∞ e^{-px} f(x) dx` in closed form.
    pub fn laplace(self, p: f64) -> f64 {
        match self {
            TestFunction::ExpNeg => 1.0 / (p + 1.0),
            TestFunction::ExpQuarter => 1.0 / (p - 0.25),
        }
    }

    /// Exact Laguerre coefficient `a_n`.
    pub fn coefficient(self, n: usize) -> f64 {
        match self {
            TestFunction::ExpNeg => 0.5f64.powi(n as i32 + 1),
            TestFunction::ExpQuarter => 4.0 / 3.0 * (-1.0f64 / 3.0).powi(n as i32),
        }
    }

    pub fn coefficients(self, max_index: usize) -> Vec<f64> {
        (0..=max_index).map(|n| self.coefficient(n)).collect()
    }

    /// `Φf(z)` in closed form (real argument).
    pub fn phi(self, z: f64) -> f64 {
        match self {
            TestFunction::ExpNeg => 1.0 / (2.0 - z),
            TestFunction::ExpQuarter => 4.0 / (3.0 + z),
        }
    }

    /// `‖f‖²_{L²ρ}`.
    pub fn norm_sq(self) -> f64 {
        match self {
            TestFunction::ExpNeg => 1.0 / 3.0,
            TestFunction::ExpQuarter => 2.0,
        }
    }

    /// `‖√x f'‖²_{L²ρ}`.
    pub fn sqrtx_deriv_norm_sq(self) -> f64 {
        match self {
            TestFunction::ExpNeg => 1.0 / 9.0,
            TestFunction::ExpQuarter => 0.25,
        }
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp-neg" => Ok(TestFunction::ExpNeg),
            "exp-quarter" => Ok(TestFunction::ExpQuarter),
            other => Err(Error::InvalidArgument(format!(
                "unknown function '{other}' (expected exp-neg or exp-quarter)"
            ))),
        }
    }
}
