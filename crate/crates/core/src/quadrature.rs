//! Gauss–Laguerre quadrature against the weight `e^{-x}` on `(0, ∞)`.
//!
//! Nodes are the roots of `L_Q`, located by Newton iteration from asymptotic
//! initial guesses. Weights use `w_i = x_i / (Q (Q+1) |L_{Q-1}(x_i) L_{Q+1}(x_i)|)`,
//! evaluated in log space so that large orders do not overflow.

use crate::error::{Error, Result};

/// Largest supported order. Above this the outermost weights fall below the
/// normal `f64` range.
pub const MAX_ORDER: usize = 160;

const NEWTON_MAX_ITER: usize = 100;

/// A Gauss–Laguerre rule with strictly increasing positive nodes and positive weights.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Approximates `∫_0^∞ g(x) e^{-x} dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * g(x))
            .sum()
    }

    /// Same as [`integrate`](Self::integrate) but fails on the first non-finite sample.
    pub fn try_integrate<F: Fn(f64) -> f64>(&self, g: F) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let value = g(x);
            if !value.is_finite() {
                return Err(Error::NonFiniteEval { x, value });
            }
            acc += w * value;
        }
        Ok(acc)
    }
}

/// Runs the recurrence up to `L_n(x)` and returns `(L_n, L_{n-1}, log_scale)` where
/// the true values are the returned ones times `exp(log_scale)`.
fn scaled_pair(n: usize, x: f64) -> (f64, f64, f64) {
    const BIG: f64 = 1e150;
    let mut prev = 0.0; // L_{-1}, never used for n >= 1
    let mut cur = 1.0;
    let mut log_scale = 0.0;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > BIG {
            cur /= BIG;
            prev /= BIG;
            log_scale += BIG.ln();
        }
    }
    (cur, prev, log_scale)
}

/// Builds the `order`-point Gauss–Laguerre rule.
pub fn gauss_laguerre(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_ORDER {
        return Err(Error::QuadratureOrder {
            order,
            max: MAX_ORDER,
        });
    }
    let n = order as f64;
    let mut nodes: Vec<f64> = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    let mut z = 0.0;
    for i in 0..order {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * n),
            1 => z + 15.0 / (1.0 + 2.5 * n),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        for _ in 0..NEWTON_MAX_ITER {
            let (l_n, l_nm1, _) = scaled_pair(order, z);
            // L_n'(z) = n (L_n - L_{n-1}) / z; the common scale cancels in the ratio.
            let step = z * l_n / (n * (l_n - l_nm1));
            z -= step;
            if step.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        // At a root of L_Q, (Q+1) L_{Q+1} = -Q L_{Q-1}; using the geometric mean of the
        // two equivalent weight formulas cancels the first-order effect of node error.
        let (l_n, l_nm1, log_scale) = scaled_pair(order, z);
        let l_np1 = ((2.0 * n + 1.0 - z) * l_n - n * l_nm1) / (n + 1.0);
        let log_w = z.ln()
            - n.ln()
            - (n + 1.0).ln()
            - (l_np1.abs().ln() + l_nm1.abs().ln() + 2.0 * log_scale);
        nodes.push(z);
        weights.push(log_w.exp());
    }
    Ok(QuadratureRule { nodes, weights })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(k: usize) -> f64 {
        (1..=k).map(|i| i as f64).product()
    }

    #[test]
    fn single_point_rule() {
        let rule = gauss_laguerre(1).unwrap();
        assert!((rule.nodes()[0] - 1.0).abs() < 1e-14);
        assert!((rule.weights()[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_point_rule() {
        let rule = gauss_laguerre(2).unwrap();
        let s = 2f64.sqrt();
        assert!((rule.nodes()[0] - (2.0 - s)).abs() < 1e-14);
        assert!((rule.nodes()[1] - (2.0 + s)).abs() < 1e-14);
        assert!((rule.weights()[0] - (2.0 + s) / 4.0).abs() < 1e-14);
        assert!((rule.weights()[1] - (2.0 - s) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn order_out_of_range() {
        assert!(matches!(
            gauss_laguerre(0),
            Err(Error::QuadratureOrder { .. })
        ));
        assert!(gauss_laguerre(MAX_ORDER + 1).is_err());
    }

    #[test]
    fn factorial_moments() {
        for order in [2usize, 4, 8, 16, 32] {
            let rule = gauss_laguerre(order).unwrap();
            for k in 0..2 * order {
                let got = rule.integrate(|x| x.powi(k as i32));
                let want = factorial(k);
                let rel = ((got - want) / want).abs();
                assert!(rel <= 1e-10, "Q={order} k={k} rel={rel:e}");
            }
        }
    }

    #[test]
    fn structural_invariants_up_to_max_order() {
        for order in [1usize, 3, 7, 64, 100, 128, MAX_ORDER] {
            let rule = gauss_laguerre(order).unwrap();
            assert_eq!(rule.order(), order);
            assert!(rule.nodes()[0] > 0.0);
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]), "Q={order}");
            assert!(rule.weights().iter().all(|&w| w > 0.0 && w.is_normal()));
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 1.0).abs() <= 1e-12, "Q={order} sum={total}");
        }
    }

    #[test]
    fn try_integrate_reports_bad_sample() {
        let rule = gauss_laguerre(4).unwrap();
        let err = rule.try_integrate(|x| if x > 1.0 { f64::NAN } else { 1.0 });
        assert!(matches!(err, Err(Error::NonFiniteEval { .. })));
    }
}
