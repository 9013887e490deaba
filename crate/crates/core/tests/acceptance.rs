//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line; the
//! process exits non-zero if any of them fails.

use std::time::Instant;

use ilt_core::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIGMA: f64 = 0.25;
const THETA: f64 = 0.29;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn exp_neg(x: f64) -> f64 {
    (-x).exp()
}

fn exp_quarter(x: f64) -> f64 {
    (0.25 * x).exp()
}

/// Laguerre coefficients of the two test functions from their generating functions.
fn coeff_exp_neg(n: usize) -> f64 {
    0.5f64.powi(n as i32 + 1)
}

fn coeff_exp_quarter(n: usize) -> f64 {
    4.0 / 3.0 * (-1.0f64 / 3.0).powi(n as i32)
}

struct Case {
    name: &'static str,
    f: fn(f64) -> f64,
    coeff: fn(usize) -> f64,
    norm_sq: f64,
    deriv_norm_sq: f64,
}

const CASES: [Case; 2] = [
    Case {
        name: "exp-neg",
        f: exp_neg,
        coeff: coeff_exp_neg,
        norm_sq: 1.0 / 3.0,
        deriv_norm_sq: 1.0 / 9.0,
    },
    Case {
        name: "exp-quarter",
        f: exp_quarter,
        coeff: coeff_exp_quarter,
        norm_sq: 2.0,
        deriv_norm_sq: 0.25,
    },
];

fn bisect_theta0(sigma: f64) -> f64 {
    let g = |t: f64| 2.0 * sigma.powf(1.0 - t) / (1.0 - sigma) - 1.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn exact_budget(m: usize, norm_sq: f64, deriv_norm_sq: f64) -> f64 {
    let mt = m as f64 * THETA;
    let q = 2.0 * SIGMA.powf(1.0 - THETA) / (1.0 - SIGMA);
    (1.0 + mt).powi(2) * norm_sq * q.powi(2 * m as i32) + deriv_norm_sq / mt
}

fn squared_error(case: &Case, series: &LaguerreSeries) -> f64 {
    (0..400)
        .map(|k| ((case.coeff)(k) - series.coeffs().get(k).copied().unwrap_or(0.0)).powi(2))
        .sum()
}

fn sup_error(f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, xs: impl Iterator<Item = f64>) -> f64 {
    xs.map(|x| (f(x) - g(x)).abs()).fold(0.0, f64::max)
}

fn grid(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |i| a + (b - a) * i as f64 / n as f64)
}

fn theta0_reproduction() -> Outcome {
    let closed = theta0(SIGMA).map_err(|e| e.to_string())?;
    let bisected = bisect_theta0(SIGMA);
    check(
        (0.29..=0.295).contains(&closed) && (closed - bisected).abs() <= 1e-10,
        format!("theta0 = {closed:.12}, bisection = {bisected:.12}"),
    )
}

fn coefficient_reproduction() -> Outcome {
    let mut worst = [0.0f64; 2];
    for (i, (case, tol)) in CASES.iter().zip([1e-8, 1e-7]).enumerate() {
        let s = project(case.f, 8, 64).map_err(|e| e.to_string())?;
        for (n, a) in s.coeffs().iter().enumerate() {
            worst[i] = worst[i].max((a - (case.coeff)(n)).abs());
        }
        if worst[i] > tol {
            return Err(format!("{}: max deviation {:.3e}", case.name, worst[i]));
        }
    }
    Ok(format!("max deviation {:.2e} / {:.2e}", worst[0], worst[1]))
}

fn parseval_and_sobolev() -> Outcome {
    let mut detail = Vec::new();
    let mut ok = true;
    for (case, tol) in CASES.iter().zip([1e-10, 1e-8]) {
        let s = project(case.f, 40, default_projection_order(40)).map_err(|e| e.to_string())?;
        let norm_dev = (s.norm_sq() - case.norm_sq).abs();
        let sob_dev = (s.sobolev_weighted_sum() - case.deriv_norm_sq).abs();
        ok &= norm_dev <= tol && sob_dev <= 1e-8;
        detail.push(format!(
            "{}: |norm-ref| {norm_dev:.1e}, |sobolev-ref| {sob_dev:.1e}",
            case.name
        ));
    }
    check(ok, detail.join("; "))
}

fn exact_budget_suite() -> Outcome {
    let points = default_nodes(SIGMA, 14).map_err(|e| e.to_string())?;
    let mut tightest = f64::INFINITY;
    for case in &CASES {
        let samples = make_samples(case.f, &points, 64).map_err(|e| e.to_string())?;
        for m in 2..=14 {
            let cfg = ReconstructionConfig::new(SIGMA, THETA, m).map_err(|e| e.to_string())?;
            let series = reconstruct(&samples, &cfg).map_err(|e| e.to_string())?;
            let err = squared_error(case, &series);
            let budget = exact_budget(m, case.norm_sq, case.deriv_norm_sq);
            let lib =
                thm2_bound(&cfg, case.norm_sq, case.deriv_norm_sq).map_err(|e| e.to_string())?;
            if (lib.total - budget).abs() > 1e-12 * budget {
                return Err(format!(
                    "{} m={m}: library budget {} vs {}",
                    case.name, lib.total, budget
                ));
            }
            if err > budget {
                return Err(format!(
                    "{} m={m}: error {err:.3e} > budget {budget:.3e}",
                    case.name
                ));
            }
            tightest = tightest.min(budget / err.max(f64::MIN_POSITIVE));
        }
    }
    Ok(format!(
        "26 runs, smallest budget/error ratio {tightest:.2}"
    ))
}

fn coefficient_bound() -> Outcome {
    let points = default_nodes(SIGMA, 14).map_err(|e| e.to_string())?;
    let q = 2.0 * SIGMA.powf(1.0 - THETA) / (1.0 - SIGMA);
    let mut checked = 0;
    for case in &CASES {
        let samples = make_samples(case.f, &points, 64).map_err(|e| e.to_string())?;
        for m in 1..=14 {
            let cfg = ReconstructionConfig::new(SIGMA, THETA, m).map_err(|e| e.to_string())?;
            let series = reconstruct(&samples, &cfg).map_err(|e| e.to_string())?;
            let bound = (1.0 + m as f64 * THETA) * case.norm_sq.sqrt() * q.powi(m as i32);
            for (k, c) in series.coeffs().iter().enumerate() {
                let dev = (c - (case.coeff)(k)).abs();
                if dev > bound {
                    return Err(format!(
                        "{} m={m} k={k}: {dev:.3e} > {bound:.3e}",
                        case.name
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} kept coefficients within bound"))
}

fn noisy_budget_suite() -> Outcome {
    let points = default_nodes(SIGMA, 14).map_err(|e| e.to_string())?;
    let alphas: Vec<f64> = points.iter().map(|p| 1.0 - 1.0 / p).collect();
    let profile = build_psi(&dm_profile(&alphas, 1.0, 4096).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let mut runs = 0;
    let mut ms = Vec::new();
    for case in &CASES {
        let exact = make_samples(case.f, &points, 64).map_err(|e| e.to_string())?;
        for eps in [1e-2, 1e-3, 1e-4] {
            let m = choose_m(eps, &profile).map_err(|e| e.to_string())?.m;
            ms.push(m);
            let cfg = ReconstructionConfig::new(SIGMA, THETA, m).map_err(|e| e.to_string())?;
            let budget = 2.0 * exact_budget(m, case.norm_sq, case.deriv_norm_sq) + 2.0 * eps.sqrt();
            for seed in 0..20 {
                let noisy = add_noise(&exact, eps, seed).map_err(|e| e.to_string())?;
                let series = reconstruct(&noisy, &cfg).map_err(|e| e.to_string())?;
                let err = squared_error(case, &series);
                if err > budget {
                    return Err(format!(
                        "{} eps={eps} seed={seed}: {err:.3e} > {budget:.3e}",
                        case.name
                    ));
                }
                runs += 1;
            }
        }
    }
    ms.dedup();
    Ok(format!("{runs}/{runs} runs within budget, m(eps) = {ms:?}"))
}

fn figure_regime() -> Outcome {
    let cfg = |m| ReconstructionConfig::new(SIGMA, THETA, m).map_err(|e| e.to_string());
    let ex1 = make_samples(
        exp_neg,
        &default_nodes(SIGMA, 12).map_err(|e| e.to_string())?,
        64,
    )
    .map_err(|e| e.to_string())?;
    let ex2 = make_samples(
        exp_quarter,
        &default_nodes(SIGMA, 4).map_err(|e| e.to_string())?,
        64,
    )
    .map_err(|e| e.to_string())?;

    let s1 = reconstruct(&ex1.prefix(10).map_err(|e| e.to_string())?, &cfg(10)?)
        .map_err(|e| e.to_string())?;
    let a = sup_error(exp_neg, |x| s1.eval(x), grid(0.0, 1.8, 1800));

    let s2 = interpolate_untruncated(&ex1, 12).map_err(|e| e.to_string())?;
    let b = sup_error(
        exp_neg,
        |x| s2.eval(x),
        grid(-1.8, -1.0, 800).chain(grid(1.0, 1.8, 800)),
    );

    let s3 = reconstruct(&ex2, &cfg(4)?).map_err(|e| e.to_string())?;
    let c = sup_error(exp_quarter, |x| s3.eval(x), grid(0.0, 2.8, 2800));

    let parts = [
        (a <= 0.1, format!("ex1 truncated m=10 sup {a:.4} (<= 0.1)")),
        (b > 1.0, format!("ex1 untruncated m=12 sup {b:.2} (> 1)")),
        (c <= 0.2, format!("ex2 truncated m=4 sup {c:.4} (<= 0.2)")),
    ];
    let detail = parts
        .iter()
        .map(|(ok, d)| format!("[{}] {d}", if *ok { "ok" } else { "fail" }))
        .collect::<Vec<_>>()
        .join("; ");
    check(parts.iter().all(|(ok, _)| *ok), detail)
}

#[allow(clippy::needless_range_loop)]
fn vandermonde_solve(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let m = nodes.len();
    let mut a: Vec<Vec<f64>> = nodes
        .iter()
        .zip(values)
        .map(|(&x, &v)| (0..m).map(|k| x.powi(k as i32)).chain([v]).collect())
        .collect();
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        for row in col + 1..m {
            let factor = a[row][col] / a[col][col];
            for k in col..=m {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let s: f64 = (row + 1..m).map(|k| a[row][k] * x[k]).sum();
        x[row] = (a[row][m] - s) / a[row][row];
    }
    x
}

fn oracle_equivalences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst_vdm = 0.0f64;
    for m in 1..=10 {
        for _ in 0..20 {
            let h = 0.6 / m as f64;
            let nodes: Vec<f64> = (0..m)
                .map(|i| -0.3 + h * (i as f64 + 0.5 + rng.gen_range(-0.3..0.3)))
                .collect();
            let values: Vec<f64> = (0..m).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let poly = lagrange_coeffs(&nodes, &values).map_err(|e| e.to_string())?;
            for (c, o) in poly.coeffs().iter().zip(vandermonde_solve(&nodes, &values)) {
                worst_vdm = worst_vdm.max((c - o).abs() / o.abs().max(1.0));
            }
        }
    }

    let mut worst_gf = 0.0f64;
    for x in [0.0, 0.5, 1.0, 2.0, 5.0] {
        for k in 0..16 {
            let z = Complex64::from_polar(0.5, k as f64 * std::f64::consts::PI / 8.0);
            let partial = (0..=60).fold(Complex64::new(0.0, 0.0), |acc, n| {
                acc + laguerre_eval(n, x) * z.powu(n as u32)
            });
            let closed = (x * z / (z - 1.0)).exp() / (1.0 - z);
            worst_gf = worst_gf.max((partial - closed).norm());
        }
    }

    let mut worst_q = 0.0f64;
    for order in [2usize, 4, 8, 16, 32] {
        let rule = gauss_laguerre(order).map_err(|e| e.to_string())?;
        let mut factorial = 1.0;
        for k in 0..2 * order {
            if k > 0 {
                factorial *= k as f64;
            }
            let got = rule.integrate(|x| x.powi(k as i32));
            worst_q = worst_q.max(((got - factorial) / factorial).abs());
        }
    }

    check(
        worst_vdm <= 1e-8 && worst_gf <= 1e-10 && worst_q <= 1e-10,
        format!("vandermonde {worst_vdm:.1e}, generating function {worst_gf:.1e}, moments {worst_q:.1e}"),
    )
}

fn exact_recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let points = spread_nodes(SIGMA, 12).map_err(|e| e.to_string())?;
    let cfg = ReconstructionConfig::new(SIGMA, THETA, 12).map_err(|e| e.to_string())?;
    if THETA * 11.0 < 3.0 {
        return Err("theta (m - 1) < 3".into());
    }
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let a: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = |x: f64| {
            a.iter()
                .enumerate()
                .map(|(n, c)| c * laguerre_eval(n, x))
                .sum::<f64>()
        };
        let samples = make_samples(f, &points, 64).map_err(|e| e.to_string())?;
        let series = reconstruct(&samples, &cfg).map_err(|e| e.to_string())?;
        for (k, c) in series.coeffs().iter().enumerate() {
            worst = worst.max((c - a.get(k).copied().unwrap_or(0.0)).abs());
        }
    }
    check(
        worst <= 1e-8,
        format!("10 random series, max coefficient deviation {worst:.1e}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 theta0 reproduction", theta0_reproduction),
        ("2 laguerre coefficients", coefficient_reproduction),
        ("3 parseval and derivative identity", parseval_and_sobolev),
        ("4 noise-free error budget", exact_budget_suite),
        ("5 coefficient error bound", coefficient_bound),
        ("6 noisy error budget", noisy_budget_suite),
        ("7 figure regimes", figure_regime),
        ("8 oracle equivalences", oracle_equivalences),
        ("9 exact polynomial recovery", exact_recovery),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS  {name}: {d} ({secs:.2}s)"),
            Err(d) => {
                failed += 1;
                println!("FAIL  {name}: {d} ({secs:.2}s)");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
