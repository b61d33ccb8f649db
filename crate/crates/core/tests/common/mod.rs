//! Independent oracles shared by the integration suites. Nothing here calls
//! into the closed forms it is used to check.

#![allow(dead_code)]

use growthpath::{Observation, PricedPanel};
use rand::Rng;

/// Bisection on a sign change of `f` in `[lo, hi]`, in log space so that
/// wide brackets like `[1e-12, 1e12]` converge in relative terms.
pub fn bisect_log(f: impl Fn(f64) -> f64, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    let (mut lo, mut hi) = (lo.ln(), hi.ln());
    let f_lo = f(lo.exp());
    assert!(f_lo * f(hi.exp()) <= 0.0, "bracket does not straddle a root");
    for _ in 0..500 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid.exp());
        if f_mid == 0.0 {
            return mid.exp();
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < rel_tol * 1e-3 {
            break;
        }
    }
    (0.5 * (lo + hi)).exp()
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Sector-A labor maximizing `(Y_A/L_t - N0)(Y_B/L_t)^omega` with per-worker
/// outputs held fixed.
pub fn utility_maximizing_labor(
    total_labor: f64,
    subsistence: f64,
    omega: f64,
    y_a: f64,
    y_b: f64,
) -> f64 {
    // log utility is concave on the feasible interval
    let objective = |l_a: f64| {
        let food = l_a * y_a / total_labor - subsistence;
        let service = (total_labor - l_a) * y_b / total_labor;
        if food <= 0.0 || service <= 0.0 {
            f64::NEG_INFINITY
        } else {
            food.ln() + omega * service.ln()
        }
    };
    let lo = subsistence * total_labor / y_a;
    golden_max(objective, lo, total_labor, 1e-9 * total_labor)
}

/// Laspeyres, Paasche ratios computed directly from `(quantity, price)` rows.
pub fn brute_laspeyres(base: &[(f64, f64)], next: &[(f64, f64)]) -> f64 {
    let num: f64 = next.iter().zip(base).map(|(n, b)| n.0 * b.1).sum();
    let den: f64 = base.iter().map(|b| b.0 * b.1).sum();
    num / den
}

pub fn brute_paasche(base: &[(f64, f64)], next: &[(f64, f64)]) -> f64 {
    let num: f64 = next.iter().map(|n| n.0 * n.1).sum();
    let den: f64 = base.iter().zip(next).map(|(b, n)| b.0 * n.1).sum();
    num / den
}

pub fn rows(panel: &PricedPanel, t: usize) -> Vec<(f64, f64)> {
    panel
        .period(t)
        .unwrap()
        .iter()
        .map(|o| (o.quantity, o.price))
        .collect()
}

/// Random panel with 1-5 sectors and 2-6 periods, strictly positive entries.
pub fn random_panel<R: Rng>(rng: &mut R) -> PricedPanel {
    let sectors = rng.gen_range(1..=5);
    let periods = rng.gen_range(2..=6);
    let names: Vec<String> = (0..sectors).map(|i| format!("S{i}")).collect();
    let data = (0..periods)
        .map(|_| {
            (0..sectors)
                .map(|_| {
                    Observation::new(
                        10f64.powf(rng.gen_range(-2.0..4.0)),
                        10f64.powf(rng.gen_range(-2.0..2.0)),
                    )
                })
                .collect()
        })
        .collect();
    PricedPanel::new(names, (0..periods as i64).collect(), data).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}
