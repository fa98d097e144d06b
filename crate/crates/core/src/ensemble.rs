//! Integrals of the traceless Gaussian β-ensemble density
//!
//! ```text
//! exp(-(g/2) Σ x_j²) ∏_{j<k} (x_j - x_k)^β   on  x_1 >= ... >= x_d, Σ x_j = 0
//! ```
//!
//! against Lebesgue measure in `(x_1, …, x_{d-1})`. The Gaussian coefficient
//! `g` is `β` for `Z_d(β)` and `dβ` for `Z'_d(β)`. Closed forms cover `d <= 2`
//! and nested adaptive quadrature covers `d = 3`.

use statrs::function::gamma::gamma_lr;

use crate::logspace::ln_gamma;
use crate::quadrature::{integrate, Tolerance};

/// Half-width of the truncated integration box, in units of `1/√g`.
pub const TRUNCATION: f64 = 12.0;

/// `ln` of the unnormalized density at an ordered traceless point.
pub fn ln_density(x: &[f64], beta: f64, gauss: f64) -> f64 {
    let mut ln = -0.5 * gauss * x.iter().map(|v| v * v).sum::<f64>();
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            let gap = x[i] - x[j];
            if gap <= 0.0 {
                return f64::NEG_INFINITY;
            }
            ln += beta * gap.ln();
        }
    }
    ln
}

/// `∫_0^∞ e^{-g x²} (2x)^β dx = 2^{β-1} g^{-(β+1)/2} Γ((β+1)/2)`, the `d = 2`
/// normalizer in the coordinate `x = x_1 = -x_2`.
pub fn ln_z2_closed(beta: f64, gauss: f64) -> f64 {
    (beta - 1.0) * std::f64::consts::LN_2 - 0.5 * (beta + 1.0) * gauss.ln()
        + ln_gamma(0.5 * (beta + 1.0))
}

/// CDF of `x_1` for `d = 2`: `P((β+1)/2, g x²)` for `x > 0`, else 0.
pub fn d2_cdf_top(beta: f64, gauss: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(0.5 * (beta + 1.0), gauss * x * x)
    }
}

fn d3_integrand(beta: f64, gauss: f64, x1: f64, x2: f64) -> f64 {
    let x3 = -x1 - x2;
    let a = x1 - x2;
    let b = x2 - x3;
    let c = x1 - x3;
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    (-0.5 * gauss * (x1 * x1 + x2 * x2 + x3 * x3) + beta * (a * b * c).ln()).exp()
}

/// Unnormalized mass of `{x_1 <= h_1, x_2 <= h_2, x_3 <= h_3}` for `d = 3`.
///
/// Bounds may be infinite. Outer variable `x_1 ∈ [0, L]`, inner
/// `x_2 ∈ [max(-x_1/2, -h_3 - x_1), min(x_1, h_2)]`.
pub fn d3_orthant_mass(beta: f64, gauss: f64, h: [f64; 3], tol: Tolerance) -> f64 {
    let limit = TRUNCATION / gauss.sqrt();
    let top = h[0].min(limit);
    if top <= 0.0 {
        return 0.0;
    }
    let inner_tol = Tolerance {
        abs: tol.abs * 1e-2,
        ..tol
    };
    let inner = |x1: f64| -> f64 {
        let lo = (-0.5 * x1).max(-h[2] - x1).max(-limit);
        let hi = x1.min(h[1]);
        if hi <= lo {
            return 0.0;
        }
        integrate(|x2| d3_integrand(beta, gauss, x1, x2), lo, hi, inner_tol).value
    };
    // split the outer range where the inner bounds change formula
    let mut breaks = vec![0.0, top];
    for b in [-2.0 * h[2], h[1], -2.0 * h[1], -h[1] - h[2], -0.5 * h[2]] {
        if b.is_finite() && b > 0.0 && b < top {
            breaks.push(b);
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    breaks
        .windows(2)
        .map(|w| integrate(inner, w[0], w[1], tol).value)
        .sum()
}

/// `ln ∫_{𝔥_d} exp(-(g/2)Σx²) ∏(x_j - x_k)^β` for `d <= 3`.
pub fn ln_normalizer(d: usize, beta: f64, gauss: f64) -> Option<f64> {
    match d {
        1 => Some(0.0),
        2 => Some(ln_z2_closed(beta, gauss)),
        3 => Some(
            d3_orthant_mass(
                beta,
                gauss,
                [f64::INFINITY; 3],
                Tolerance {
                    abs: 1e-300,
                    rel: 1e-13,
                    max_intervals: 4000,
                },
            )
            .ln(),
        ),
        _ => None,
    }
}

/// `ln Z_2` by direct quadrature of the one-variable reduction, used to
/// cross-check [`ln_z2_closed`].
pub fn ln_z2_quadrature(beta: f64, gauss: f64) -> f64 {
    let limit = TRUNCATION / gauss.sqrt();
    integrate(
        |x: f64| {
            if x <= 0.0 {
                0.0
            } else {
                (-gauss * x * x + beta * (2.0 * x).ln()).exp()
            }
        },
        0.0,
        limit,
        Tolerance {
            abs: 1e-300,
            rel: 1e-14,
            max_intervals: 4000,
        },
    )
    .value
    .ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_closed_form_matches_quadrature() {
        for &beta in &[0.5, 0.74, 1.0, 2.0, 4.0, 6.0] {
            for &g in &[beta, 2.0 * beta] {
                let a = ln_z2_closed(beta, g);
                let b = ln_z2_quadrature(beta, g);
                assert!((a - b).abs() < 1e-10, "beta={beta} g={g}: {a} vs {b}");
            }
        }
        // β = 2: √π / (2√2)
        let v = ln_z2_closed(2.0, 2.0).exp();
        assert!((v - std::f64::consts::PI.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn d3_symmetric_halves() {
        // x ↦ -reverse(x) preserves the density, so P(x_2 <= 0) = 1/2
        let tol = Tolerance {
            abs: 1e-300,
            rel: 1e-12,
            max_intervals: 4000,
        };
        for &beta in &[1.0, 2.0, 4.0] {
            let total = d3_orthant_mass(beta, beta, [f64::INFINITY; 3], tol);
            let half = d3_orthant_mass(beta, beta, [f64::INFINITY, 0.0, f64::INFINITY], tol);
            assert!((half / total - 0.5).abs() < 1e-10);
            // P(x_1 <= h) = P(x_3 >= -h)
            let h = 0.7;
            let top = d3_orthant_mass(beta, beta, [h, f64::INFINITY, f64::INFINITY], tol);
            let bottom = d3_orthant_mass(beta, beta, [f64::INFINITY, f64::INFINITY, -h], tol);
            assert!((top / total - (1.0 - bottom / total)).abs() < 1e-10);
        }
    }

    #[test]
    fn density_off_cone() {
        assert_eq!(ln_density(&[0.0, 0.0], 1.0, 1.0), f64::NEG_INFINITY);
        assert!(ln_density(&[1.0, -1.0], 2.0, 2.0).is_finite());
        assert_eq!(d2_cdf_top(1.0, 1.0, -0.5), 0.0);
    }
}
