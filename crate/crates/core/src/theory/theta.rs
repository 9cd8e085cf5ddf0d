use libm::{exp, expm1, log, log1p};

use crate::error::{invalid, Result};

/// π²/6.
pub const PI2_6: f64 = core::f64::consts::PI * core::f64::consts::PI / 6.0;

/// Absolute error target of [`theta`].
const TOLERANCE: f64 = 1e-13;

/// Below this the small-argument expansion is used instead of the j-series.
const SMALL_X: f64 = 0.01;

/// `θ(x) = -∫₀ˣ log(1 - e^{-t}) dt = Σ_{j≥1} (1 - e^{-jx}) / j²`, with
/// `θ(∞) = π²/6`.
///
/// The series is evaluated as `π²/6 - Σ e^{-jx}/j²`, stopping once the
/// geometric tail bound `e^{-(J+1)x} / ((J+1)² (1 - e^{-x}))` drops below
/// 1e-13. For `x < 0.01` the tail converges too slowly and the expansion
/// `x - x ln x + x²/4 - x³/72 + x⁵/14400 - x⁷/1270080` (truncation error far
/// below 1e-13) is used instead.
pub fn theta(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(invalid!("theta needs x >= 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(PI2_6);
    }
    if x < SMALL_X {
        let x2 = x * x;
        let x3 = x2 * x;
        return Ok(x - x * log(x) + x2 / 4.0 - x3 / 72.0 + x3 * x2 / 14_400.0
            - x3 * x3 * x / 1_270_080.0);
    }
    let ratio_tail = -expm1(-x); // 1 - e^{-x}
    let mut sum = 0.0;
    let mut j = 1u64;
    loop {
        let jf = j as f64;
        let term = exp(-jf * x) / (jf * jf);
        sum += term;
        let next = jf + 1.0;
        if exp(-next * x) / (next * next * ratio_tail) < TOLERANCE {
            break;
        }
        j += 1;
    }
    Ok(PI2_6 - sum)
}

/// Both sides of the bound
/// `|Σ_{i=1}^m log(1 - e^{-iε}) + π²/(6ε)| ≤ ½ log(2e²/ε) + π²/(6ε e^{mε})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSumBound {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn theta_sum_error_bound(m: u64, eps: f64) -> Result<ThetaSumBound> {
    if m < 1 {
        return Err(invalid!("m must be at least 1"));
    }
    if !(eps > 0.0) || eps.is_infinite() {
        return Err(invalid!("eps must be a positive real, got {eps}"));
    }
    let sum: f64 = (1..=m).map(|i| log1p(-exp(-(i as f64) * eps))).sum();
    let lhs = (sum + PI2_6 / eps).abs();
    let rhs = 0.5 * (log(2.0 / eps) + 2.0) + PI2_6 / (eps * exp(m as f64 * eps));
    Ok(ThetaSumBound {
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}
