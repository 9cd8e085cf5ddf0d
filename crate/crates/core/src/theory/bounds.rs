use libm::{exp, log, sqrt};

use super::theta::PI2_6;
use crate::error::{invalid, Result};

/// The constant in the ring lower bound `1 / (27 log n)`.
pub const LOWER_RING_CONSTANT: f64 = 1.0 / 27.0;

fn check_n(n: u64) -> Result<f64> {
    if n < 2 {
        return Err(invalid!("n must be at least 2, got {n}"));
    }
    Ok(log(n as f64))
}

/// Leading-order upper bound `π² / (6 ln n)` on the critical value of any
/// connected puzzle. The proven statement carries a `1 + O(log log n / log n)`
/// factor that is not included here.
pub fn upper_bound_pc(n: u64) -> Result<f64> {
    Ok(PI2_6 / check_n(n)?)
}

/// Lower bound `1 / (27 ln n)` on the critical value of the ring puzzle.
pub fn lower_bound_pc_ring(n: u64) -> Result<f64> {
    Ok(LOWER_RING_CONSTANT / check_n(n)?)
}

/// `(t/2) [2 ln(√(1 + 1/t) - 1) + 7t - 2t √(1 + 1/t) - 1]` for `t ∈ (0, 1/3)`.
/// Any `λ` below this value at some `t` keeps the ring unsolved w.h.p. at
/// `p = λ / ln n`.
pub fn ring_lower_objective(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0 / 3.0) {
        return Err(invalid!("t must lie in (0, 1/3), got {t}"));
    }
    let root = sqrt(1.0 + 1.0 / t);
    Ok(0.5 * t * (2.0 * log(root - 1.0) + 7.0 * t - 2.0 * t * root - 1.0))
}

/// Maximum of [`ring_lower_objective`] over `t = step, 2·step, ...` below 1/3.
/// Returns `(argmax, max)`.
pub fn ring_objective_grid_max(step: f64) -> Result<(f64, f64)> {
    if !(step > 0.0 && step < 1.0 / 3.0) {
        return Err(invalid!("grid step must lie in (0, 1/3), got {step}"));
    }
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    let mut i = 1u64;
    loop {
        let t = i as f64 * step;
        if t >= 1.0 / 3.0 {
            break;
        }
        let f = ring_lower_objective(t)?;
        if f > best.1 {
            best = (t, f);
        }
        i += 1;
    }
    Ok(best)
}

/// Upper bound on the probability that an interval of length `l·x` on the
/// ring is not x-good, where `t = p·x ∈ (0, 1/(l + 2))`:
///
/// `exp[-(t/2p)(2l ln(√(1 + l/t) - 1) + (l² + 4l + 2)t - 2t√(1 + l/t) - 2l ln l - l)]`.
///
/// The value is not clamped to 1.
pub fn not_x_good_bound(l: f64, t: f64, p: f64) -> Result<f64> {
    if !(l > 0.0) || l.is_infinite() {
        return Err(invalid!("l must be a positive real, got {l}"));
    }
    if !(t > 0.0 && t < 1.0 / (l + 2.0)) {
        return Err(invalid!("t must lie in (0, 1/(l + 2)), got {t}"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(invalid!("p must lie in (0, 1), got {p}"));
    }
    let root = sqrt(1.0 + l / t);
    let bracket = 2.0 * l * log(root - 1.0) + (l * l + 4.0 * l + 2.0) * t
        - 2.0 * t * root
        - 2.0 * l * log(l)
        - l;
    Ok(exp(-(t / (2.0 * p)) * bracket))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        let ln1000 = log(1000.0);
        assert!((upper_bound_pc(1000).unwrap() - 0.238_13).abs() < 1e-5);
        assert!((upper_bound_pc(1000).unwrap() - PI2_6 / ln1000).abs() < 1e-15);
        assert!((lower_bound_pc_ring(1000).unwrap() - 0.005_362).abs() < 1e-6);
        assert!(upper_bound_pc(10_000).unwrap() < upper_bound_pc(1000).unwrap());
        let ratio = upper_bound_pc(77).unwrap() / lower_bound_pc_ring(77).unwrap();
        assert!((ratio - 27.0 * PI2_6).abs() < 1e-12);
        assert!((ratio - 44.41).abs() < 0.01);
        // n = 404 is the integer nearest e^6
        assert!((upper_bound_pc(404).unwrap() - PI2_6 / 6.0).abs() < 1e-4);
        assert!(upper_bound_pc(1).is_err());
        assert!(lower_bound_pc_ring(0).is_err());
    }

    #[test]
    fn objective_at_witness_point() {
        let f = ring_lower_objective(0.07).unwrap();
        assert!(f > LOWER_RING_CONSTANT, "{f}");
        let (t, max) = ring_objective_grid_max(0.001).unwrap();
        assert!(max > LOWER_RING_CONSTANT);
        assert!(max >= f);
        assert!(t > 0.0 && t < 1.0 / 3.0);
        assert!(ring_lower_objective(0.0).is_err());
        assert!(ring_lower_objective(1.0 / 3.0).is_err());
    }

    #[test]
    fn objective_vanishes_at_zero() {
        // the log term grows like -ln t but is multiplied by t/2
        let f = ring_lower_objective(1e-6).unwrap();
        assert!(f > 0.0 && f < 1e-5, "{f}");
    }

    #[test]
    fn not_x_good_bound_domain() {
        let b = not_x_good_bound(1.0, 0.07, 0.004).unwrap();
        assert!(b > 0.0 && b < 1.0);
        // l = 1 collapses to exp(-objective(t) / p)
        let expected = exp(-ring_lower_objective(0.07).unwrap() / 0.004);
        assert!((b - expected).abs() <= 1e-12 * expected);
        assert!(not_x_good_bound(1.0, 0.34, 0.01).is_err());
        assert!(not_x_good_bound(0.0, 0.1, 0.01).is_err());
        assert!(not_x_good_bound(1.0, 0.1, 1.0).is_err());
    }
}
