//! Double-exponential quadrature on finite and half-infinite intervals.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

const MAX_LEVEL: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub error_estimate: f64,
    pub levels: usize,
}

fn refine<G>(node: G, tmax: f64, tol: f64, abs_tol: f64) -> Result<QuadResult>
where
    G: Fn(f64) -> Result<f64>,
{
    // level 0: step 1/2 over [-tmax, tmax]
    let mut h = 0.5;
    let kmax = (tmax / h).floor() as i64;
    let mut sum = 0.0;
    for k in -kmax..=kmax {
        sum += node(k as f64 * h)?;
    }
    let mut prev = sum * h;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let kmax = (tmax / h).floor() as i64;
        let mut k = -kmax;
        if k % 2 == 0 {
            k += 1;
        }
        while k <= kmax {
            sum += node(k as f64 * h)?;
            k += 2;
        }
        let value = sum * h;
        let err = (value - prev).abs();
        if level >= 3 && err <= (tol * value.abs()).max(abs_tol) {
            return Ok(QuadResult {
                value,
                error_estimate: err,
                levels: level,
            });
        }
        prev = value;
    }
    Err(Error::NonConvergence(format!(
        "quadrature did not reach tolerance {tol:e} (absolute {abs_tol:e})"
    )))
}

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonConvergence(format!(
            "integrand not finite at {x}"
        )))
    }
}

/// `∫_a^∞ f` by the exp-sinh rule `x = a + exp(π/2 · sinh t)`.
pub fn exp_sinh<F>(f: F, a: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    exp_sinh_abs(f, a, tol, f64::MIN_POSITIVE)
}

/// As [`exp_sinh`], also accepting a change below `abs_tol`.
pub fn exp_sinh_abs<F>(f: F, a: f64, tol: f64, abs_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    refine(
        |t| {
            let u = FRAC_PI_2 * t.sinh();
            let e = u.exp();
            if e == 0.0 || !e.is_finite() {
                return Ok(0.0);
            }
            let w = FRAC_PI_2 * t.cosh() * e;
            let x = a + e;
            let v = f(x)?;
            if v == 0.0 {
                return Ok(0.0);
            }
            finite(w * v, x)
        },
        6.5,
        tol,
        abs_tol,
    )
}

/// `∫_a^b f` by the tanh-sinh rule; endpoints are never sampled.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    tanh_sinh_abs(f, a, b, tol, f64::MIN_POSITIVE)
}

/// As [`tanh_sinh`], also accepting a change below `abs_tol`.
pub fn tanh_sinh_abs<F>(f: F, a: f64, b: f64, tol: f64, abs_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let d = 0.5 * (b - a);
    refine(
        |t| {
            let u = FRAC_PI_2 * t.sinh();
            let ch = u.cosh();
            // distance from the nearer endpoint, without cancellation
            let gap = d / (u.abs().exp() * ch);
            if gap == 0.0 {
                return Ok(0.0);
            }
            let x = if t < 0.0 { a + gap } else { b - gap };
            if x <= a || x >= b {
                return Ok(0.0);
            }
            let w = d * FRAC_PI_2 * t.cosh() / (ch * ch);
            finite(w * f(x)?, x)
        },
        4.0,
        tol,
        abs_tol,
    )
}
