//! Per-mode Green's functions `g_ν(κ, κ') = I_ν(min)·K_ν(max)` of the
//! operator `-(κ∂_κ)² + ν² + κ²`, the mode sum over indicial roots, and the
//! numerical checks that go with them.

use rayon::prelude::*;
use serde_json::{json, Value};
use statrs::function::gamma::ln_gamma;

use crate::bessel::{log_bessel_ik, MAX_ARG, MIN_ARG};
use crate::error::{Error, Result};
use crate::indicial::indicial_set;
use crate::quad::exp_sinh;
use crate::spectral_data::CrossSection;

/// One mode `ν` of the model kernel with its eigenspace rank.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeKernel {
    pub nu: f64,
    pub rank: u64,
}

impl ModeKernel {
    pub fn new(nu: f64, rank: u64) -> Result<Self> {
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::InvalidInput(format!(
                "mode order must be positive, got {nu}"
            )));
        }
        Ok(Self { nu, rank })
    }

    /// `ln g_ν(κ, κ')`. The diagonal is not a function value and is rejected.
    pub fn ln_value(&self, kappa: f64, kappa_prime: f64) -> Result<f64> {
        check_positive(kappa, "kappa")?;
        check_positive(kappa_prime, "kappa'")?;
        if kappa == kappa_prime {
            return Err(Error::InvalidInput(format!(
                "kernel is singular on the diagonal kappa = kappa' = {kappa}"
            )));
        }
        let (lo, hi) = if kappa < kappa_prime {
            (kappa, kappa_prime)
        } else {
            (kappa_prime, kappa)
        };
        Ok(log_bessel_ik(self.nu, lo)?.ln_i + log_bessel_ik(self.nu, hi)?.ln_k)
    }

    /// `g_ν(κ, κ')`, without the rank.
    pub fn value(&self, kappa: f64, kappa_prime: f64) -> Result<f64> {
        Ok(self.ln_value(kappa, kappa_prime)?.exp())
    }
}

fn check_positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeTerm {
    pub nu: f64,
    pub nu_exact: String,
    pub rank: u64,
    pub g: f64,
    /// `rank · g`.
    pub contribution: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelKernel {
    pub kappa: f64,
    pub kappa_prime: f64,
    pub radius: f64,
    pub value: f64,
    pub modes: Vec<ModeTerm>,
    /// Rigorous bound on the roots in `(R, 2R]`.
    pub tail_bound_next: f64,
    /// Geometric extrapolation of the roots beyond `2R`.
    pub tail_estimate_beyond: f64,
    pub tolerance: f64,
}

impl ModelKernel {
    pub fn tail(&self) -> f64 {
        self.tail_bound_next + self.tail_estimate_beyond
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kappa": self.kappa,
            "kappa_prime": self.kappa_prime,
            "radius": self.radius,
            "value": self.value,
            "tail_bound_next": self.tail_bound_next,
            "tail_estimate_beyond": self.tail_estimate_beyond,
            "tolerance": self.tolerance,
            "modes": self.modes.iter().map(|m| json!({
                "nu": m.nu,
                "nu_exact": m.nu_exact,
                "rank": m.rank,
                "g": m.g,
                "contribution": m.contribution,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `Σ rank(ν)·g_ν(κ, κ')` over the positive indicial roots `ν ≤ R`.
///
/// The tail uses `I_ν(a)K_ν(b) ≤ (a/b)^ν I_ν(b)K_ν(b)` for `a < b` on the
/// roots in `(R, 2R]`, so the spectral data must reach radius `2R`.
pub fn model_kernel(
    cs: &CrossSection,
    q: i64,
    kappa: f64,
    kappa_prime: f64,
    radius: f64,
    tolerance: f64,
) -> Result<ModelKernel> {
    check_positive(kappa, "kappa")?;
    check_positive(kappa_prime, "kappa'")?;
    if kappa == kappa_prime {
        return Err(Error::InvalidInput(
            "kernel is singular on the diagonal".into(),
        ));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::InvalidInput(format!(
            "radius must be positive, got {radius}"
        )));
    }
    let set = indicial_set(cs, q, 2.0 * radius)?;
    let merged: Vec<_> = set
        .merged()
        .into_iter()
        .filter(|m| m.value.is_positive())
        .collect();
    let (inside, outside): (Vec<_>, Vec<_>) =
        merged.into_iter().partition(|m| m.value.to_f64() <= radius);

    let modes: Vec<ModeTerm> = inside
        .par_iter()
        .map(|m| {
            let nu = m.value.to_f64();
            let g = ModeKernel::new(nu, m.multiplicity)?.value(kappa, kappa_prime)?;
            Ok(ModeTerm {
                nu,
                nu_exact: m.value.exact_string(),
                rank: m.multiplicity,
                g,
                contribution: m.multiplicity as f64 * g,
            })
        })
        .collect::<Result<_>>()?;
    // sorted-order reduction keeps the sum bit-stable
    let value = modes.iter().map(|m| m.contribution).sum();

    let (a, b) = if kappa < kappa_prime {
        (kappa, kappa_prime)
    } else {
        (kappa_prime, kappa)
    };
    let ln_ratio = (a / b).ln();
    let bounds: Vec<f64> = outside
        .par_iter()
        .map(|m| {
            let nu = m.value.to_f64();
            let l = log_bessel_ik(nu, b)?;
            Ok(m.multiplicity as f64 * (nu * ln_ratio + l.ln_i + l.ln_k).exp())
        })
        .collect::<Result<_>>()?;
    let tail_bound_next: f64 = bounds.iter().sum();
    // each doubling of R multiplies terms by at most (a/b)^R while ranks grow
    // at most like ν^(n-2)
    let growth = 2f64.powi(set.n as i32 - 1) * (radius * ln_ratio).exp();
    let tail_estimate_beyond = if tail_bound_next == 0.0 {
        0.0
    } else if growth < 1.0 {
        tail_bound_next * growth / (1.0 - growth)
    } else {
        f64::INFINITY
    };
    let out = ModelKernel {
        kappa,
        kappa_prime,
        radius,
        value,
        modes,
        tail_bound_next,
        tail_estimate_beyond,
        tolerance,
    };
    if out.tail() > tolerance {
        return Err(Error::InsufficientTruncation(format!(
            "mode sum tail {:.3e} exceeds tolerance {tolerance:e} at radius {radius}; \
             increase the radius or move kappa, kappa' apart",
            out.tail()
        )));
    }
    Ok(out)
}

fn ode_residual(mode: &ModeKernel, kappa: f64, kappa_prime: f64, h: f64) -> Result<f64> {
    let f = |k: f64| mode.value(k, kappa_prime);
    let (fm, f0, fp) = (f(kappa - h)?, f(kappa)?, f(kappa + h)?);
    let d2 = (fp - 2.0 * f0 + fm) / (h * h);
    let d1 = (fp - fm) / (2.0 * h);
    let nu = mode.nu;
    Ok(-(kappa * kappa * d2 + kappa * d1) + (nu * nu + kappa * kappa) * f0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OdeCheck {
    pub nu: f64,
    pub kappa_prime: f64,
    pub steps: [f64; 3],
    /// Max residual over the sample points at each step.
    pub residuals: [f64; 3],
    /// `log₂` of successive residual ratios.
    pub orders: [f64; 2],
}

impl OdeCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals[0]
    }
}

/// Finite-difference residual of `-(κ∂_κ)² + ν² + κ²` applied to
/// `g_ν(·, κ')` at the sample points, at steps `h`, `h/2`, `h/4`.
pub fn verify_mode_ode(nu: f64, kappa_prime: f64, h: f64, kappas: &[f64]) -> Result<OdeCheck> {
    let mode = ModeKernel::new(nu, 1)?;
    check_positive(kappa_prime, "kappa'")?;
    check_positive(h, "h")?;
    if kappas.is_empty() {
        return Err(Error::InvalidInput("no sample points".into()));
    }
    for &k in kappas {
        if (k - kappa_prime).abs() <= h {
            return Err(Error::InvalidInput(format!(
                "stencil at kappa = {k} with step {h} touches the diagonal kappa' = {kappa_prime}"
            )));
        }
        if k - h <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "stencil at kappa = {k} leaves kappa > 0"
            )));
        }
    }
    let steps = [h, h / 2.0, h / 4.0];
    let mut residuals = [0.0; 3];
    for (r, &step) in residuals.iter_mut().zip(&steps) {
        for &k in kappas {
            *r = f64::max(*r, ode_residual(&mode, k, kappa_prime, step)?.abs());
        }
    }
    let orders = [
        (residuals[0] / residuals[1]).log2(),
        (residuals[1] / residuals[2]).log2(),
    ];
    Ok(OdeCheck {
        nu,
        kappa_prime,
        steps,
        residuals,
        orders,
    })
}

/// Jump of `∂_κ g_ν(κ, κ₀)` across `κ = κ₀`, from the one-sided derivatives.
pub fn wronskian_jump(nu: f64, kappa0: f64) -> Result<f64> {
    check_positive(kappa0, "kappa0")?;
    let l = log_bessel_ik(nu, kappa0)?;
    let ik = (l.ln_i + l.ln_k).exp();
    // right: I(κ₀)K'(κ₀); left: I'(κ₀)K(κ₀)
    Ok(ik * l.dk_over_k() - ik * l.di_over_i())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZfLimit {
    pub nu: f64,
    pub s: f64,
    /// `e^{-ν|ln s|}/(2ν)`.
    pub limit: f64,
    /// `(κ, |g_ν(κ, sκ) - limit|)`.
    pub deviations: Vec<(f64, f64)>,
    /// Deviations strictly decrease along the sequence once `κ < 0.1`.
    pub monotone_below_tenth: bool,
}

/// `g_ν(κ, sκ)` against its `κ → 0` limit along a sequence of `κ`.
pub fn zf_limit_check(nu: f64, s: f64, kappas: &[f64]) -> Result<ZfLimit> {
    let mode = ModeKernel::new(nu, 1)?;
    check_positive(s, "s")?;
    let limit = (-nu * s.ln().abs()).exp() / (2.0 * nu);
    let deviations = kappas
        .iter()
        .map(|&k| {
            // the diagonal limit is the continuous extension I_ν K_ν
            let g = if s == 1.0 {
                let l = log_bessel_ik(nu, k)?;
                (l.ln_i + l.ln_k).exp()
            } else {
                mode.value(k, s * k)?
            };
            Ok((k, (g - limit).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let small: Vec<f64> = deviations
        .iter()
        .filter(|(k, _)| *k < 0.1)
        .map(|(_, d)| *d)
        .collect();
    let monotone_below_tenth = small.windows(2).all(|w| w[1] < w[0]);
    Ok(ZfLimit {
        nu,
        s,
        limit,
        deviations,
        monotone_below_tenth,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moment {
    pub nu: f64,
    pub quadrature: f64,
    pub error_estimate: f64,
    /// `√π Γ(ν+½)/Γ(ν)`.
    pub closed_form: f64,
}

impl Moment {
    pub fn relative_error(&self) -> f64 {
        ((self.quadrature - self.closed_form) / self.closed_form).abs()
    }
}

/// `∫₀^∞ κ^ν K̃_ν(κ) dκ` with `K̃_ν = K_ν/(Γ(ν)2^{ν-1})`.
pub fn ktilde_moment(nu: f64) -> Result<Moment> {
    check_positive(nu, "nu")?;
    let norm = ln_gamma(nu) + (nu - 1.0) * std::f64::consts::LN_2;
    let integrand = |k: f64| -> Result<f64> {
        if k < MIN_ARG {
            // κ^ν K_ν(κ) → Γ(ν) 2^{ν-1}
            return Ok(1.0);
        }
        if k > MAX_ARG {
            return Ok(0.0);
        }
        Ok((nu * k.ln() + log_bessel_ik(nu, k)?.ln_k - norm).exp())
    };
    let r = exp_sinh(integrand, 0.0, 1e-12)?;
    let closed_form = (0.5 * std::f64::consts::PI.ln() + ln_gamma(nu + 0.5) - ln_gamma(nu)).exp();
    Ok(Moment {
        nu,
        quadrature: r.value,
        error_estimate: r.error_estimate,
        closed_form,
    })
}
