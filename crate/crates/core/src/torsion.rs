//! Conic degeneration of analytic torsion: cross-section conditions,
//! small-eigenvalue counts, the log-det ledger, spectral zeta values from
//! eigenvalue lists, and a radial finite-volume solver for warped products
//! used to watch `Ω_ε → Ω₀` spectrally.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::Arc;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use statrs::consts::EULER_MASCHERONI;
use statrs::function::gamma::gamma_ur;

use crate::error::{Error, Result};
use crate::quad::{exp_sinh_abs, tanh_sinh_abs};
use crate::spectral_data::CrossSection;
use crate::surd::{rational, rational_string, to_f64};

fn require_odd(cs: &CrossSection) -> Result<usize> {
    let n = cs.manifold_dim();
    if n % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "torsion pipeline requires odd n, got n = {n}"
        )));
    }
    Ok(n)
}

/// Smallest eigenvalue of `Δ_N` on all `p`-forms; `None` if the space is empty.
fn bottom_of_spectrum(cs: &CrossSection, p: i64) -> Result<Option<BigRational>> {
    let m = cs.min_eigenvalues(p)?;
    Ok(match (m.mu, m.gamma) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    })
}

fn describe(v: &Option<BigRational>) -> String {
    v.as_ref().map_or("none".to_string(), rational_string)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, holds: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            holds,
            detail,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "holds": self.holds, "detail": self.detail})
    }
}

/// The middle-degree spectrum of the cross-section avoids `[0, 3/4]`.
pub fn check_modified_witt(cs: &CrossSection) -> Result<Check> {
    let n = require_odd(cs)?;
    let p = ((n - 1) / 2) as i64;
    let bottom = bottom_of_spectrum(cs, p)?;
    let holds = bottom.as_ref().is_none_or(|b| b > &rational(3, 4));
    Ok(Check::new(
        "modified Witt",
        holds,
        format!(
            "degree {p}: b = {}, smallest eigenvalue {} vs [0, 3/4]",
            cs.betti_at(p),
            describe(&bottom)
        ),
    ))
}

/// Whether the cross-section conditions alone rule out `0` as an indicial
/// root of `Δ_q^M`.
pub fn check_no_resonance_sufficient(cs: &CrossSection, q: i64) -> Result<Check> {
    let n = cs.manifold_dim() as i64;
    if q < 0 || q > n {
        return Err(Error::InvalidInput(format!(
            "form degree q = {q} outside 0..={n}"
        )));
    }
    if n % 2 == 1 {
        if q != (n - 1) / 2 && q != (n + 1) / 2 {
            return Ok(Check::new(
                "no resonance",
                true,
                format!("q = {q} is not adjacent to the middle degree"),
            ));
        }
        let w = check_modified_witt(cs)?;
        return Ok(Check::new(
            "no resonance",
            w.holds,
            format!("q = {q} is adjacent to the middle degree; {}", w.detail),
        ));
    }
    let h = n / 2;
    let (holds, detail) = if (q - h).abs() > 1 {
        (true, format!("|q - n/2| = {} > 1", (q - h).abs()))
    } else if q == h - 1 {
        let b = cs.betti_at(h - 1);
        (
            b == 0,
            format!("q = n/2 - 1 needs H^{}(N) = 0, b = {b}", h - 1),
        )
    } else if q == h + 1 {
        let b = cs.betti_at(h);
        (b == 0, format!("q = n/2 + 1 needs H^{h}(N) = 0, b = {b}"))
    } else {
        let bottom = bottom_of_spectrum(cs, h)?;
        (
            bottom.as_ref().is_none_or(|b| b > &rational(1, 1)),
            format!(
                "q = n/2 needs degree-{h} spectrum off [0, 1], smallest {}",
                describe(&bottom)
            ),
        )
    };
    Ok(Check::new("no resonance", holds, detail))
}

/// Number of small eigenvalues `N_q = dim ker Δ^{Ω₀} + dim ker_{L²} Δ^M - dim ker Δ^{Ω_ε₀}`.
pub fn small_eig_count(q: i64, kernel_dims: [u64; 3]) -> Result<u64> {
    if q == 0 {
        return Ok(0);
    }
    let [omega0, m, eps0] = kernel_dims;
    (omega0 + m).checked_sub(eps0).ok_or_else(|| {
        Error::InvalidInput(format!(
            "inconsistent kernel dimensions in degree {q}: {omega0} + {m} - {eps0} < 0"
        ))
    })
}

/// Conditions under which every `N_q` vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaConditions {
    pub n: usize,
    /// `b_q(N) = 0` for `1 ≤ q ≤ n-2`.
    pub cohomology: Check,
    /// Middle degree off `[0, 15/4)`.
    pub middle_gap: Check,
    /// Exact forms one below the middle off `[0, 7/4)`.
    pub exact_gap: Check,
}

impl LemmaConditions {
    pub fn condition_a(&self) -> bool {
        self.cohomology.holds
    }

    pub fn condition_b(&self) -> bool {
        self.middle_gap.holds && self.exact_gap.holds
    }

    pub fn pass(&self) -> bool {
        self.condition_a() && self.condition_b()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "a": {"holds": self.condition_a(), "checks": [self.cohomology.to_json()]},
            "b": {"holds": self.condition_b(),
                  "checks": [self.middle_gap.to_json(), self.exact_gap.to_json()]},
            "pass": self.pass(),
        })
    }
}

pub fn check_lemma_conditions(cs: &CrossSection) -> Result<LemmaConditions> {
    let n = require_odd(cs)?;
    let nonzero: Vec<String> = (1..=n as i64 - 2)
        .filter(|&p| cs.betti_at(p) != 0)
        .map(|p| format!("b_{p} = {}", cs.betti_at(p)))
        .collect();
    let cohomology = Check::new(
        "b_q(N) = 0 for 1 <= q <= n-2",
        nonzero.is_empty(),
        if nonzero.is_empty() {
            "all vanish".to_string()
        } else {
            nonzero.join(", ")
        },
    );
    let mid = ((n - 1) / 2) as i64;
    let bottom = bottom_of_spectrum(cs, mid)?;
    let middle_gap = Check::new(
        "middle-degree spectrum off [0, 15/4)",
        bottom.as_ref().is_none_or(|b| b >= &rational(15, 4)),
        format!("degree {mid}: smallest eigenvalue {}", describe(&bottom)),
    );
    let lambda = cs.min_eigenvalues(mid - 1)?.lambda;
    let exact_gap = Check::new(
        "exact spectrum one below the middle off [0, 7/4)",
        lambda.as_ref().is_none_or(|l| l >= &rational(7, 4)),
        format!(
            "degree {}: smallest exact eigenvalue {}",
            mid - 1,
            describe(&lambda)
        ),
    );
    Ok(LemmaConditions {
        n,
        cohomology,
        middle_gap,
        exact_gap,
    })
}

/// Ledger data for one form degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeData {
    pub q: i64,
    /// `ζ_q^M(0)`.
    pub zeta_m_at_0: f64,
    /// Small eigenvalues `μ_i^q(ε)` at the ε being assembled.
    #[serde(default)]
    pub small_eigs: Vec<f64>,
    pub log_det_omega0: f64,
    pub log_det_m: f64,
    /// `(dim ker Δ^{Ω₀}, dim ker_{L²} Δ^M, dim ker Δ^{Ω_ε₀})`.
    pub kernel_dims: [u64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegenerationLedger {
    pub n: usize,
    pub degrees: Vec<DegreeData>,
}

impl DegenerationLedger {
    pub fn from_json(document: &str) -> Result<Self> {
        serde_json::from_str(document).map_err(|e| Error::Schema(format!("ledger: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegreeExpansion {
    pub q: i64,
    pub n_small: u64,
    /// `-2 log ε · ζ_q^M(0)`.
    pub log_epsilon_term: f64,
    /// `Σ log μ_i^q(ε)`.
    pub small_eig_term: f64,
    pub log_det_omega0: f64,
    pub log_det_m: f64,
    /// `log det Δ_q^{Ω_ε}` up to `o(1)`.
    pub log_det: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionExpansion {
    pub n: usize,
    pub epsilon: f64,
    pub degrees: Vec<DegreeExpansion>,
    /// `Σ (-1)^q q ζ_q^M(0)`, the coefficient of `log ε`.
    pub log_epsilon_coefficient: f64,
    /// `½ Σ (-1)^{q+1} q Σ_i log μ_i^q`.
    pub small_eig_contribution: f64,
    /// `Σ (-1)^q q Σ_i log μ_i^q`, the weighting without the half.
    pub small_eig_contribution_unhalved: f64,
    pub log_t_omega0: f64,
    pub log_t_m: f64,
    /// `log T(Ω_ε)` up to `o(1)`.
    pub log_t: f64,
    /// All `N_q = 0` and all `ζ_q^M(0) = 0`.
    pub epsilon_independent: bool,
}

impl TorsionExpansion {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "epsilon": self.epsilon,
            "degrees": self.degrees.iter().map(|d| json!({
                "q": d.q,
                "N_q": d.n_small,
                "log_epsilon_term": d.log_epsilon_term,
                "small_eig_term": d.small_eig_term,
                "log_det_omega0": d.log_det_omega0,
                "log_det_m": d.log_det_m,
                "log_det": d.log_det,
            })).collect::<Vec<_>>(),
            "log_epsilon_coefficient": self.log_epsilon_coefficient,
            "small_eig_contribution": self.small_eig_contribution,
            "small_eig_contribution_unhalved": self.small_eig_contribution_unhalved,
            "log_t_omega0": self.log_t_omega0,
            "log_t_m": self.log_t_m,
            "log_t": self.log_t,
            "epsilon_independent": self.epsilon_independent,
        })
    }
}

/// `½ (-1)^{q+1} q`, the weight of `log det Δ_q` in `log T`.
pub fn torsion_weight(q: i64) -> f64 {
    let sign = if q % 2 == 0 { -1.0 } else { 1.0 };
    0.5 * sign * q as f64
}

/// `Σ_{q=0}^n (-1)^{q+1} q`: `(n+1)/2` for odd `n`, `-n/2` for even `n`.
pub fn weight_sum(n: usize) -> i64 {
    (0..=n as i64)
        .map(|q| if q % 2 == 0 { -q } else { q })
        .sum()
}

/// Per-degree expansion of `log det Δ_q^{Ω_ε}` and the resulting `log T(Ω_ε)`.
pub fn assemble_log_det_expansion(
    ledger: &DegenerationLedger,
    epsilon: f64,
) -> Result<TorsionExpansion> {
    let n = ledger.n;
    if n % 2 == 0 {
        return Err(Error::Unsupported(format!(
            "torsion pipeline requires odd n, got n = {n}"
        )));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidInput(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let mut rows: Vec<&DegreeData> = ledger.degrees.iter().collect();
    rows.sort_by_key(|d| d.q);
    let degrees: Vec<i64> = rows.iter().map(|d| d.q).collect();
    if degrees != (0..=n as i64).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(format!(
            "incomplete ledger: need each degree 0..={n} exactly once, got {degrees:?}"
        )));
    }
    let log_eps = epsilon.ln();
    let mut out = Vec::with_capacity(rows.len());
    for d in rows {
        let n_small = small_eig_count(d.q, d.kernel_dims)?;
        if d.small_eigs.len() as u64 != n_small {
            return Err(Error::InvalidInput(format!(
                "degree {}: {} small eigenvalues given, N_q = {n_small}",
                d.q,
                d.small_eigs.len()
            )));
        }
        if let Some(bad) = d.small_eigs.iter().find(|m| !(**m > 0.0)) {
            return Err(Error::InvalidInput(format!(
                "degree {}: small eigenvalue {bad} is not positive",
                d.q
            )));
        }
        let log_epsilon_term = -2.0 * log_eps * d.zeta_m_at_0;
        let small_eig_term: f64 = d.small_eigs.iter().map(|m| m.ln()).sum();
        out.push(DegreeExpansion {
            q: d.q,
            n_small,
            log_epsilon_term,
            small_eig_term,
            log_det_omega0: d.log_det_omega0,
            log_det_m: d.log_det_m,
            log_det: log_epsilon_term + small_eig_term + d.log_det_omega0 + d.log_det_m,
        });
    }
    let weighted = |f: &dyn Fn(&DegreeExpansion) -> f64| -> f64 {
        out.iter().map(|d| torsion_weight(d.q) * f(d)).sum()
    };
    let log_epsilon_coefficient = ledger
        .degrees
        .iter()
        .map(|d| -2.0 * torsion_weight(d.q) * d.zeta_m_at_0)
        .sum();
    let small_eig_contribution = weighted(&|d| d.small_eig_term);
    let small_eig_contribution_unhalved = -2.0 * small_eig_contribution;
    let log_t_omega0 = weighted(&|d| d.log_det_omega0);
    let log_t_m = weighted(&|d| d.log_det_m);
    let log_t = weighted(&|d| d.log_det);
    let epsilon_independent =
        out.iter().all(|d| d.n_small == 0) && ledger.degrees.iter().all(|d| d.zeta_m_at_0 == 0.0);
    Ok(TorsionExpansion {
        n,
        epsilon,
        degrees: out,
        log_epsilon_coefficient,
        small_eig_contribution,
        small_eig_contribution_unhalved,
        log_t_omega0,
        log_t_m,
        log_t,
        epsilon_independent,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZetaValues {
    pub zeta0: f64,
    pub zeta_prime0: f64,
    /// Error bar on `ζ'(0)` from the missing eigenvalues and the
    /// truncated short-time expansion.
    pub zeta_prime0_error: f64,
    /// Where the short-time remainder integral starts.
    pub t_cut: f64,
    pub quadrature_error: f64,
}

impl ZetaValues {
    pub fn to_json(&self) -> Value {
        json!({
            "zeta0": self.zeta0,
            "zeta_prime0": self.zeta_prime0,
            "zeta_prime0_error": self.zeta_prime0_error,
            "t_cut": self.t_cut,
            "quadrature_error": self.quadrature_error,
        })
    }
}

/// `ζ(0)` and `ζ'(0)` of an operator in dimension `dim` from its positive
/// eigenvalues (`(value, multiplicity)`, complete below `complete_below`),
/// the short-time heat coefficients `a_k` of `t^{(k-dim)/2}` for
/// `k = 0..`, and the kernel dimension.
pub fn zeta_from_eigenvalues(
    eigs: &[(f64, u64)],
    complete_below: f64,
    heat_coeffs: &[f64],
    dim: usize,
    kernel_dim: u64,
    tolerance: f64,
) -> Result<ZetaValues> {
    if heat_coeffs.len() <= dim {
        return Err(Error::InvalidInput(format!(
            "heat coefficients must reach the t^0 term (need {} of them, got {})",
            dim + 1,
            heat_coeffs.len()
        )));
    }
    if let Some(w) = eigs.windows(2).find(|w| w[1].0 < w[0].0) {
        return Err(Error::InvalidInput(format!(
            "eigenvalues not sorted at {}",
            w[1].0
        )));
    }
    if let Some(e) = eigs.iter().find(|e| !(e.0 > 0.0)) {
        return Err(Error::InvalidInput(format!(
            "eigenvalue {} is not positive",
            e.0
        )));
    }
    if eigs.last().is_some_and(|e| e.0 >= complete_below) || !(complete_below > 0.0) {
        return Err(Error::InvalidInput(
            "completeness level must exceed every listed eigenvalue".into(),
        ));
    }
    let kd = kernel_dim as f64;
    let d = dim as f64;
    let trace = |t: f64| -> f64 {
        eigs.iter()
            .map(|&(l, m)| m as f64 * (-t * l).exp())
            .sum::<f64>()
    };
    let expansion = |t: f64| -> f64 {
        heat_coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * t.powf((k as f64 - d) / 2.0))
            .sum()
    };
    // Weyl estimate of the missing eigenvalues' heat trace
    let a0 = heat_coeffs[0].abs();
    let missing = |t: f64| -> f64 {
        let tail = gamma_ur(d / 2.0, t * complete_below);
        a0 * t.powf(-d / 2.0) * tail
    };
    let t_cut = (40.0 / complete_below).min(0.5);

    // poles of ∫₀¹ t^{s-1} a_k t^{(k-d)/2}
    let poles: f64 = heat_coeffs
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != dim)
        .map(|(k, a)| a / ((k as f64 - d) / 2.0))
        .sum();
    let zeta0 = heat_coeffs[dim] - kd;

    let remainder = tanh_sinh_abs(
        |t| Ok((kd + trace(t) - expansion(t)) / t),
        t_cut,
        1.0,
        1e-12,
        1e-15,
    )?;
    let large = exp_sinh_abs(|t| Ok(trace(1.0 + t) / (1.0 + t)), 0.0, 1e-12, 1e-15)?;
    let zeta_prime0 = poles + EULER_MASCHERONI * zeta0 + remainder.value + large.value;

    // the remainder below t_cut behaves like t^{(K-d)/2} with K coefficients
    let r_cut = (kd + trace(t_cut) - expansion(t_cut)).abs();
    let power = (heat_coeffs.len() as f64 - d) / 2.0;
    let below_cut = r_cut / power;
    let truncation =
        exp_sinh_abs(|t| Ok(missing(t_cut + t) / (t_cut + t)), 0.0, 1e-6, 1e-15)?.value;
    let quadrature_error = remainder.error_estimate + large.error_estimate;
    let zeta_prime0_error = below_cut + truncation + quadrature_error + 1e-12 * zeta_prime0.abs();
    if zeta_prime0_error > tolerance {
        return Err(Error::InsufficientTruncation(format!(
            "zeta'(0) error bar {zeta_prime0_error:.3e} exceeds tolerance {tolerance:e}; \
             extend the eigenvalue list or the heat coefficients"
        )));
    }
    Ok(ZetaValues {
        zeta0,
        zeta_prime0,
        zeta_prime0_error,
        t_cut,
        quadrature_error,
    })
}

/// Behaviour of a warped-product radius function at an end of `[0, L]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EndTag {
    /// `f ~ slope · distance`; `slope = 1` is a smooth pole.
    Cone { slope: f64 },
    /// A smooth pole at the end of a glued family: `f ~ distance`.
    Glued,
}

/// Radius function of `dr² + f(r)² h_N` on `[0, length]`.
#[derive(Clone)]
pub struct Profile {
    pub length: f64,
    pub left: EndTag,
    pub right: EndTag,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for Profile {
    fn fmt(&self, fmt: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fmt.debug_struct("Profile")
            .field("length", &self.length)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish_non_exhaustive()
    }
}

impl Profile {
    pub fn new<F>(length: f64, left: EndTag, right: EndTag, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            length,
            left,
            right,
            f: Arc::new(f),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    /// `f(r) = sin r` on `[0, π]`: the round sphere.
    pub fn round_sphere() -> Self {
        Self::new(
            PI,
            EndTag::Cone { slope: 1.0 },
            EndTag::Cone { slope: 1.0 },
            f64::sin,
        )
    }

    fn check(&self) -> Result<()> {
        if !(self.length > 0.0) || !self.length.is_finite() {
            return Err(Error::InvalidInput(format!(
                "profile length {}",
                self.length
            )));
        }
        let n = 1000;
        for i in 1..n {
            let r = self.length * i as f64 / n as f64;
            let v = self.eval(r);
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "profile must be positive in the interior, f({r}) = {v}"
                )));
            }
        }
        let d = 1e-7 * self.length;
        for (tag, at, r) in [
            (self.left, "left", d),
            (self.right, "right", self.length - d),
        ] {
            let slope = self.eval(r) / d;
            let ok = match tag {
                EndTag::Cone { slope: s } => (slope - s).abs() <= 1e-4 * s.max(1.0),
                EndTag::Glued => {
                    self.eval(if at == "left" { 0.0 } else { self.length })
                        .abs()
                        < 1e-12
                        && slope > 0.0
                }
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "{at} end tagged {tag:?} but f/distance = {slope}"
                )));
            }
        }
        Ok(())
    }
}

/// `-u'' - (dim-1)(f'/f) u' + (μ/f²) u = λ u` on a warped product.
#[derive(Clone, Debug)]
pub struct RadialProblem {
    pub profile: Profile,
    /// Dimension of the warped product (`1 + dim N`).
    pub dim: usize,
    /// Cross-section eigenvalue of the angular mode.
    pub mu: f64,
    /// Cells on the coarsest grid.
    pub cells: usize,
}

/// Symmetric tridiagonal matrix: `diag` and the `off` diagonal below it.
struct Tridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues below `x` (Sturm count via `LDLᵀ` pivots).
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let prev = if d == 0.0 { f64::EPSILON * 1e-3 } else { d };
            d = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / prev;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection.
    fn eigenvalue(&self, k: usize) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.diag.len() {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i < self.off.len() {
                    self.off[i].abs()
                } else {
                    0.0
                };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

impl RadialProblem {
    fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidInput(
                "warped product needs dimension >= 2".into(),
            ));
        }
        if !(self.mu >= 0.0) {
            return Err(Error::InvalidInput(format!(
                "mode eigenvalue {} < 0",
                self.mu
            )));
        }
        if self.cells < 8 {
            return Err(Error::InvalidInput("need at least 8 cells".into()));
        }
        self.profile.check()
    }

    /// Cell-centred finite volumes with weight `f^{dim-1}`. Faces at the poles
    /// carry no flux, so bounded solutions are selected; for `μ > 0` the
    /// `μ/f²` term forces `u → 0` at the tip.
    fn matrix(&self, cells: usize) -> Result<Tridiagonal> {
        let h = self.profile.length / cells as f64;
        let w = |r: f64| self.profile.eval(r).powi(self.dim as i32 - 1);
        let mass: Vec<f64> = (0..cells).map(|i| w((i as f64 + 0.5) * h) * h).collect();
        let flux: Vec<f64> = (1..cells).map(|i| w(i as f64 * h) / h).collect();
        let mut diag = vec![0.0; cells];
        for i in 0..cells {
            let f = self.profile.eval((i as f64 + 0.5) * h);
            let left = if i > 0 { flux[i - 1] } else { 0.0 };
            let right = if i + 1 < cells { flux[i] } else { 0.0 };
            diag[i] = (left + right) / mass[i] + self.mu / (f * f);
        }
        let off: Vec<f64> = (0..cells - 1)
            .map(|i| -flux[i] / (mass[i] * mass[i + 1]).sqrt())
            .collect();
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "indefinite discretization: profile produced non-finite entries".into(),
            ));
        }
        Ok(Tridiagonal { diag, off })
    }

    fn eigenvalues_on(&self, cells: usize, count: usize) -> Result<Vec<f64>> {
        let m = self.matrix(cells)?;
        Ok((0..count).map(|k| m.eigenvalue(k)).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadialEigenvalue {
    /// Richardson-extrapolated value.
    pub value: f64,
    /// `|λ_{h/2} - λ_h| / 3`.
    pub discretization_error: f64,
    /// Raw values at `h`, `h/2`, `h/4`.
    pub raw: [f64; 3],
    /// `(λ_h - λ_{h/2}) / (λ_{h/2} - λ_{h/4})`, near 4 for a second-order scheme.
    pub richardson_ratio: f64,
}

/// The `count` smallest eigenvalues, extrapolated from `cells`, `2·cells`
/// and `4·cells` grids.
pub fn radial_eigenvalues(problem: &RadialProblem, count: usize) -> Result<Vec<RadialEigenvalue>> {
    problem.validate()?;
    if count == 0 || count > problem.cells {
        return Err(Error::InvalidInput(format!(
            "count must be in 1..={}",
            problem.cells
        )));
    }
    let grids: Vec<Vec<f64>> = [1, 2, 4]
        .par_iter()
        .map(|&m| problem.eigenvalues_on(m * problem.cells, count))
        .collect::<Result<_>>()?;
    Ok((0..count)
        .map(|k| {
            let raw = [grids[0][k], grids[1][k], grids[2][k]];
            let d1 = raw[0] - raw[1];
            let d2 = raw[1] - raw[2];
            RadialEigenvalue {
                value: raw[2] + (raw[2] - raw[1]) / 3.0,
                discretization_error: d2.abs() / 3.0,
                raw,
                richardson_ratio: d1 / d2,
            }
        })
        .collect())
}

/// `10t³ - 15t⁴ + 6t⁵` clamped to `[0, 1]`: a C² step.
pub fn quintic_step(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
}

/// Limit space `Ω₀` of the demonstrator: exact cone `f = a·r` for
/// `r ≤ 1/2` over the round `S²`, closed off by a smooth cap at `r = π`.
pub fn limit_profile(a: f64) -> Profile {
    let f = move |r: f64| {
        let pole = r + (r.sin() - r) * quintic_step((r - 0.5) / 0.5);
        let slope = a + (1.0 - a) * quintic_step((r - 1.0) / 1.0);
        slope * pole
    };
    Profile::new(
        PI,
        EndTag::Cone { slope: a },
        EndTag::Cone { slope: 1.0 },
        f,
    )
}

/// `Ω_ε`: the tip of [`limit_profile`] replaced by `ε·F(r/ε)`, where
/// `F(ρ) = ρ` for `ρ ≤ 7/8` and `F(ρ) = aρ` for `ρ ≥ 9/8`.
pub fn glued_profile(a: f64, epsilon: f64) -> Result<Profile> {
    if !(epsilon > 0.0) || 9.0 * epsilon / 8.0 > 0.5 {
        return Err(Error::InvalidInput(format!(
            "epsilon must lie in (0, 4/9], got {epsilon}"
        )));
    }
    let limit = limit_profile(a);
    let f = move |r: f64| {
        let rho = r / epsilon;
        if rho >= 9.0 / 8.0 {
            return limit.eval(r);
        }
        let s = 1.0 + (a - 1.0) * quintic_step((rho - 7.0 / 8.0) * 4.0);
        r * s
    };
    Ok(Profile::new(
        PI,
        EndTag::Glued,
        EndTag::Cone { slope: 1.0 },
        f,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrackedEigenvalue {
    /// Angular degree `l` on `S²`; multiplicity `2l + 1`.
    pub l: usize,
    /// Index within the mode, from 0.
    pub index: usize,
    pub limit: RadialEigenvalue,
    /// One entry per ε.
    pub glued: Vec<RadialEigenvalue>,
    /// `|λ(Ω_ε) - λ(Ω₀)|` per ε.
    pub distances: Vec<f64>,
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceTable {
    pub a: f64,
    pub epsilons: Vec<f64>,
    pub cells: usize,
    pub modified_witt: bool,
    /// Smallest eigenvalue of `Ω_ε` other than the constant mode, per ε.
    pub first_nonzero: Vec<f64>,
    pub tracked: Vec<TrackedEigenvalue>,
}

impl ConvergenceTable {
    pub fn all_monotone(&self) -> bool {
        self.tracked.iter().all(|t| t.monotone)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(
            "a,epsilon,l,index,multiplicity,lambda_epsilon,lambda_0,distance,disc_error_epsilon,disc_error_0\n",
        );
        for t in &self.tracked {
            for (i, e) in self.epsilons.iter().enumerate() {
                s.push_str(&format!(
                    "{},{},{},{},{},{:.12e},{:.12e},{:.6e},{:.3e},{:.3e}\n",
                    self.a,
                    e,
                    t.l,
                    t.index,
                    2 * t.l + 1,
                    t.glued[i].value,
                    t.limit.value,
                    t.distances[i],
                    t.glued[i].discretization_error,
                    t.limit.discretization_error
                ));
            }
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "a": self.a,
            "epsilons": self.epsilons,
            "cells": self.cells,
            "modified_witt": self.modified_witt,
            "first_nonzero": self.first_nonzero,
            "all_monotone": self.all_monotone(),
            "tracked": self.tracked.iter().map(|t| json!({
                "l": t.l,
                "index": t.index,
                "multiplicity": 2 * t.l + 1,
                "lambda_0": t.limit.value,
                "lambda_0_error": t.limit.discretization_error,
                "lambda_epsilon": t.glued.iter().map(|g| g.value).collect::<Vec<_>>(),
                "lambda_epsilon_error": t.glued.iter().map(|g| g.discretization_error).collect::<Vec<_>>(),
                "distances": t.distances,
                "monotone": t.monotone,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Coarse-grid cells per unit of `1/ε` in the glued solves.
pub const CELLS_PER_EPSILON: f64 = 64.0;

/// Eigenvalues of the Laplacian on functions of the three-dimensional glued
/// family `Ω_ε` against those of the conic limit `Ω₀`, for the `count`
/// smallest nonzero branches.
pub fn spectral_convergence_demo(
    a: f64,
    epsilons: &[f64],
    count: usize,
    cells: usize,
) -> Result<ConvergenceTable> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::InvalidInput(format!(
            "cone slope a must lie in (0, 1], got {a}"
        )));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidInput(
            "epsilons must be strictly decreasing".into(),
        ));
    }
    // cross-section S² scaled by a: degree-1 bottom eigenvalue 2/a²
    let modified_witt = 2.0 / (a * a) > 0.75;
    let modes = count + 1;
    let problem = |profile: Profile, l: usize, cells: usize| RadialProblem {
        profile,
        dim: 3,
        mu: (l * (l + 1)) as f64,
        cells,
    };
    // the gluing collar has width ε/4 and needs several cells
    let glued_cells = |e: f64| cells.max((CELLS_PER_EPSILON / e).ceil() as usize);

    let limit: Vec<Vec<RadialEigenvalue>> = (0..modes)
        .into_par_iter()
        .map(|l| radial_eigenvalues(&problem(limit_profile(a), l, cells), count + 1))
        .collect::<Result<_>>()?;
    let mut branches: Vec<(usize, usize, f64)> = limit
        .iter()
        .enumerate()
        .flat_map(|(l, v)| v.iter().enumerate().map(move |(k, e)| (l, k, e.value)))
        .filter(|&(l, k, _)| !(l == 0 && k == 0))
        .collect();
    branches.sort_by(|x, y| x.2.partial_cmp(&y.2).unwrap_or(Ordering::Equal));
    branches.truncate(count);

    let glued: Vec<Vec<Vec<RadialEigenvalue>>> = epsilons
        .par_iter()
        .map(|&e| {
            (0..modes)
                .map(|l| {
                    radial_eigenvalues(&problem(glued_profile(a, e)?, l, glued_cells(e)), count + 1)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let first_nonzero = glued
        .iter()
        .map(|per_l| {
            per_l
                .iter()
                .enumerate()
                .flat_map(|(l, v)| v.iter().enumerate().filter(move |(k, _)| l > 0 || *k > 0))
                .map(|(_, e)| e.value)
                .fold(f64::INFINITY, f64::min)
        })
        .collect();

    let tracked = branches
        .iter()
        .map(|&(l, k, _)| {
            let lim = limit[l][k].clone();
            let series: Vec<RadialEigenvalue> = glued.iter().map(|g| g[l][k].clone()).collect();
            let distances: Vec<f64> = series.iter().map(|g| (g.value - lim.value).abs()).collect();
            let monotone = distances.windows(2).all(|w| w[1] < w[0]);
            TrackedEigenvalue {
                l,
                index: k,
                limit: lim,
                glued: series,
                distances,
                monotone,
            }
        })
        .collect();

    Ok(ConvergenceTable {
        a,
        epsilons: epsilons.to_vec(),
        cells,
        modified_witt,
        first_nonzero,
        tracked,
    })
}

/// Circle of length `L`: positive eigenvalues `(2πj/L)²`, each twice.
pub fn circle_fixture(length: f64, count: usize) -> Vec<(f64, u64)> {
    (1..=count)
        .map(|j| ((2.0 * PI * j as f64 / length).powi(2), 2))
        .collect()
}

/// Eigenvalue list of a cross-section degree as `(value, multiplicity)` pairs.
pub fn degree_eigenvalues(cs: &CrossSection, p: i64) -> Result<(Vec<(f64, u64)>, Option<f64>)> {
    let fs = cs
        .spectrum(p)?
        .ok_or_else(|| Error::MissingSpectrum(p.max(0) as usize))?;
    let mut v: Vec<(f64, u64)> = fs
        .exact
        .iter()
        .chain(&fs.coexact)
        .map(|e| (to_f64(&e.value), e.multiplicity))
        .collect();
    v.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(Ordering::Equal));
    Ok((v, fs.truncation.as_ref().map(to_f64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_data::{load_cross_section, sphere_preset};

    #[test]
    fn witt_on_spheres() {
        let s2 = sphere_preset(3, 8).unwrap();
        assert!(check_modified_witt(&s2).unwrap().holds);
        assert!(check_modified_witt(&sphere_preset(4, 8).unwrap()).is_err());
        // the round S² scaled up by 2 has degree-1 bottom 1/2
        assert!(
            !check_modified_witt(&s2.rescaled(2.0).unwrap())
                .unwrap()
                .holds
        );
    }

    #[test]
    fn witt_fails_with_middle_cohomology() {
        let doc = r#"{"dim":2,"betti":[1,2,1],"spectra":{
            "0":{"exact":[],"coexact":[[2.0,3]],"harmonic_dim":1,"truncation":4},
            "1":{"exact":[[2.0,3]],"coexact":[[2.0,3]],"harmonic_dim":2,"truncation":4}}}"#;
        let cs = load_cross_section(doc).unwrap();
        assert!(!check_modified_witt(&cs).unwrap().holds);
        assert!(!check_no_resonance_sufficient(&cs, 1).unwrap().holds);
        assert!(check_no_resonance_sufficient(&cs, 0).unwrap().holds);
    }

    #[test]
    fn no_resonance_on_spheres() {
        for n in 3..=8 {
            let cs = sphere_preset(n, 8).unwrap();
            for q in 0..=n as i64 {
                assert!(
                    check_no_resonance_sufficient(&cs, q).unwrap().holds,
                    "n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn even_middle_degree_needs_gap_above_one() {
        // n = 4, middle degree 2 of a 3-dimensional cross-section at 0.9
        let doc = r#"{"dim":3,"betti":[1,0,0,1],"spectra":{
            "2":{"exact":[[4.0,1]],"coexact":[[0.9,1]],"harmonic_dim":0,"truncation":5}}}"#;
        let cs = load_cross_section(doc).unwrap();
        assert!(!check_no_resonance_sufficient(&cs, 2).unwrap().holds);
    }

    #[test]
    fn small_counts() {
        assert_eq!(small_eig_count(1, [2, 1, 3]).unwrap(), 0);
        assert_eq!(small_eig_count(1, [1, 1, 1]).unwrap(), 1);
        assert_eq!(small_eig_count(0, [1, 1, 1]).unwrap(), 0);
        assert!(small_eig_count(2, [0, 0, 1]).is_err());
    }

    #[test]
    fn lemma_conditions_on_spheres() {
        for n in [5, 7] {
            assert!(check_lemma_conditions(&sphere_preset(n, 8).unwrap())
                .unwrap()
                .pass());
        }
        let r = check_lemma_conditions(&sphere_preset(3, 8).unwrap()).unwrap();
        assert!(r.condition_a());
        assert!(!r.condition_b());
        // shrinking the cross-section pushes the spectrum up
        let small = sphere_preset(3, 8).unwrap().rescaled(0.5).unwrap();
        assert!(check_lemma_conditions(&small).unwrap().condition_b());
    }

    fn ledger(n: usize, zeta: &[f64]) -> DegenerationLedger {
        DegenerationLedger {
            n,
            degrees: (0..=n as i64)
                .map(|q| DegreeData {
                    q,
                    zeta_m_at_0: zeta[q as usize],
                    small_eigs: Vec::new(),
                    log_det_omega0: 0.3 * q as f64 + 1.0,
                    log_det_m: -0.7 + 0.1 * (q * q) as f64,
                    kernel_dims: [0, 0, 0],
                })
                .collect(),
        }
    }

    #[test]
    fn log_epsilon_coefficient() {
        let l = ledger(3, &[0.0, 0.5, 0.0, 0.0]);
        let e = assemble_log_det_expansion(&l, 0.1).unwrap();
        assert_eq!(e.log_epsilon_coefficient, -0.5);
        assert!(!e.epsilon_independent);
        let base = assemble_log_det_expansion(&ledger(3, &[0.0; 4]), 0.1).unwrap();
        assert!((e.log_t - base.log_t - (-0.5) * 0.1f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn torsion_splits_without_small_eigenvalues() {
        let e = assemble_log_det_expansion(&ledger(5, &[0.0; 6]), 0.01).unwrap();
        assert!(e.epsilon_independent);
        assert_eq!(e.log_t, e.log_t_omega0 + e.log_t_m);
    }

    #[test]
    fn incomplete_ledger_rejected() {
        let mut l = ledger(3, &[0.0; 4]);
        l.degrees.pop();
        assert!(assemble_log_det_expansion(&l, 0.1).is_err());
        let mut l = ledger(3, &[0.0; 4]);
        l.degrees[2].kernel_dims = [1, 0, 0];
        assert!(assemble_log_det_expansion(&l, 0.1).is_err());
        l.degrees[2].small_eigs = vec![1e-3];
        let e = assemble_log_det_expansion(&l, 0.1).unwrap();
        assert!((e.small_eig_contribution - (-(1e-3f64).ln())).abs() < 1e-12);
    }

    #[test]
    fn weight_sums() {
        assert_eq!(weight_sum(3), 2);
        assert_eq!(weight_sum(5), 3);
        assert_eq!(weight_sum(4), -2);
        assert_eq!(weight_sum(6), -3);
    }

    #[test]
    fn sturm_count_on_a_small_matrix() {
        // eigenvalues of tridiag(-1, 2, -1), size 3: 2 - √2, 2, 2 + √2
        let m = Tridiagonal {
            diag: vec![2.0; 3],
            off: vec![-1.0; 2],
        };
        assert!((m.eigenvalue(0) - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((m.eigenvalue(1) - 2.0).abs() < 1e-14);
        assert!((m.eigenvalue(2) - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn quintic_is_c2() {
        let h = 1e-4;
        assert_eq!(quintic_step(0.0), 0.0);
        assert_eq!(quintic_step(1.0), 1.0);
        let d2 =
            |t: f64| (quintic_step(t + h) - 2.0 * quintic_step(t) + quintic_step(t - h)) / (h * h);
        assert!(d2(h).abs() < 1e-2 && d2(1.0 - h).abs() < 1e-2);
    }

    #[test]
    fn profiles_match_on_the_overlap() {
        let lim = limit_profile(0.8);
        let g = glued_profile(0.8, 0.1).unwrap();
        for r in [0.12, 0.2, 0.4, 1.0, 3.0] {
            assert!((lim.eval(r) - g.eval(r)).abs() < 1e-15);
        }
        assert!((g.eval(0.05) - 0.05).abs() < 1e-15);
        assert!(lim.check().is_ok() && g.check().is_ok());
    }
}
