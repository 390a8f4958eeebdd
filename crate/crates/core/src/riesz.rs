//! `L^p` intervals for the Riesz transform `T_q = (d + δ) Δ_q^{-1/2}` on
//! `q`-forms of an asymptotically conic manifold.
//!
//! The spectral input is the cross-section; the topological input (the
//! injectivity of relative-to-absolute cohomology maps and the decay of the
//! `L²` kernel of `Δ_q`) is supplied by the caller in [`TopologyInput`].

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::indicial::{
    center, check_hypothesis_0notindroot, indicial_set_to, nu0, Family, HypothesisReport,
    IndicialRoot, IndicialSet,
};
use crate::spectral_data::CrossSection;
use crate::surd::{int, rational, rational_from_f64, rational_string, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Injectivity {
    Yes,
    No,
    Unknown,
}

impl Injectivity {
    pub fn as_str(self) -> &'static str {
        match self {
            Injectivity::Yes => "yes",
            Injectivity::No => "no",
            Injectivity::Unknown => "unknown",
        }
    }
}

impl std::str::FromStr for Injectivity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(Injectivity::Yes),
            "no" => Ok(Injectivity::No),
            "unknown" => Ok(Injectivity::Unknown),
            _ => Err(Error::InvalidInput(format!(
                "injectivity must be yes, no or unknown, got '{s}'"
            ))),
        }
    }
}

/// Topological data of `M` that the cross-section cannot determine.
#[derive(Clone, Debug, PartialEq)]
pub struct TopologyInput {
    /// `H^{q+1}(M̄, ∂M̄) → H^{q+1}(M̄)`.
    pub e_injective_low: Injectivity,
    /// `H^{n-q+1}(M̄, ∂M̄) → H^{n-q+1}(M̄)`.
    pub e_injective_high: Injectivity,
    /// `dim ker_{L²}(Δ_q)`.
    pub kernel_dim: u64,
    /// Decay exponent `ν` with `ker_{L²}(Δ_q) ⊂ x^{ν + n/2 - 1} L^∞`.
    pub kernel_decay: Option<f64>,
    /// Order of asymptotic conicity; `None` for exactly conic ends.
    pub n0: Option<f64>,
}

impl Default for TopologyInput {
    fn default() -> Self {
        Self {
            e_injective_low: Injectivity::Unknown,
            e_injective_high: Injectivity::Unknown,
            kernel_dim: 0,
            kernel_decay: None,
            n0: None,
        }
    }
}

/// Result of `-max(ℝ⁻ ∩ 𝓘(P_b) \ 𝓘(D))` style definitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NuIndex {
    Value(Surd),
    /// No qualifying root up to this radius.
    AtLeast(Surd),
    /// The difference set is empty for structural reasons.
    Absent,
}

impl NuIndex {
    pub fn value(&self) -> Option<&Surd> {
        match self {
            NuIndex::Value(v) => Some(v),
            _ => None,
        }
    }

    fn min(&self, other: &NuIndex) -> NuIndex {
        use NuIndex::*;
        match (self, other) {
            (Absent, x) | (x, Absent) => x.clone(),
            (Value(a), Value(b)) => Value(a.min(b).clone()),
            (Value(a), AtLeast(b)) | (AtLeast(b), Value(a)) => {
                if a <= b {
                    Value(a.clone())
                } else {
                    AtLeast(b.clone())
                }
            }
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b).clone()),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            NuIndex::Value(v) => json!({"value": v.to_f64(), "exact": v.exact_string()}),
            NuIndex::AtLeast(v) => json!({"at_least": v.to_f64(), "exact": v.exact_string()}),
            NuIndex::Absent => json!("absent"),
        }
    }
}

impl fmt::Display for NuIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuIndex::Value(v) => write!(f, "{v}"),
            NuIndex::AtLeast(v) => write!(f, ">= {v}"),
            NuIndex::Absent => f.write_str("absent"),
        }
    }
}

fn is_in_d(root: &IndicialRoot, c: &BigRational) -> bool {
    match root.family {
        Family::I1 => root.value().cmp_rational(&-(c - int(1))) == Ordering::Equal,
        Family::I2 => true,
        Family::I3 => root.sign < 0 || root.value().is_zero(),
        Family::I4 => root.sign > 0,
    }
}

fn is_in_delta(root: &IndicialRoot, c: &BigRational) -> bool {
    match root.family {
        Family::I1 => true,
        Family::I2 => root.value().cmp_rational(&(c + int(1))) == Ordering::Equal,
        Family::I3 => root.sign < 0 || root.value().is_zero(),
        Family::I4 => root.sign > 0,
    }
}

fn filtered(set: &IndicialSet, keep: impl Fn(&IndicialRoot) -> bool) -> IndicialSet {
    IndicialSet {
        n: set.n,
        q: set.q,
        radius: set.radius.clone(),
        roots: set.roots.iter().filter(|r| keep(r)).cloned().collect(),
    }
}

/// `𝓘(d)` and `𝓘(δ)` as family-filtered subsets of `𝓘(P_b)`.
pub fn indicial_sets_d_delta(
    cs: &CrossSection,
    q: i64,
    radius: f64,
) -> Result<(IndicialSet, IndicialSet)> {
    let r = rational_from_f64(radius)
        .filter(|r| !r.is_negative())
        .ok_or_else(|| Error::InvalidInput("radius must be a nonnegative number".into()))?;
    let set = indicial_set_to(cs, q, &Surd::from_rational(r))?;
    Ok(split_d_delta(&set))
}

fn split_d_delta(set: &IndicialSet) -> (IndicialSet, IndicialSet) {
    let c = center(set.n, set.q);
    (
        filtered(set, |r| is_in_d(r, &c)),
        filtered(set, |r| is_in_delta(r, &c)),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuIndices {
    pub nu_d: NuIndex,
    pub nu_delta: NuIndex,
    pub nu_big_d: NuIndex,
}

impl NuIndices {
    pub fn to_json(&self) -> Value {
        json!({
            "nu_d": self.nu_d.to_json(),
            "nu_delta": self.nu_delta.to_json(),
            "nu_D": self.nu_big_d.to_json(),
        })
    }
}

/// Closed forms of `ν_d`, `ν_δ` read off the smallest eigenvalues; `None`
/// stands for `+∞`. Each finite value is attained by a root in the
/// relevant difference set, so it bounds the index from above.
fn closed_form_bounds(cs: &CrossSection, q: i64) -> Result<(Option<Surd>, Option<Surd>)> {
    let n = cs.manifold_dim();
    let c = center(n, q);
    let h = rational(n as i64, 2);
    let here = cs.min_eigenvalues(q)?;
    let below = cs.min_eigenvalues(q - 1)?;
    let i4 = here
        .lambda
        .as_ref()
        .map(|l| Surd::sqrt(&c * &c + l).add_rational(&int(1)));
    // harmonic q-forms survive in the I¹ remainder only for q > n/2 - 1
    let coexact_min = if cs.coexact_structurally_empty(q) {
        None
    } else {
        cs.spectrum(q)?
            .and_then(|fs| fs.coexact.first().map(|e| e.value.clone()))
    };
    let gamma_t = if cs.betti_at(q) > 0 && int(q) > &h - int(1) {
        Some(BigRational::zero())
    } else {
        coexact_min
    };
    // harmonic (q-1)-forms survive in the I² remainder only for q < n/2 + 1
    let mu_t = if cs.betti_at(q - 1) > 0 && int(q) < &h + int(1) {
        Some(BigRational::zero())
    } else {
        below.lambda.clone()
    };
    let cm = &c - int(1);
    let cp = &c + int(1);
    let d = [i4.clone(), gamma_t.map(|g| Surd::sqrt(&cm * &cm + g))]
        .into_iter()
        .flatten()
        .min();
    let delta = [i4, mu_t.map(|m| Surd::sqrt(&cp * &cp + m))]
        .into_iter()
        .flatten()
        .min();
    Ok((d, delta))
}

fn remainder_index(
    set: &IndicialSet,
    member: impl Fn(&IndicialRoot) -> bool,
    structurally_empty: bool,
) -> NuIndex {
    let best = set
        .roots
        .iter()
        .filter(|r| r.value().is_negative() && !member(r))
        .map(|r| r.value().neg())
        .min();
    match best {
        Some(v) => NuIndex::Value(v),
        None if structurally_empty => NuIndex::Absent,
        None => NuIndex::AtLeast(set.radius.clone()),
    }
}

/// `ν_d`, `ν_δ`, `ν_D` from the set-theoretic definition, with roots
/// compared by family and branch.
pub fn nu_indices(cs: &CrossSection, q: i64) -> Result<NuIndices> {
    let (bd, bdelta) = closed_form_bounds(cs, q)?;
    let radius = match (&bd, &bdelta) {
        (None, None) => Surd::from_int(0),
        (Some(a), None) | (None, Some(a)) => a.clone(),
        (Some(a), Some(b)) => a.max(b).clone(),
    };
    let set = indicial_set_to(cs, q, &radius)?;
    Ok(indices_from_set(&set, bd.is_none(), bdelta.is_none()))
}

/// As [`nu_indices`] but restricted to roots of modulus at most `radius`;
/// an empty difference set yields [`NuIndex::AtLeast`].
pub fn nu_indices_within(cs: &CrossSection, q: i64, radius: f64) -> Result<NuIndices> {
    let (bd, bdelta) = closed_form_bounds(cs, q)?;
    let r = rational_from_f64(radius)
        .filter(|r| !r.is_negative())
        .ok_or_else(|| Error::InvalidInput("radius must be a nonnegative number".into()))?;
    let set = indicial_set_to(cs, q, &Surd::from_rational(r))?;
    Ok(indices_from_set(&set, bd.is_none(), bdelta.is_none()))
}

fn indices_from_set(set: &IndicialSet, d_empty: bool, delta_empty: bool) -> NuIndices {
    let c = center(set.n, set.q);
    let nu_d = remainder_index(set, |r| is_in_d(r, &c), d_empty);
    let nu_delta = remainder_index(set, |r| is_in_delta(r, &c), delta_empty);
    let nu_big_d = nu_d.min(&nu_delta);
    NuIndices {
        nu_d,
        nu_delta,
        nu_big_d,
    }
}

/// `ν_D` by the closed formula stated alongside the guard
/// `λ_q > 1 - (n/2-q)²`, with the branch condition of `μ'` read as
/// `q - 1 ≤ n/2 + 1`. `None` is `+∞`.
pub fn nu_big_d_closed_form(cs: &CrossSection, q: i64) -> Result<Option<Surd>> {
    let n = cs.manifold_dim();
    let c = center(n, q);
    let h = rational(n as i64, 2);
    let here = cs.min_eigenvalues(q)?;
    let below = cs.min_eigenvalues(q - 1)?;
    // λ_{q+1} is the bottom of the coexact q-spectrum
    let lambda_next = if cs.coexact_structurally_empty(q) {
        None
    } else {
        cs.spectrum(q)?
            .and_then(|fs| fs.coexact.first().map(|e| e.value.clone()))
    };
    let gamma_p = if int(q) >= &h - int(1) {
        here.gamma.clone()
    } else {
        lambda_next
    };
    let mu_p = if int(q - 1) <= &h + int(1) {
        below.mu.clone()
    } else {
        below.lambda.clone()
    };
    let cm = &c - int(1);
    let cp = &c + int(1);
    Ok([
        here.lambda
            .map(|l| Surd::sqrt(&c * &c + l).add_rational(&int(1))),
        gamma_p.map(|g| Surd::sqrt(&cm * &cm + g)),
        mu_p.map(|m| Surd::sqrt(&cp * &cp + m)),
    ]
    .into_iter()
    .flatten()
    .min())
}

/// Whether the closed formula and the set-theoretic definition are expected
/// to differ: harmonic forms in the degrees where the branch conditions of
/// `γ'`, `μ'` disagree with the family bookkeeping.
pub fn closed_form_branch_differs(cs: &CrossSection, q: i64) -> bool {
    let h = rational(cs.manifold_dim() as i64, 2);
    let p = int(q - 1);
    (p >= h && p <= &h + int(1) && cs.betti_at(q - 1) > 0)
        || (int(q) == &h - int(1) && cs.betti_at(q) > 0)
}

/// `ν_ker` with the audit of the no-resonance assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuKer {
    pub value: Surd,
    /// Kernel decay snapped to the indicial lattice, when a kernel exists.
    pub snapped_decay: Option<Surd>,
    /// `ν̃ > 1`: false means the no-resonance regime is violated.
    pub no_resonance_consistent: bool,
}

pub fn nu_ker(cs: &CrossSection, q: i64, nu0: &Surd, topo: &TopologyInput) -> Result<NuKer> {
    if !nu0.is_positive() {
        return Err(Error::GuardViolated("nu_ker needs nu0 > 0".into()));
    }
    let cap = nu0.add_rational(&int(2));
    if topo.kernel_dim == 0 {
        return Ok(NuKer {
            value: cap,
            snapped_decay: None,
            no_resonance_consistent: true,
        });
    }
    let decay = topo
        .kernel_decay
        .ok_or_else(|| Error::InvalidInput("kernel decay required when kernel_dim > 0".into()))?;
    let decay = rational_from_f64(decay)
        .ok_or_else(|| Error::InvalidInput("kernel decay must be finite".into()))?;
    if nu0.cmp_rational(&decay) == Ordering::Greater {
        return Err(Error::InvalidInput(format!(
            "kernel decay {} lies below nu0 = {nu0}",
            rational_string(&decay)
        )));
    }
    let set = indicial_set_to(cs, q, &Surd::from_rational(decay))?;
    let snapped = set
        .roots
        .iter()
        .map(|r| r.value().clone())
        .filter(|v| v.is_positive())
        .max()
        .expect("nu0 lies in the searched range");
    let value = snapped.clone().min(cap);
    Ok(NuKer {
        no_resonance_consistent: snapped.cmp_rational(&int(1)) == Ordering::Greater,
        snapped_decay: Some(snapped),
        value,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Finite(Surd),
    Infinity,
}

impl Endpoint {
    pub fn to_f64(&self) -> f64 {
        match self {
            Endpoint::Finite(s) => s.to_f64(),
            Endpoint::Infinity => f64::INFINITY,
        }
    }

    pub fn exact_string(&self) -> String {
        match self {
            Endpoint::Finite(s) => s.exact_string(),
            Endpoint::Infinity => "inf".into(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Endpoint::Finite(s) => json!({"exact": s.exact_string(), "decimal": s.to_f64()}),
            Endpoint::Infinity => json!({"exact": "inf", "decimal": "inf"}),
        }
    }

    pub fn rational(r: BigRational) -> Self {
        Endpoint::Finite(Surd::from_rational(r))
    }
}

impl PartialOrd for Endpoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Endpoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Endpoint::Infinity, Endpoint::Infinity) => Ordering::Equal,
            (Endpoint::Infinity, _) => Ordering::Greater,
            (_, Endpoint::Infinity) => Ordering::Less,
            (Endpoint::Finite(a), Endpoint::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.exact_string())
    }
}

/// Open interval `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl Interval {
    pub fn contains(&self, p: &BigRational) -> bool {
        let p = Endpoint::rational(p.clone());
        self.lower < p && p < self.upper
    }

    pub fn is_empty(&self) -> bool {
        self.lower >= self.upper
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lower <= self.lower && self.upper <= other.upper)
    }

    pub fn to_json(&self) -> Value {
        json!({"lower": self.lower.to_json(), "upper": self.upper.to_json()})
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

/// `n / x₊` with `n/0 = ∞`.
fn n_over_positive_part(n: usize, x: &Surd) -> Endpoint {
    if x.is_positive() {
        let r = x.recip().expect("nonzero");
        Endpoint::Finite(r.mul_rational(&int(n as i64)))
    } else {
        Endpoint::Infinity
    }
}

/// Lower endpoint `n / (n - (n/2 + 1 - ν_ker)₊)`.
pub fn lower_endpoint(n: usize, nu_ker: &Surd) -> Endpoint {
    let h = rational(n as i64, 2);
    let x = nu_ker.neg().add_rational(&(h + int(1)));
    let x = if x.is_positive() {
        x
    } else {
        Surd::from_int(0)
    };
    n_over_positive_part(n, &x.neg().add_rational(&int(n as i64)))
}

/// Upper endpoint `n / (n/2 - ν)₊`.
pub fn upper_endpoint(n: usize, nu: &Surd) -> Endpoint {
    n_over_positive_part(n, &nu.neg().add_rational(&rational(n as i64, 2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditStatus {
    Pass,
    Fail,
    Unknown,
    /// Taken as an input assumption.
    Assumed,
}

impl AuditStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            AuditStatus::Pass => "pass",
            AuditStatus::Fail => "fail",
            AuditStatus::Unknown => "unknown",
            AuditStatus::Assumed => "assumed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AuditItem {
    pub name: String,
    pub status: AuditStatus,
    pub detail: String,
}

impl AuditItem {
    fn new(name: &str, status: AuditStatus, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "status": self.status.as_str(), "detail": self.detail})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SharpInterval {
    Certified(Interval),
    NotCertified {
        reason: String,
        /// Candidate intervals labelled by the case they would follow from.
        candidates: Vec<(String, Interval)>,
    },
}

impl SharpInterval {
    pub fn certified(&self) -> Option<&Interval> {
        match self {
            SharpInterval::Certified(i) => Some(i),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RieszReport {
    pub n: usize,
    pub q: i64,
    pub hypothesis: HypothesisReport,
    pub nu0: Surd,
    pub indices: Option<NuIndices>,
    pub nu_ker: Option<NuKer>,
    pub sufficient_interval: Option<Interval>,
    pub sharp_interval: SharpInterval,
    /// `None` when the case depends on unknown injectivity.
    pub case: Option<u8>,
    pub assumptions: Vec<AuditItem>,
}

impl RieszReport {
    pub fn hypothesis_failed(&self) -> bool {
        !self.hypothesis.pass()
    }

    pub fn to_json(&self) -> Value {
        let sharp = match &self.sharp_interval {
            SharpInterval::Certified(i) => json!({"certified": true, "interval": i.to_json()}),
            SharpInterval::NotCertified { reason, candidates } => json!({
                "certified": false,
                "reason": reason,
                "candidates": candidates.iter().map(|(label, i)| json!({
                    "label": label, "interval": i.to_json()
                })).collect::<Vec<_>>(),
            }),
        };
        json!({
            "n": self.n,
            "q": self.q,
            "nu0": {"value": self.nu0.to_f64(), "exact": self.nu0.exact_string()},
            "nu_d": self.indices.as_ref().map(|i| i.nu_d.to_json()),
            "nu_delta": self.indices.as_ref().map(|i| i.nu_delta.to_json()),
            "nu_D": self.indices.as_ref().map(|i| i.nu_big_d.to_json()),
            "nu_ker": self.nu_ker.as_ref().map(|k| json!({
                "value": k.value.to_f64(), "exact": k.value.exact_string()
            })),
            "case": self.case,
            "sufficient_interval": self.sufficient_interval.as_ref().map(Interval::to_json),
            "sharp_interval": sharp,
            "hypothesis_0_not_indicial": self.hypothesis.to_json(),
            "assumptions": self.assumptions.iter().map(AuditItem::to_json).collect::<Vec<_>>(),
        })
    }
}

fn case2_interval(
    n: usize,
    lower: &Endpoint,
    nu_big_d: &NuIndex,
    nu_ker: &Surd,
) -> (Interval, bool) {
    // returns the interval and whether ν_D was known well enough
    let (m, certain) = match nu_big_d {
        NuIndex::Value(v) => (v.min(nu_ker).clone(), true),
        NuIndex::Absent => (nu_ker.clone(), true),
        NuIndex::AtLeast(b) => (b.min(nu_ker).clone(), b >= nu_ker),
    };
    (
        Interval {
            lower: lower.clone(),
            upper: upper_endpoint(n, &m),
        },
        certain,
    )
}

pub fn riesz_interval(cs: &CrossSection, q: i64, topo: &TopologyInput) -> Result<RieszReport> {
    let n = cs.manifold_dim();
    let hypothesis = check_hypothesis_0notindroot(cs, q)?;
    let nu0 = hypothesis.nu0.clone();
    let mut assumptions = vec![AuditItem::new(
        "0 not an indicial root",
        if hypothesis.pass() {
            AuditStatus::Pass
        } else {
            AuditStatus::Fail
        },
        format!("nu0 = {nu0}"),
    )];
    if !hypothesis.pass() {
        return Ok(RieszReport {
            n,
            q,
            hypothesis,
            nu0,
            indices: None,
            nu_ker: None,
            sufficient_interval: None,
            sharp_interval: SharpInterval::NotCertified {
                reason: "0 is an indicial root".into(),
                candidates: Vec::new(),
            },
            case: None,
            assumptions,
        });
    }
    let indices = nu_indices(cs, q)?;
    let ker = nu_ker(cs, q, &nu0, topo)?;
    assumptions.push(AuditItem::new(
        "no zero-resonance",
        if ker.no_resonance_consistent {
            AuditStatus::Assumed
        } else {
            AuditStatus::Fail
        },
        match &ker.snapped_decay {
            None => "no L2 kernel; taken as input assumption".to_string(),
            Some(d) if ker.no_resonance_consistent => {
                format!("kernel decay snapped to indicial root {d} > 1")
            }
            Some(d) => format!("kernel decay snapped to {d} <= 1, inconsistent with no resonance"),
        },
    ));

    let lower = lower_endpoint(n, &ker.value);
    let sufficient = Interval {
        lower: lower.clone(),
        upper: upper_endpoint(n, &nu0),
    };

    let h = rational(n as i64, 2);
    let guard_ok = nu0.cmp_rational(&h) != Ordering::Less
        || topo.n0.is_none_or(|n0| {
            rational_from_f64(n0)
                .is_some_and(|r| nu0.add_rational(&int(2)).cmp_rational(&r) == Ordering::Less)
        });
    assumptions.push(AuditItem::new(
        "sharpness guard (n0 > nu0 + 2 or nu0 >= n/2)",
        if guard_ok {
            AuditStatus::Pass
        } else {
            AuditStatus::Fail
        },
        match topo.n0 {
            None => "exactly conic end (n0 = inf)".to_string(),
            Some(v) => format!("n0 = {v}"),
        },
    ));

    let qr = int(q);
    let low_applies = qr < &h - int(1);
    let high_applies = qr > &h + int(1);
    let relevant = if low_applies {
        Some(("e_{q+1}", topo.e_injective_low))
    } else if high_applies {
        Some(("e_{n-q+1}", topo.e_injective_high))
    } else {
        None
    };
    let case = match relevant {
        None => Some(2),
        Some((_, Injectivity::No)) => Some(1),
        Some((_, Injectivity::Yes)) => Some(2),
        Some((_, Injectivity::Unknown)) => None,
    };
    assumptions.push(AuditItem::new(
        "cohomology map injectivity",
        match relevant {
            None => AuditStatus::Pass,
            Some((_, Injectivity::Unknown)) => AuditStatus::Unknown,
            Some(_) => AuditStatus::Pass,
        },
        match relevant {
            None => "not needed for this degree".to_string(),
            Some((name, inj)) => format!("{name} injective: {}", inj.as_str()),
        },
    ));

    let (case2, case2_certain) = case2_interval(n, &lower, &indices.nu_big_d, &ker.value);
    let sharp_interval = if !guard_ok {
        SharpInterval::NotCertified {
            reason: "n0 <= nu0 + 2 with nu0 < n/2".into(),
            candidates: Vec::new(),
        }
    } else {
        match case {
            Some(1) => SharpInterval::Certified(sufficient.clone()),
            Some(_) if case2_certain => SharpInterval::Certified(case2.clone()),
            Some(_) => SharpInterval::NotCertified {
                reason: "nu_D not resolved within the available truncation".into(),
                candidates: vec![("case 2".into(), case2.clone())],
            },
            None => SharpInterval::NotCertified {
                reason: "injectivity of the cohomology map is unknown".into(),
                candidates: vec![
                    ("case 1 (not injective)".into(), sufficient.clone()),
                    ("case 2 (injective)".into(), case2.clone()),
                ],
            },
        }
    };

    Ok(RieszReport {
        n,
        q,
        hypothesis,
        nu0,
        indices: Some(indices),
        nu_ker: Some(ker),
        sufficient_interval: Some(sufficient),
        sharp_interval,
        case,
        assumptions,
    })
}

/// Degree-only interval valid for `|q - n/2| > 1`.
pub fn generic_degree_interval(n: usize, q: i64, kernel_present: bool) -> Result<Interval> {
    let h = rational(n as i64, 2);
    let dist = (&h - int(q)).abs();
    if dist <= int(1) {
        return Err(Error::InvalidInput(format!(
            "generic interval needs |q - n/2| > 1, got {}",
            rational_string(&dist)
        )));
    }
    let nn = int(n as i64);
    let upper = Endpoint::rational(&nn / (&h + int(1) - &dist));
    let no_kernel_lower = &nn / (&h + &dist);
    let lower = if kernel_present {
        let alt = &nn / (&h - int(2) + &dist);
        Endpoint::rational(int(2).min(alt))
    } else {
        Endpoint::rational(no_kernel_lower)
    };
    Ok(Interval { lower, upper })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SobolevReport {
    pub n: usize,
    pub p: BigRational,
    pub p_conjugate: BigRational,
    pub audit: Vec<AuditItem>,
}

impl SobolevReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "p": {"exact": rational_string(&self.p), "decimal": crate::surd::to_f64(&self.p)},
            "p_conjugate": {
                "exact": rational_string(&self.p_conjugate),
                "decimal": crate::surd::to_f64(&self.p_conjugate)
            },
            "assumptions": self.audit.iter().map(AuditItem::to_json).collect::<Vec<_>>(),
        })
    }
}

/// `p = 2n/(n+2)` and its conjugate `2n/(n-2)`.
pub fn sobolev_exponents(n: usize) -> Result<(BigRational, BigRational)> {
    if n < 3 {
        return Err(Error::InvalidInput("Sobolev exponents need n >= 3".into()));
    }
    let n = n as i64;
    Ok((rational(2 * n, n + 2), rational(2 * n, n - 2)))
}

/// Exponents together with the audit of `ν₀ > 0` and `ν_ker > 2` when a
/// cross-section and degree are supplied.
pub fn sobolev_report(
    n: usize,
    data: Option<(&CrossSection, i64, &TopologyInput)>,
) -> Result<SobolevReport> {
    let (p, p_conjugate) = sobolev_exponents(n)?;
    let mut audit = Vec::new();
    if let Some((cs, q, topo)) = data {
        if cs.manifold_dim() != n {
            return Err(Error::InvalidInput(format!(
                "cross-section belongs to dimension {}, not {n}",
                cs.manifold_dim()
            )));
        }
        let v0 = nu0(cs, q)?;
        audit.push(AuditItem::new(
            "nu0 > 0",
            if v0.is_positive() {
                AuditStatus::Pass
            } else {
                AuditStatus::Fail
            },
            format!("nu0 = {v0}"),
        ));
        if v0.is_positive() {
            let k = nu_ker(cs, q, &v0, topo)?;
            audit.push(AuditItem::new(
                "nu_ker > 2",
                if k.value.cmp_rational(&int(2)) == Ordering::Greater {
                    AuditStatus::Pass
                } else {
                    AuditStatus::Fail
                },
                format!("nu_ker = {}", k.value),
            ));
        }
    }
    Ok(SobolevReport {
        n,
        p,
        p_conjugate,
        audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_data::{load_cross_section, sphere_preset};

    fn half(k: i64) -> Surd {
        Surd::from_rational(rational(k, 2))
    }

    #[test]
    fn sphere_d_set_has_no_i1_root() {
        let cs = sphere_preset(4, 12).unwrap();
        let (d, delta) = indicial_sets_d_delta(&cs, 2, 6.0).unwrap();
        assert_eq!(d.family(Family::I1).count(), 0);
        assert!(d.family(Family::I3).all(|r| !r.value().is_positive()));
        assert!(delta.family(Family::I4).all(|r| r.value().is_positive()));
    }

    #[test]
    fn sphere_indices() {
        for n in 3..=7usize {
            let cs = sphere_preset(n, 10).unwrap();
            for q in 1..n as i64 {
                let ix = nu_indices(&cs, q).unwrap();
                assert_eq!(ix.nu_d, NuIndex::Value(half(n as i64)), "n={n} q={q}");
                assert_eq!(ix.nu_delta, NuIndex::Value(half(n as i64)), "n={n} q={q}");
            }
            let ix0 = nu_indices(&cs, 0).unwrap();
            assert_eq!(ix0.nu_delta, NuIndex::Absent);
            assert_eq!(ix0.nu_d, NuIndex::Value(half(n as i64)));
            let ixn = nu_indices(&cs, n as i64).unwrap();
            assert_eq!(ixn.nu_d, NuIndex::Absent);
        }
    }

    #[test]
    fn within_radius_reports_lower_bound() {
        let cs = sphere_preset(4, 10).unwrap();
        let ix = nu_indices_within(&cs, 2, 1.5).unwrap();
        assert_eq!(ix.nu_d, NuIndex::AtLeast(half(3)));
    }

    #[test]
    fn nu_ker_branches() {
        let cs = sphere_preset(4, 10).unwrap();
        let one = Surd::from_int(1);
        let t = TopologyInput::default();
        assert_eq!(nu_ker(&cs, 2, &one, &t).unwrap().value, Surd::from_int(3));
        let t = TopologyInput {
            kernel_dim: 1,
            kernel_decay: Some(6.0),
            ..Default::default()
        };
        assert_eq!(nu_ker(&cs, 2, &one, &t).unwrap().value, Surd::from_int(3));
        let t = TopologyInput {
            kernel_dim: 1,
            kernel_decay: Some(2.5),
            ..Default::default()
        };
        let k = nu_ker(&cs, 2, &one, &t).unwrap();
        assert_eq!(k.value, Surd::from_int(2));
        let t = TopologyInput {
            kernel_dim: 2,
            kernel_decay: None,
            ..Default::default()
        };
        let err = nu_ker(&cs, 2, &one, &t).unwrap_err();
        assert!(err.to_string().contains("kernel decay required"));
    }

    #[test]
    fn euclidean_middle_degree() {
        let cs = sphere_preset(4, 10).unwrap();
        let rep = riesz_interval(&cs, 2, &TopologyInput::default()).unwrap();
        let sharp = rep.sharp_interval.certified().unwrap();
        assert_eq!(sharp.lower, Endpoint::rational(int(1)));
        assert_eq!(sharp.upper, Endpoint::Infinity);
        assert_eq!(rep.case, Some(2));
    }

    #[test]
    fn functions_with_two_ends() {
        let cs = sphere_preset(5, 10).unwrap();
        let topo = TopologyInput {
            e_injective_low: Injectivity::No,
            ..Default::default()
        };
        let rep = riesz_interval(&cs, 0, &topo).unwrap();
        assert_eq!(rep.case, Some(1));
        let sharp = rep.sharp_interval.certified().unwrap();
        assert_eq!(sharp.lower, Endpoint::rational(int(1)));
        assert_eq!(sharp.upper, Endpoint::rational(int(5)));
    }

    #[test]
    fn unknown_injectivity_gives_two_candidates() {
        let cs = sphere_preset(5, 10).unwrap();
        let rep = riesz_interval(&cs, 0, &TopologyInput::default()).unwrap();
        assert_eq!(rep.case, None);
        match rep.sharp_interval {
            SharpInterval::NotCertified { candidates, .. } => assert_eq!(candidates.len(), 2),
            _ => panic!("expected dual report"),
        }
    }

    #[test]
    fn n0_guard_blocks_sharpness() {
        let cs = sphere_preset(4, 10).unwrap();
        let topo = TopologyInput {
            n0: Some(3.0),
            ..Default::default()
        };
        let rep = riesz_interval(&cs, 2, &topo).unwrap();
        assert!(rep.sharp_interval.certified().is_none());
        assert!(rep.sufficient_interval.is_some());
    }

    #[test]
    fn generic_degree_intervals() {
        let i = generic_degree_interval(7, 1, false).unwrap();
        assert_eq!(i.lower, Endpoint::rational(rational(7, 6)));
        assert_eq!(i.upper, Endpoint::rational(rational(7, 2)));
        assert!(i.contains(&int(2)));
        assert!(generic_degree_interval(6, 3, false).is_err());
        let k = generic_degree_interval(7, 1, true).unwrap();
        assert_eq!(k.lower, Endpoint::rational(rational(7, 4)));
    }

    #[test]
    fn sobolev() {
        let (p, pc) = sobolev_exponents(3).unwrap();
        assert_eq!((p, pc), (rational(6, 5), int(6)));
        let (p, pc) = sobolev_exponents(4).unwrap();
        assert_eq!((p, pc), (rational(4, 3), int(4)));
        assert!(sobolev_exponents(2).is_err());
    }

    #[test]
    fn closed_form_matches_on_generic_data() {
        let doc = r#"{"dim":4,"betti":[1,0,0,0,1],"spectra":{
            "1":{"exact":[[2.0,1]],"coexact":[[3.0,1]],"harmonic_dim":0,"truncation":60},
            "2":{"exact":[[3.0,1]],"coexact":[[2.0,1]],"harmonic_dim":0,"truncation":60}}}"#;
        let cs = load_cross_section(doc).unwrap();
        let ix = nu_indices(&cs, 2).unwrap();
        assert_eq!(
            ix.nu_big_d.value().cloned(),
            nu_big_d_closed_form(&cs, 2).unwrap()
        );
    }

    #[test]
    fn hypothesis_failure_yields_empty_report() {
        let doc = r#"{"dim":3,"betti":[1,1,1,1],"spectra":{
            "0":{"exact":[],"coexact":[[1.0,2]],"harmonic_dim":1,"truncation":30},
            "1":{"exact":[[1.0,2]],"coexact":[[4.0,2]],"harmonic_dim":1,"truncation":30}}}"#;
        let cs = load_cross_section(doc).unwrap();
        let rep = riesz_interval(&cs, 1, &TopologyInput::default()).unwrap();
        assert!(rep.hypothesis_failed());
        assert!(rep.sufficient_interval.is_none());
    }
}
