//! Indicial roots of the b-operator `P_b` of the Hodge Laplacian on `q`-forms.
//!
//! With `c = n/2 - q` the four families are
//!
//! ```text
//! I¹ = ±√((c-1)² + α²),   α² ∈ harmonic(q) ∪ coexact(q)
//! I² = ±√((c+1)² + α²),   α² ∈ harmonic(q-1) ∪ exact(q-1)
//! I³ = ±(√(c² + α²) - 1), α² ∈ exact(q)
//! I⁴ = ±(√(c² + α²) + 1), α² ∈ exact(q)
//! ```
//!
//! Harmonic forms enter with `α² = 0` and multiplicity `b_p(N)`. Values are
//! kept as exact surds, so coincidences across families are detected exactly.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::spectral_data::{CrossSection, Eigenvalue};
use crate::surd::{int, rational, rational_from_f64, rational_string, Surd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    I1,
    I2,
    I3,
    I4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::I1, Family::I2, Family::I3, Family::I4];

    /// Shift `σ` inside the root: the radicand is `(n/2 - q + σ)² + α²`.
    pub fn inner_offset(self) -> i64 {
        match self {
            Family::I1 => -1,
            Family::I2 => 1,
            Family::I3 | Family::I4 => 0,
        }
    }

    /// Shift added to the root before the sign is applied.
    pub fn outer_shift(self) -> i64 {
        match self {
            Family::I3 => -1,
            Family::I4 => 1,
            Family::I1 | Family::I2 => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::I1 => "I1",
            Family::I2 => "I2",
            Family::I3 => "I3",
            Family::I4 => "I4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `n/2 - q`.
pub fn center(n: usize, q: i64) -> BigRational {
    rational(n as i64, 2) - int(q)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialRoot {
    pub family: Family,
    /// `+1` or `-1`; a zero root is stored once with `+1`.
    pub sign: i8,
    pub alpha2: BigRational,
    /// Whether `α² = 0` comes from harmonic forms.
    pub harmonic: bool,
    /// Dimension of the eigenspace contributed by this root.
    pub multiplicity: u64,
    value: Surd,
}

impl IndicialRoot {
    fn build(
        family: Family,
        sign: i8,
        c: &BigRational,
        alpha2: BigRational,
        harmonic: bool,
        multiplicity: u64,
    ) -> Self {
        let magnitude = root_magnitude(family, c, &alpha2);
        let value = if sign < 0 { magnitude.neg() } else { magnitude };
        Self {
            family,
            sign,
            alpha2,
            harmonic,
            multiplicity,
            value,
        }
    }

    pub fn value(&self) -> &Surd {
        &self.value
    }

    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn inner_offset(&self) -> i64 {
        self.family.inner_offset()
    }

    pub fn outer_shift(&self) -> i64 {
        self.family.outer_shift()
    }

    /// Same family, branch and spectral source.
    pub fn same_root(&self, other: &IndicialRoot) -> bool {
        self.family == other.family
            && self.sign == other.sign
            && self.harmonic == other.harmonic
            && self.alpha2 == other.alpha2
    }

    pub fn to_json(&self) -> Value {
        json!({
            "value": self.value_f64(),
            "value_exact": self.value.exact_string(),
            "exact": {
                "family": self.family.name(),
                "sign": self.sign,
                "sigma": self.inner_offset(),
                "alpha2": rational_string(&self.alpha2),
                "delta": self.outer_shift(),
                "harmonic": self.harmonic,
            },
            "mult": self.multiplicity,
        })
    }
}

/// `√((c+σ)² + α²) + δ` for the given family.
fn root_magnitude(family: Family, c: &BigRational, alpha2: &BigRational) -> Surd {
    let s = c + int(family.inner_offset());
    Surd::sqrt(&s * &s + alpha2).add_rational(&int(family.outer_shift()))
}

/// A distinct root value with its merged multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedRoot {
    pub value: Surd,
    pub multiplicity: u64,
    pub by_family: Vec<(Family, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicialSet {
    pub n: usize,
    pub q: i64,
    /// Every root with `|value| ≤ radius` is listed.
    pub radius: Surd,
    pub roots: Vec<IndicialRoot>,
}

impl IndicialSet {
    pub fn family(&self, family: Family) -> impl Iterator<Item = &IndicialRoot> {
        self.roots.iter().filter(move |r| r.family == family)
    }

    /// Distinct values of one family, ascending.
    pub fn family_values(&self, family: Family) -> Vec<Surd> {
        let mut v: Vec<Surd> = self.family(family).map(|r| r.value.clone()).collect();
        v.dedup();
        v
    }

    /// Distinct values over all families with merged multiplicities.
    pub fn merged(&self) -> Vec<MergedRoot> {
        let mut out: Vec<MergedRoot> = Vec::new();
        for r in &self.roots {
            match out.last_mut() {
                Some(m) if m.value == r.value => {
                    m.multiplicity += r.multiplicity;
                    match m.by_family.iter_mut().find(|(f, _)| *f == r.family) {
                        Some((_, k)) => *k += r.multiplicity,
                        None => m.by_family.push((r.family, r.multiplicity)),
                    }
                }
                _ => out.push(MergedRoot {
                    value: r.value.clone(),
                    multiplicity: r.multiplicity,
                    by_family: vec![(r.family, r.multiplicity)],
                }),
            }
        }
        out
    }

    pub fn contains_value(&self, v: &Surd) -> bool {
        self.roots.iter().any(|r| &r.value == v)
    }

    /// Smallest root `≥ 0`, if one lies within the radius.
    pub fn smallest_nonnegative(&self) -> Option<&Surd> {
        self.roots
            .iter()
            .map(|r| &r.value)
            .find(|v| !v.is_negative())
    }

    pub fn to_json(&self) -> Value {
        let families: serde_json::Map<String, Value> = Family::ALL
            .iter()
            .map(|f| {
                (
                    f.name().to_string(),
                    Value::Array(
                        self.family_values(*f)
                            .iter()
                            .map(|v| json!({"value": v.to_f64(), "exact": v.exact_string()}))
                            .collect(),
                    ),
                )
            })
            .collect();
        json!({
            "n": self.n,
            "q": self.q,
            "radius": self.radius.to_f64(),
            "radius_exact": self.radius.exact_string(),
            "families": families,
            "roots": self.roots.iter().map(IndicialRoot::to_json).collect::<Vec<_>>(),
        })
    }
}

struct Source<'a> {
    degree: i64,
    harmonic: u64,
    list: &'a [Eigenvalue],
    truncation: Option<&'a BigRational>,
}

fn source_for<'a>(cs: &'a CrossSection, family: Family, q: i64) -> Result<Source<'a>> {
    let degree = match family {
        Family::I2 => q - 1,
        _ => q,
    };
    let empty = Source {
        degree,
        harmonic: 0,
        list: &[],
        truncation: None,
    };
    let structurally_empty = match family {
        Family::I1 => cs.coexact_structurally_empty(degree),
        _ => cs.exact_structurally_empty(degree),
    };
    let harmonic = match family {
        Family::I1 | Family::I2 => cs.betti_at(degree),
        _ => 0,
    };
    if structurally_empty {
        return Ok(Source { harmonic, ..empty });
    }
    let fs = cs
        .spectrum(degree)?
        .expect("degree in range when the list is not structurally empty");
    let list = match family {
        Family::I1 => &fs.coexact,
        _ => &fs.exact,
    };
    Ok(Source {
        degree,
        harmonic,
        list,
        truncation: fs.truncation.as_ref(),
    })
}

fn check_q(cs: &CrossSection, q: i64) -> Result<()> {
    let n = cs.manifold_dim() as i64;
    if q < 0 || q > n {
        return Err(Error::InvalidInput(format!(
            "form degree q = {q} outside 0..={n}"
        )));
    }
    Ok(())
}

/// Indicial set with every root of modulus at most `radius`.
pub fn indicial_set(cs: &CrossSection, q: i64, radius: f64) -> Result<IndicialSet> {
    let r = rational_from_f64(radius)
        .filter(|r| !r.is_negative())
        .ok_or_else(|| Error::InvalidInput("radius must be a nonnegative number".into()))?;
    indicial_set_to(cs, q, &Surd::from_rational(r))
}

/// As [`indicial_set`] with an exact radius.
pub fn indicial_set_to(cs: &CrossSection, q: i64, radius: &Surd) -> Result<IndicialSet> {
    check_q(cs, q)?;
    if radius.is_negative() {
        return Err(Error::InvalidInput("radius must be nonnegative".into()));
    }
    let n = cs.manifold_dim();
    let c = center(n, q);
    let mut roots = Vec::new();
    for family in Family::ALL {
        let src = source_for(cs, family, q)?;
        let shifted = radius.add_rational(&int(-family.outer_shift()));
        if shifted.is_negative() {
            continue;
        }
        let s = &c + int(family.inner_offset());
        // largest α² that can still produce |value| ≤ radius
        let level = shifted.square().add_rational(&-(&s * &s));
        if let Some(t) = src.truncation {
            if !level.is_negative() && level.cmp_rational(t) != Ordering::Less {
                return Err(Error::InsufficientTruncation(format!(
                    "family {family} at radius {} needs degree-{} eigenvalues up to {:.6}, \
                     lists are complete only below {}",
                    radius.exact_string(),
                    src.degree,
                    level.to_f64(),
                    rational_string(t)
                )));
            }
        }
        let harmonic = (src.harmonic > 0).then(|| (BigRational::zero(), src.harmonic, true));
        let listed = src
            .list
            .iter()
            .take_while(|e| level.cmp_rational(&e.value) != Ordering::Less)
            .map(|e| (e.value.clone(), e.multiplicity, false));
        for (alpha2, mult, is_harmonic) in harmonic.into_iter().chain(listed) {
            let plus = IndicialRoot::build(family, 1, &c, alpha2.clone(), is_harmonic, mult);
            if plus.value.abs() > *radius {
                continue;
            }
            if plus.value.is_zero() {
                roots.push(plus);
            } else {
                roots.push(IndicialRoot::build(
                    family,
                    -1,
                    &c,
                    alpha2,
                    is_harmonic,
                    mult,
                ));
                roots.push(plus);
            }
        }
    }
    roots.sort_by(|a, b| {
        a.value
            .cmp(&b.value)
            .then(a.family.cmp(&b.family))
            .then(a.sign.cmp(&b.sign))
            .then(a.alpha2.cmp(&b.alpha2))
    });
    Ok(IndicialSet {
        n,
        q,
        radius: radius.clone(),
        roots,
    })
}

/// Smallest nonnegative indicial root `ν₀`. Zero means `0 ∈ 𝓘(P_b)`.
pub fn nu0(cs: &CrossSection, q: i64) -> Result<Surd> {
    check_q(cs, q)?;
    let c = center(cs.manifold_dim(), q);
    // any known root magnitude bounds ν₀ from above
    let mut bound: Option<Surd> = None;
    for family in Family::ALL {
        let src = source_for(cs, family, q)?;
        let first = if src.harmonic > 0 {
            Some(BigRational::zero())
        } else {
            src.list.first().map(|e| e.value.clone())
        };
        if let Some(a2) = first {
            let v = root_magnitude(family, &c, &a2).abs();
            if bound.as_ref().is_none_or(|b| &v < b) {
                bound = Some(v);
            }
        }
    }
    let bound = bound.ok_or_else(|| {
        Error::InsufficientTruncation(format!("no indicial roots available in degree {q}"))
    })?;
    let set = indicial_set_to(cs, q, &bound)?;
    set.smallest_nonnegative()
        .cloned()
        .ok_or_else(|| Error::InsufficientTruncation("no nonnegative indicial root found".into()))
}

/// Closed-form `ν₀` valid under the guard `λ_q > 1 - (n/2-q)²`.
pub fn nu0_min_formula(cs: &CrossSection, q: i64) -> Result<Surd> {
    check_q(cs, q)?;
    let c = center(cs.manifold_dim(), q);
    let here = cs.min_eigenvalues(q)?;
    let below = cs.min_eigenvalues(q - 1)?;
    let threshold = int(1) - &c * &c;
    if let Some(l) = &here.lambda {
        if l <= &threshold {
            return Err(Error::GuardViolated(format!(
                "lambda_q = {} is not above 1 - (n/2 - q)^2 = {}; use nu0 instead",
                rational_string(l),
                rational_string(&threshold)
            )));
        }
    }
    let terms = [
        here.lambda.map(|l| root_magnitude(Family::I3, &c, &l)),
        here.gamma.map(|g| root_magnitude(Family::I1, &c, &g)),
        below.mu.map(|m| root_magnitude(Family::I2, &c, &m)),
    ];
    terms
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::InvalidInput(format!("all spectral subspaces empty in degree {q}")))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisBullet {
    pub index: u8,
    pub condition: String,
    pub applicable: bool,
    pub holds: bool,
}

/// Audit of `0 ∉ 𝓘(P_b)`, bullet by bullet and through `ν₀ > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub n: usize,
    pub q: i64,
    pub bullets: Vec<HypothesisBullet>,
    pub nu0: Surd,
    pub bullets_pass: bool,
    pub nu0_positive: bool,
}

impl HypothesisReport {
    pub fn pass(&self) -> bool {
        self.bullets_pass && self.nu0_positive
    }

    pub fn consistent(&self) -> bool {
        self.bullets_pass == self.nu0_positive
    }

    pub fn failing(&self) -> Vec<u8> {
        self.bullets
            .iter()
            .filter(|b| b.applicable && !b.holds)
            .map(|b| b.index)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "q": self.q,
            "pass": self.pass(),
            "nu0": self.nu0.to_f64(),
            "nu0_exact": self.nu0.exact_string(),
            "nu0_positive": self.nu0_positive,
            "bullets": self.bullets.iter().map(|b| json!({
                "index": b.index,
                "condition": b.condition,
                "applicable": b.applicable,
                "holds": b.holds,
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn check_hypothesis_0notindroot(cs: &CrossSection, q: i64) -> Result<HypothesisReport> {
    check_q(cs, q)?;
    let n = cs.manifold_dim();
    let c = center(n, q);
    let half = rational(1, 2);

    let applicable1 = c.abs() <= half;
    let target = int(1) - &c * &c;
    let holds1 = if applicable1 && !cs.exact_structurally_empty(q) {
        let fs = cs.spectrum(q)?.expect("degree in range");
        if fs.truncation.as_ref().is_some_and(|t| &target >= t) {
            return Err(Error::InsufficientTruncation(format!(
                "degree-{q} exact list does not reach {}",
                rational_string(&target)
            )));
        }
        !fs.exact.iter().any(|e| e.value == target)
    } else {
        true
    };
    let applicable2 = c == int(1);
    let applicable3 = c == int(-1);
    let bullets = vec![
        HypothesisBullet {
            index: 1,
            condition: format!(
                "1 - (n/2 - q)^2 = {} is not an eigenvalue on exact {q}-forms",
                rational_string(&target)
            ),
            applicable: applicable1,
            holds: holds1,
        },
        HypothesisBullet {
            index: 2,
            condition: format!("H^{q}(N) = 0 (q = n/2 - 1)"),
            applicable: applicable2,
            holds: !applicable2 || cs.betti_at(q) == 0,
        },
        HypothesisBullet {
            index: 3,
            condition: format!("H^{}(N) = 0 (q = n/2 + 1)", q - 1),
            applicable: applicable3,
            holds: !applicable3 || cs.betti_at(q - 1) == 0,
        },
    ];
    let bullets_pass = bullets.iter().all(|b| !b.applicable || b.holds);
    let nu0 = nu0(cs, q)?;
    let nu0_positive = nu0.is_positive();
    Ok(HypothesisReport {
        n,
        q,
        bullets,
        nu0,
        bullets_pass,
        nu0_positive,
    })
}

/// Distinct values of each family for the round sphere `S^{n-1}`, read off
/// the closed-form table rather than computed from spectra.
pub fn sphere_closed_form(n: usize, q: i64, radius: &BigRational) -> [Vec<BigRational>; 4] {
    let h = rational(n as i64, 2);
    let ni = n as i64;
    // ±(j + base) for j ≥ 0, or the single pair ±base
    let ladder = |base: BigRational, single: bool| -> Vec<BigRational> {
        let mut pos = Vec::new();
        let mut j = 0;
        loop {
            let v = &base + int(j);
            if &v > radius {
                break;
            }
            pos.push(v);
            if single {
                break;
            }
            j += 1;
        }
        let mut all: Vec<BigRational> = pos.iter().map(|v| -v).collect();
        all.extend(pos.iter().filter(|v| !v.is_zero()).cloned());
        all.sort();
        all.dedup();
        all
    };
    let i1 = if q == ni {
        Vec::new()
    } else if q == ni - 1 {
        ladder(h.clone(), true)
    } else if q == 0 {
        ladder(&h - int(1), false)
    } else {
        ladder(h.clone(), false)
    };
    let i2 = if q == 0 {
        Vec::new()
    } else if q == 1 {
        ladder(h.clone(), true)
    } else if q == ni {
        ladder(&h - int(1), false)
    } else {
        ladder(h.clone(), false)
    };
    let (i3, i4) = if q == 0 || q == ni {
        (Vec::new(), Vec::new())
    } else {
        (ladder(&h - int(1), false), ladder(&h + int(1), false))
    };
    [i1, i2, i3, i4]
}

/// Values as `f64`, for display.
pub fn values_f64(values: &[Surd]) -> Vec<f64> {
    values.iter().map(Surd::to_f64).collect()
}
