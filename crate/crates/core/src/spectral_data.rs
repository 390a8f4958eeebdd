//! Hodge-decomposed form spectra of a closed cross-section `N`.
//!
//! For every degree `p` the spectrum of the Hodge Laplacian splits into the
//! harmonic part, the part on exact forms (`Im d`) and the part on coexact
//! forms (`Im δ`). `d` intertwines coexact `(p-1)`-forms with exact `p`-forms,
//! so `exact(p) == coexact(p-1)` as multisets; every constructor enforces it.
//!
//! Sphere presets use exact integer eigenvalues. Lists loaded from JSON keep
//! the exact binary value of each float, so downstream arithmetic stays exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::surd::{int, rational_from_f64, rational_string, to_f64};

/// Absolute tolerance used when two independently supplied eigenvalue lists
/// are compared.
pub const EIGEN_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalue {
    pub value: BigRational,
    pub multiplicity: u64,
}

impl Eigenvalue {
    pub fn new(value: BigRational, multiplicity: u64) -> Self {
        Self {
            value,
            multiplicity,
        }
    }

    pub fn value_f64(&self) -> f64 {
        to_f64(&self.value)
    }
}

/// Spectrum of `Δ_N` on `p`-forms, split along the Hodge decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpectrum {
    /// Eigenvalues on `Im d_N`, ascending.
    pub exact: Vec<Eigenvalue>,
    /// Eigenvalues on `Im δ_N`, ascending.
    pub coexact: Vec<Eigenvalue>,
    pub harmonic_dim: u64,
    /// Both lists contain every eigenvalue strictly below this cutoff.
    /// `None` means the lists are complete.
    pub truncation: Option<BigRational>,
}

impl FormSpectrum {
    /// True when every eigenvalue strictly below `level` is listed.
    pub fn complete_below(&self, level: &BigRational) -> bool {
        match &self.truncation {
            None => true,
            Some(t) => level <= t,
        }
    }

    fn canonicalize(&mut self) {
        for list in [&mut self.exact, &mut self.coexact] {
            list.sort_by(|a, b| a.value.cmp(&b.value));
            let mut merged: Vec<Eigenvalue> = Vec::with_capacity(list.len());
            for e in list.drain(..) {
                match merged.last_mut() {
                    Some(last) if last.value == e.value => last.multiplicity += e.multiplicity,
                    _ => merged.push(e),
                }
            }
            *list = merged;
        }
    }
}

/// Smallest eigenvalues of `Δ_N` in degree `p` on the subspaces entering the
/// indicial formulas. `None` stands for an empty subspace (the `+∞` sentinel).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinEigenvalues {
    /// On `Im d_N`.
    pub lambda: Option<BigRational>,
    /// On `(Im δ_N)^⊥ = H^p ⊕ Im d_N`.
    pub mu: Option<BigRational>,
    /// On `(Im d_N)^⊥ = H^p ⊕ Im δ_N`.
    pub gamma: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossSection {
    dim: usize,
    betti: Vec<u64>,
    spectra: BTreeMap<usize, FormSpectrum>,
}

impl CrossSection {
    /// Build and validate a cross-section.
    pub fn new(
        dim: usize,
        betti: Vec<u64>,
        spectra: BTreeMap<usize, FormSpectrum>,
    ) -> Result<Self> {
        let mut cs = Self {
            dim,
            betti,
            spectra,
        };
        for s in cs.spectra.values_mut() {
            s.canonicalize();
        }
        cs.validate()?;
        Ok(cs)
    }

    fn validate(&self) -> Result<()> {
        if self.dim < 1 {
            return Err(Error::InvalidInput(
                "cross-section dimension must be >= 1".into(),
            ));
        }
        if self.betti.len() != self.dim + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} betti numbers, got {}",
                self.dim + 1,
                self.betti.len()
            )));
        }
        for p in 0..=self.dim {
            if self.betti[p] != self.betti[self.dim - p] {
                return Err(Error::Duality { p, q: self.dim - p });
            }
        }
        for (&p, s) in &self.spectra {
            if p > self.dim {
                return Err(Error::InvalidInput(format!(
                    "spectrum given for degree {p} beyond dimension {}",
                    self.dim
                )));
            }
            for (name, list) in [("exact", &s.exact), ("coexact", &s.coexact)] {
                for e in list {
                    if !e.value.is_positive() {
                        return Err(Error::NonPositiveEigenvalue {
                            degree: p,
                            list: name,
                        });
                    }
                    if e.multiplicity == 0 {
                        return Err(Error::InvalidInput(format!(
                            "zero multiplicity in {name} list of degree {p}"
                        )));
                    }
                }
            }
            if p == 0 && !s.exact.is_empty() {
                return Err(Error::InvalidInput("there are no exact 0-forms".into()));
            }
            if p == self.dim && !s.coexact.is_empty() {
                return Err(Error::InvalidInput(
                    "there are no coexact forms of top degree".into(),
                ));
            }
            if s.harmonic_dim != self.betti[p] {
                return Err(Error::InvalidInput(format!(
                    "harmonic_dim {} of degree {p} differs from betti number {}",
                    s.harmonic_dim, self.betti[p]
                )));
            }
            if let Some(t) = &s.truncation {
                if !t.is_positive() {
                    return Err(Error::InvalidInput(format!(
                        "truncation of degree {p} must be positive"
                    )));
                }
            }
        }
        for p in 1..=self.dim {
            if let (Some(hi), Some(lo)) = (self.spectra.get(&p), self.spectra.get(&(p - 1))) {
                if !paired(
                    &hi.exact,
                    hi.truncation.as_ref(),
                    &lo.coexact,
                    lo.truncation.as_ref(),
                ) {
                    return Err(Error::Pairing { degree: p });
                }
            }
        }
        Ok(())
    }

    /// Dimension of `N` (that is `n - 1`).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension `n` of the conic manifold with this cross-section.
    pub fn manifold_dim(&self) -> usize {
        self.dim + 1
    }

    pub fn betti(&self) -> &[u64] {
        &self.betti
    }

    /// Betti number in degree `p`; zero outside `0..=dim`.
    pub fn betti_at(&self, p: i64) -> u64 {
        if p < 0 || p as usize > self.dim {
            0
        } else {
            self.betti[p as usize]
        }
    }

    pub fn spectra(&self) -> &BTreeMap<usize, FormSpectrum> {
        &self.spectra
    }

    /// Spectrum in degree `p`. Degrees outside `0..=dim` have no forms and
    /// yield `Ok(None)`; a missing in-range degree is an error.
    pub fn spectrum(&self, p: i64) -> Result<Option<&FormSpectrum>> {
        if p < 0 || p as usize > self.dim {
            return Ok(None);
        }
        self.spectra
            .get(&(p as usize))
            .map(Some)
            .ok_or(Error::MissingSpectrum(p as usize))
    }

    /// Whether `Im d_N` in degree `p` is the zero space for every metric.
    pub fn exact_structurally_empty(&self, p: i64) -> bool {
        p <= 0 || p as usize > self.dim
    }

    /// Whether `Im δ_N` in degree `p` is the zero space for every metric.
    pub fn coexact_structurally_empty(&self, p: i64) -> bool {
        p < 0 || p as usize >= self.dim
    }

    /// Cross-section rescaled to `scale² h₀`: every eigenvalue scales by `scale⁻²`.
    pub fn rescaled(&self, scale: f64) -> Result<Self> {
        let s = rational_from_f64(scale)
            .filter(|s| s.is_positive())
            .ok_or_else(|| Error::InvalidInput("scale must be a positive number".into()))?;
        let inv2 = (BigRational::one() / &s) * (BigRational::one() / &s);
        let spectra = self
            .spectra
            .iter()
            .map(|(&p, fs)| {
                let scale_list = |l: &Vec<Eigenvalue>| {
                    l.iter()
                        .map(|e| Eigenvalue::new(&e.value * &inv2, e.multiplicity))
                        .collect()
                };
                (
                    p,
                    FormSpectrum {
                        exact: scale_list(&fs.exact),
                        coexact: scale_list(&fs.coexact),
                        harmonic_dim: fs.harmonic_dim,
                        truncation: fs.truncation.as_ref().map(|t| t * &inv2),
                    },
                )
            })
            .collect();
        Self::new(self.dim, self.betti.clone(), spectra)
    }

    /// Minima of `Δ_N` on `Im d`, `(Im δ)^⊥` and `(Im d)^⊥` in degree `p`.
    pub fn min_eigenvalues(&self, p: i64) -> Result<MinEigenvalues> {
        let Some(fs) = self.spectrum(p)? else {
            return Ok(MinEigenvalues {
                lambda: None,
                mu: None,
                gamma: None,
            });
        };
        let lambda = smallest(
            &fs.exact,
            fs.truncation.as_ref(),
            self.exact_structurally_empty(p),
            p,
            "exact",
        )?;
        let harmonic = fs.harmonic_dim > 0;
        let mu = if harmonic {
            Some(BigRational::zero())
        } else {
            lambda.clone()
        };
        let gamma = if harmonic {
            Some(BigRational::zero())
        } else {
            smallest(
                &fs.coexact,
                fs.truncation.as_ref(),
                self.coexact_structurally_empty(p),
                p,
                "coexact",
            )?
        };
        Ok(MinEigenvalues { lambda, mu, gamma })
    }

    /// Canonical JSON document: sorted keys, ascending eigenvalues.
    pub fn to_json(&self) -> Value {
        let mut spectra = Map::new();
        for (p, fs) in &self.spectra {
            let list = |l: &Vec<Eigenvalue>| {
                Value::Array(
                    l.iter()
                        .map(|e| json!([rational_to_json(&e.value), e.multiplicity]))
                        .collect(),
                )
            };
            spectra.insert(
                p.to_string(),
                json!({
                    "exact": list(&fs.exact),
                    "coexact": list(&fs.coexact),
                    "harmonic_dim": fs.harmonic_dim,
                    "truncation": match &fs.truncation {
                        None => Value::String("inf".into()),
                        Some(t) => rational_to_json(t),
                    },
                }),
            );
        }
        json!({
            "dim": self.dim,
            "betti": self.betti,
            "spectra": Value::Object(spectra),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("json values always serialize")
    }
}

fn paired(
    exact: &[Eigenvalue],
    exact_trunc: Option<&BigRational>,
    coexact: &[Eigenvalue],
    coexact_trunc: Option<&BigRational>,
) -> bool {
    let cutoff = match (exact_trunc, coexact_trunc) {
        (None, None) => None,
        (Some(a), None) | (None, Some(a)) => Some(a.clone()),
        (Some(a), Some(b)) => Some(a.min(b).clone()),
    };
    let below = |l: &[Eigenvalue]| -> Vec<Eigenvalue> {
        l.iter()
            .filter(|e| cutoff.as_ref().is_none_or(|c| &e.value < c))
            .cloned()
            .collect()
    };
    let a = below(exact);
    let b = below(coexact);
    a.len() == b.len()
        && a.iter().zip(&b).all(|(x, y)| {
            x.multiplicity == y.multiplicity
                && (to_f64(&x.value) - to_f64(&y.value)).abs() <= EIGEN_TOL
        })
}

fn smallest(
    list: &[Eigenvalue],
    truncation: Option<&BigRational>,
    structurally_empty: bool,
    p: i64,
    name: &str,
) -> Result<Option<BigRational>> {
    if structurally_empty {
        return Ok(None);
    }
    match (list.first(), truncation) {
        (Some(e), Some(t)) if &e.value >= t => Err(Error::InsufficientTruncation(format!(
            "smallest {name} eigenvalue of degree {p} is not below the truncation level"
        ))),
        (Some(e), _) => Ok(Some(e.value.clone())),
        (None, None) => Ok(None),
        (None, Some(_)) => Err(Error::InsufficientTruncation(format!(
            "{name} list of degree {p} is empty below its truncation level"
        ))),
    }
}

fn rational_to_json(r: &BigRational) -> Value {
    if r.is_integer() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    let f = to_f64(r);
    if f.is_finite() && rational_from_f64(f).as_ref() == Some(r) {
        json!(f)
    } else {
        Value::String(rational_string(r))
    }
}

fn rational_from_json(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(int(i))
            } else {
                n.as_f64()
                    .and_then(rational_from_f64)
                    .ok_or_else(|| Error::Schema(format!("{what}: not a finite number")))
            }
        }
        Value::String(s) => parse_rational(s)
            .ok_or_else(|| Error::Schema(format!("{what}: cannot parse '{s}' as a rational"))),
        _ => Err(Error::Schema(format!("{what}: expected a number"))),
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(BigRational::new(a, b))
    } else if let Ok(i) = s.parse::<BigInt>() {
        Some(BigRational::from_integer(i))
    } else {
        s.parse::<f64>().ok().and_then(rational_from_f64)
    }
}

fn u64_from_json(v: &Value, what: &str) -> Result<u64> {
    v.as_u64()
        .ok_or_else(|| Error::Schema(format!("{what}: expected a nonnegative integer")))
}

fn eigen_list(v: Option<&Value>, what: &str) -> Result<Vec<Eigenvalue>> {
    let Some(v) = v else {
        return Ok(Vec::new());
    };
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Schema(format!("{what}: expected an array of [eig, mult] pairs")))?;
    arr.iter()
        .enumerate()
        .map(|(i, pair)| {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Schema(format!("{what}[{i}]: expected [eig, mult]")))?;
            let value = rational_from_json(&pair[0], &format!("{what}[{i}] eigenvalue"))?;
            let mult = u64_from_json(&pair[1], &format!("{what}[{i}] multiplicity"))?;
            Ok(Eigenvalue::new(value, mult))
        })
        .collect()
}

/// Parse and validate a cross-section document.
pub fn load_cross_section(document: &str) -> Result<CrossSection> {
    let doc: Value = serde_json::from_str(document)
        .map_err(|e| Error::Schema(format!("malformed JSON: {e}")))?;
    cross_section_from_json(&doc)
}

pub fn cross_section_from_json(doc: &Value) -> Result<CrossSection> {
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Schema("top level must be an object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Schema("'dim' must be a positive integer".into()))?
        as usize;
    let betti = obj
        .get("betti")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Schema("'betti' must be an array".into()))?
        .iter()
        .enumerate()
        .map(|(i, b)| u64_from_json(b, &format!("betti[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let mut spectra = BTreeMap::new();
    if let Some(s) = obj.get("spectra") {
        let s = s
            .as_object()
            .ok_or_else(|| Error::Schema("'spectra' must be an object".into()))?;
        for (key, entry) in s {
            let p: usize = key
                .parse()
                .map_err(|_| Error::Schema(format!("spectra key '{key}' is not a degree")))?;
            let entry = entry
                .as_object()
                .ok_or_else(|| Error::Schema(format!("spectra['{key}'] must be an object")))?;
            let harmonic_dim = u64_from_json(
                entry.get("harmonic_dim").ok_or_else(|| {
                    Error::Schema(format!("spectra['{key}'].harmonic_dim missing"))
                })?,
                &format!("spectra['{key}'].harmonic_dim"),
            )?;
            let truncation = match entry.get("truncation") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) if s == "inf" => None,
                Some(v) => Some(rational_from_json(
                    v,
                    &format!("spectra['{key}'].truncation"),
                )?),
            };
            let fs = FormSpectrum {
                exact: eigen_list(entry.get("exact"), &format!("spectra['{key}'].exact"))?,
                coexact: eigen_list(entry.get("coexact"), &format!("spectra['{key}'].coexact"))?,
                harmonic_dim,
                truncation,
            };
            spectra.insert(p, fs);
        }
    }
    CrossSection::new(dim, betti, spectra)
}

/// Multiplicity of the coexact `p`-form eigenvalue `(k+p)(k+m-p-1)` on the
/// round `S^m`, `k >= 1`.
fn sphere_coexact_multiplicity(m: usize, p: usize, k: usize) -> u64 {
    let fact = |x: usize| -> BigInt { (1..=x).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)) };
    let num = BigInt::from(2 * k + m - 1) * fact(k + m - 1);
    let den =
        fact(p) * fact(m - p - 1) * fact(k - 1) * BigInt::from(k + p) * BigInt::from(k + m - p - 1);
    (num / den)
        .to_u64()
        .expect("sphere multiplicity fits in u64")
}

fn sphere_coexact_value(m: usize, p: usize, k: usize) -> u64 {
    ((k + p) * (k + m - p - 1)) as u64
}

/// Round unit sphere `S^{n-1}` as the cross-section of an `n`-manifold.
///
/// The exact `q`-form eigenvalues are `(q-1+j)(n-q-1+j)` for `j = 1..=jmax`;
/// the index starts at 1 because `j = 0` would put a zero eigenvalue on
/// `Im d`. Lists are complete strictly below the first omitted value.
pub fn sphere_preset(n: usize, jmax: usize) -> Result<CrossSection> {
    if n < 2 {
        return Err(Error::InvalidInput("sphere preset needs n >= 2".into()));
    }
    if jmax < 1 {
        return Err(Error::InvalidInput("sphere preset needs jmax >= 1".into()));
    }
    let m = n - 1;
    let coexact = |p: usize| -> Vec<Eigenvalue> {
        if p >= m {
            return Vec::new();
        }
        (1..=jmax)
            .map(|k| {
                Eigenvalue::new(
                    int(sphere_coexact_value(m, p, k) as i64),
                    sphere_coexact_multiplicity(m, p, k),
                )
            })
            .collect()
    };
    let next = |p: usize| -> Option<u64> { (p < m).then(|| sphere_coexact_value(m, p, jmax + 1)) };
    let mut betti = vec![0u64; m + 1];
    betti[0] = 1;
    betti[m] = 1;
    let spectra = (0..=m)
        .map(|p| {
            let exact = if p == 0 { Vec::new() } else { coexact(p - 1) };
            let cutoff = [if p == 0 { None } else { next(p - 1) }, next(p)]
                .into_iter()
                .flatten()
                .min()
                .map(|v| int(v as i64));
            (
                p,
                FormSpectrum {
                    exact,
                    coexact: coexact(p),
                    harmonic_dim: betti[p],
                    truncation: cutoff,
                },
            )
        })
        .collect();
    CrossSection::new(m, betti, spectra)
}

/// Circle of the given length; eigenvalues `(2πj/L)²` with multiplicity 2.
pub fn circle_preset(length: f64, jmax: usize) -> Result<CrossSection> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::InvalidInput("circle length must be positive".into()));
    }
    if jmax < 1 {
        return Err(Error::InvalidInput("circle preset needs jmax >= 1".into()));
    }
    let s = length / std::f64::consts::TAU;
    let value = |j: usize| {
        let w = j as f64 / s;
        rational_from_f64(w * w).expect("finite eigenvalue")
    };
    let list: Vec<Eigenvalue> = (1..=jmax).map(|j| Eigenvalue::new(value(j), 2)).collect();
    let cutoff = Some(value(jmax + 1));
    let mut spectra = BTreeMap::new();
    spectra.insert(
        0,
        FormSpectrum {
            exact: Vec::new(),
            coexact: list.clone(),
            harmonic_dim: 1,
            truncation: cutoff.clone(),
        },
    );
    spectra.insert(
        1,
        FormSpectrum {
            exact: list,
            coexact: Vec::new(),
            harmonic_dim: 1,
            truncation: cutoff,
        },
    );
    CrossSection::new(1, vec![1, 1], spectra)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surd::rational;

    fn values(l: &[Eigenvalue]) -> Vec<i64> {
        l.iter()
            .map(|e| e.value.to_integer().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn sphere_exact_spectrum_degree_two() {
        let cs = sphere_preset(4, 5).unwrap();
        let s = cs.spectrum(2).unwrap().unwrap();
        assert_eq!(values(&s.exact), vec![4, 9, 16, 25, 36]);
    }

    #[test]
    fn sphere_betti_numbers() {
        assert_eq!(sphere_preset(4, 3).unwrap().betti(), &[1, 0, 0, 1]);
    }

    #[test]
    fn sphere_function_spectrum() {
        let cs = sphere_preset(3, 4).unwrap();
        let s = cs.spectrum(0).unwrap().unwrap();
        // S²: l(l+1) with multiplicity 2l+1
        assert_eq!(values(&s.coexact), vec![2, 6, 12, 20]);
        let mults: Vec<u64> = s.coexact.iter().map(|e| e.multiplicity).collect();
        assert_eq!(mults, vec![3, 5, 7, 9]);
    }

    #[test]
    fn sphere_three_coclosed_one_forms() {
        // S³ coexact 1-forms: (k+1)² with multiplicity 2k(k+2)
        let cs = sphere_preset(4, 3).unwrap();
        let s = cs.spectrum(1).unwrap().unwrap();
        assert_eq!(values(&s.coexact), vec![4, 9, 16]);
        let mults: Vec<u64> = s.coexact.iter().map(|e| e.multiplicity).collect();
        assert_eq!(mults, vec![6, 16, 30]);
    }

    #[test]
    fn sphere_pairing_holds() {
        let cs = sphere_preset(4, 6).unwrap();
        for p in 1..=3 {
            let hi = cs.spectrum(p).unwrap().unwrap();
            let lo = cs.spectrum(p - 1).unwrap().unwrap();
            assert_eq!(hi.exact, lo.coexact);
        }
    }

    #[test]
    fn sphere_rejects_bad_parameters() {
        assert!(sphere_preset(4, 0).is_err());
        assert!(sphere_preset(1, 3).is_err());
    }

    #[test]
    fn circle_spectrum() {
        let cs = circle_preset(std::f64::consts::TAU, 4).unwrap();
        let s = cs.spectrum(0).unwrap().unwrap();
        assert_eq!(s.coexact[0].value, rational(1, 1));
        assert_eq!(s.coexact[0].multiplicity, 2);
        assert_eq!(cs.betti(), &[1, 1]);

        let cs = circle_preset(std::f64::consts::TAU * 0.8, 4).unwrap();
        let first = cs.spectrum(0).unwrap().unwrap().coexact[0].value_f64();
        assert!((first - 1.5625).abs() < 1e-12);
        assert!(circle_preset(0.0, 4).is_err());
        assert!(circle_preset(-1.0, 4).is_err());
    }

    #[test]
    fn min_eigenvalues_on_three_sphere() {
        // Enumerated from the preset formulas: exact 1-forms j(j+2) -> 3,
        // coexact 1-forms (k+1)² -> 4, functions carry harmonic constants.
        let cs = sphere_preset(4, 5).unwrap();
        let m1 = cs.min_eigenvalues(1).unwrap();
        assert_eq!(m1.lambda, Some(int(3)));
        assert_eq!(m1.gamma, Some(int(4)));
        let m0 = cs.min_eigenvalues(0).unwrap();
        assert_eq!(m0.mu, Some(int(0)));
        let m3 = cs.min_eigenvalues(3).unwrap();
        assert_eq!(m3.gamma, Some(int(0)));
        // top degree has no coexact forms; harmonic forms still give gamma = 0,
        // but lambda sees the exact forms
        assert_eq!(m3.lambda, Some(int(3)));
    }

    #[test]
    fn empty_subspace_is_infinite() {
        let cs = sphere_preset(4, 3).unwrap();
        let m = cs.min_eigenvalues(0).unwrap();
        assert_eq!(m.lambda, None);
        let m = cs.min_eigenvalues(-1).unwrap();
        assert_eq!(m.mu, None);
    }

    #[test]
    fn rescaling_divides_eigenvalues() {
        let cs = sphere_preset(3, 3).unwrap().rescaled(0.5).unwrap();
        let s = cs.spectrum(0).unwrap().unwrap();
        assert_eq!(s.coexact[0].value, int(8));
    }

    #[test]
    fn json_round_trip_matches_preset() {
        let cs = sphere_preset(4, 4).unwrap();
        let text = cs.to_json_string();
        let back = load_cross_section(&text).unwrap();
        assert_eq!(back, cs);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn rejects_negative_eigenvalue() {
        let doc = r#"{"dim":1,"betti":[1,1],"spectra":{"0":{"exact":[],"coexact":[[-1.0,2]],"harmonic_dim":1,"truncation":4.0}}}"#;
        let err = load_cross_section(doc).unwrap_err();
        assert!(
            err.to_string().contains("eigenvalues must be positive"),
            "{err}"
        );
    }

    #[test]
    fn rejects_broken_pairing() {
        let doc = r#"{"dim":1,"betti":[1,1],"spectra":{
            "0":{"exact":[],"coexact":[[1.0,2],[4.0,2]],"harmonic_dim":1,"truncation":9.0},
            "1":{"exact":[[1.0,2],[5.0,2]],"coexact":[],"harmonic_dim":1,"truncation":9.0}}}"#;
        assert_eq!(
            load_cross_section(doc).unwrap_err(),
            Error::Pairing { degree: 1 }
        );
    }

    #[test]
    fn rejects_duality_violation() {
        let doc = r#"{"dim":2,"betti":[1,0,0],"spectra":{}}"#;
        assert!(matches!(
            load_cross_section(doc),
            Err(Error::Duality { .. })
        ));
    }

    #[test]
    fn accepts_rational_strings() {
        let doc = r#"{"dim":1,"betti":[1,1],"spectra":{
            "0":{"exact":[],"coexact":[["15/4",2]],"harmonic_dim":1,"truncation":"inf"}}}"#;
        let cs = load_cross_section(doc).unwrap();
        assert_eq!(
            cs.spectrum(0).unwrap().unwrap().coexact[0].value,
            rational(15, 4)
        );
    }

    #[test]
    fn insufficient_truncation_reported() {
        let doc = r#"{"dim":1,"betti":[1,1],"spectra":{
            "0":{"exact":[],"coexact":[],"harmonic_dim":1,"truncation":2.0},
            "1":{"exact":[],"coexact":[],"harmonic_dim":1,"truncation":2.0}}}"#;
        let cs = load_cross_section(doc).unwrap();
        assert!(matches!(
            cs.min_eigenvalues(1),
            Err(Error::InsufficientTruncation(_))
        ));
    }
}
