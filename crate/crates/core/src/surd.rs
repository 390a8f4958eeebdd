//! Exact quadratic surds `a + b·√r` with rational `a`, `b`, `r`.
//!
//! Indicial roots are square roots of rational radicands shifted by small
//! integers, so every comparison the toolkit needs (coincidences across
//! families, minima, membership tests) can be settled exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Parse a rational from an `f64` without rounding (every finite double is dyadic).
pub fn rational_from_f64(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    BigRational::from_float(x)
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Render a rational as `p/q` (or `p` when integral).
pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn sign(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of `w + e·√t` with `t ≥ 0`.
fn sign_one_root(w: &BigRational, e: &BigRational, t: &BigRational) -> i32 {
    let sw = sign(w);
    let se = if t.is_zero() { 0 } else { sign(e) };
    if se == 0 {
        return sw;
    }
    if sw == 0 || sw == se {
        return if sw == 0 { se } else { sw };
    }
    // opposite signs: compare w² with e²t
    let lhs = w * w;
    let rhs = e * e * t;
    match lhs.cmp(&rhs) {
        Ordering::Greater => sw,
        Ordering::Less => se,
        Ordering::Equal => 0,
    }
}

/// Exact sign of `a + b·√u + c·√v` with `u, v ≥ 0`.
fn sign_two_roots(
    a: &BigRational,
    b: &BigRational,
    u: &BigRational,
    c: &BigRational,
    v: &BigRational,
) -> i32 {
    // sign of S = b√u + c√v
    let s1 = if u.is_zero() { 0 } else { sign(b) };
    let s2 = if v.is_zero() { 0 } else { sign(c) };
    let b2u = b * b * u;
    let c2v = c * c * v;
    let ss = if s1 == 0 {
        s2
    } else if s2 == 0 || s1 == s2 {
        s1
    } else {
        match b2u.cmp(&c2v) {
            Ordering::Greater => s1,
            Ordering::Less => s2,
            Ordering::Equal => 0,
        }
    };
    let sa = sign(a);
    if ss == 0 {
        return sa;
    }
    if sa == 0 || sa == ss {
        return if sa == 0 { ss } else { sa };
    }
    // opposite signs: compare a² with S² = b²u + c²v + 2bc√(uv)
    let w = a * a - &b2u - &c2v;
    let e = -(b * c * int(2));
    let t = u * v;
    match sign_one_root(&w, &e, &t) {
        1 => sa,
        -1 => ss,
        _ => 0,
    }
}

/// `rational + coeff·√radicand`, kept in a normal form where an irrational
/// radicand always carries a nonzero coefficient.
#[derive(Clone, Debug)]
pub struct Surd {
    rational: BigRational,
    coeff: BigRational,
    radicand: BigRational,
}

impl Surd {
    pub fn from_rational(r: BigRational) -> Self {
        Self {
            rational: r,
            coeff: BigRational::zero(),
            radicand: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(int(v))
    }

    /// `rational + coeff·√radicand`; panics on a negative radicand.
    pub fn new(rational: BigRational, coeff: BigRational, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if coeff.is_zero() || radicand.is_zero() {
            return Self::from_rational(rational);
        }
        if let Some(root) = rational_sqrt(&radicand) {
            return Self::from_rational(rational + coeff * root);
        }
        Self {
            rational,
            coeff,
            radicand,
        }
    }

    /// `√r`.
    pub fn sqrt(r: BigRational) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), r)
    }

    pub fn is_rational(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_rational() {
            return to_f64(&self.rational);
        }
        to_f64(&self.rational) + to_f64(&self.coeff) * to_f64(&self.radicand).sqrt()
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Self {
            rational: &self.rational + r,
            coeff: self.coeff.clone(),
            radicand: self.radicand.clone(),
        }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Self {
        Self::new(&self.rational * r, &self.coeff * r, self.radicand.clone())
    }

    /// `1/self`, rationalized; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let den = &self.rational * &self.rational - &self.coeff * &self.coeff * &self.radicand;
        let inv = BigRational::one() / den;
        Some(Self::new(
            &self.rational * &inv,
            -(&self.coeff * &inv),
            self.radicand.clone(),
        ))
    }

    pub fn square(&self) -> Self {
        let two = int(2);
        Self::new(
            &self.rational * &self.rational + &self.coeff * &self.coeff * &self.radicand,
            two * &self.rational * &self.coeff,
            self.radicand.clone(),
        )
    }

    pub fn neg(&self) -> Self {
        Self {
            rational: -&self.rational,
            coeff: -&self.coeff,
            radicand: self.radicand.clone(),
        }
    }

    /// Exact sign (-1, 0, 1).
    pub fn signum(&self) -> i32 {
        sign_one_root(&self.rational, &self.coeff, &self.radicand)
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison against a rational.
    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        match sign_one_root(&(&self.rational - r), &self.coeff, &self.radicand) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Rendered as `p/q` when rational, `a + b*sqrt(r)` otherwise.
    pub fn exact_string(&self) -> String {
        if self.is_rational() {
            return rational_string(&self.rational);
        }
        let root = if self.coeff.is_one() {
            format!("sqrt({})", rational_string(&self.radicand))
        } else if (-&self.coeff).is_one() {
            format!("-sqrt({})", rational_string(&self.radicand))
        } else {
            format!(
                "{}*sqrt({})",
                rational_string(&self.coeff),
                rational_string(&self.radicand)
            )
        };
        if self.rational.is_zero() {
            root
        } else if root.starts_with('-') {
            format!("{} - {}", rational_string(&self.rational), &root[1..])
        } else {
            format!("{} + {}", rational_string(&self.rational), root)
        }
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = &self.rational - &other.rational;
        let c = -&other.coeff;
        match sign_two_roots(&a, &self.coeff, &self.radicand, &c, &other.radicand) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.exact_string())
    }
}
