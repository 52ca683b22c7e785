//! Exact rational complex numbers and phase keys.
//!
//! Phases are never materialized as floats except through [`Phase::approx`].
//! A [`Phase`] stores an integer window and a nonzero direction whose argument
//! lies in `(0, pi]`; its value is `window + arg(direction) / pi`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

fn q_to_pair(x: &Q) -> Option<[i64; 2]> {
    Some([x.numer().to_i64()?, x.denom().to_i64()?])
}

fn q_from_pair(num: i64, den: i64) -> Option<Q> {
    (den != 0).then(|| q_frac(num, den))
}

/// Serde adapter writing a rational as `[num, den]`.
pub mod q_pair {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        q_to_pair(x)
            .ok_or_else(|| serde::ser::Error::custom("rational does not fit in i64"))?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let [n, den] = <[i64; 2]>::deserialize(d)?;
        q_from_pair(n, den).ok_or_else(|| D::Error::custom("zero denominator"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactComplex {
    pub re: Q,
    pub im: Q,
}

impl ExactComplex {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(q(re), q(im))
    }

    pub fn zero() -> Self {
        Self::new(Q::zero(), Q::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&q(k))
    }

    pub fn norm_sqr(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    /// `Im(conj(self) * other)`: positive iff `other` is counter-clockwise of `self`
    /// by an angle in `(0, pi)`.
    pub fn cross(&self, other: &Self) -> Q {
        &self.re * &other.im - &self.im * &other.re
    }

    /// Positive real multiple test (same ray from the origin).
    pub fn same_ray(&self, other: &Self) -> bool {
        !self.is_zero()
            && !other.is_zero()
            && self.cross(other).is_zero()
            && (&self.re * &other.re + &self.im * &other.im).is_positive()
    }

    pub fn approx(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for ExactComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for &ExactComplex {
    type Output = ExactComplex;
    fn add(self, o: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ExactComplex {
    type Output = ExactComplex;
    fn sub(self, o: &ExactComplex) -> ExactComplex {
        ExactComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ExactComplex {
    type Output = ExactComplex;
    fn mul(self, o: &ExactComplex) -> ExactComplex {
        ExactComplex::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re.clone(), -self.im.clone())
    }
}

impl Serialize for ExactComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let re = q_to_pair(&self.re).ok_or_else(|| serde::ser::Error::custom("re overflow"))?;
        let im = q_to_pair(&self.im).ok_or_else(|| serde::ser::Error::custom("im overflow"))?;
        [re[0], re[1], im[0], im[1]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b, c, e] = <[i64; 4]>::deserialize(d)?;
        let re = q_from_pair(a, b).ok_or_else(|| D::Error::custom("zero denominator"))?;
        let im = q_from_pair(c, e).ok_or_else(|| D::Error::custom("zero denominator"))?;
        Ok(Self { re, im })
    }
}

/// Exact phase key: the real number `window + arg(direction)/pi` with
/// `arg(direction)` in `(0, pi]`. Equality and ordering are on that real value.
#[derive(Clone, Debug)]
pub struct Phase {
    pub window: i64,
    pub direction: ExactComplex,
}

impl Phase {
    /// Principal phase of a nonzero value, in `(-1, 1]`. `None` for zero.
    pub fn principal(z: &ExactComplex) -> Option<Self> {
        if z.is_zero() {
            return None;
        }
        if z.im.is_positive() || (z.im.is_zero() && z.re.is_negative()) {
            Some(Self { window: 0, direction: z.clone() })
        } else {
            Some(Self { window: -1, direction: -z })
        }
    }

    /// Phase of `X[n]` when `self` is the phase of `X`.
    pub fn shifted(&self, n: i64) -> Self {
        Self { window: self.window + n, direction: self.direction.clone() }
    }

    /// The integer phase `n`.
    pub fn integer(n: i64) -> Self {
        Self { window: n - 1, direction: ExactComplex::from_ints(-1, 0) }
    }

    /// Approximate real value, for display only.
    pub fn approx(&self) -> f64 {
        let (re, im) = self.direction.approx();
        self.window as f64 + im.atan2(re) / std::f64::consts::PI
    }

    /// True iff the phase is an integer.
    pub fn is_integer(&self) -> bool {
        self.direction.im.is_zero()
    }
}

impl Ord for Phase {
    fn cmp(&self, other: &Self) -> Ordering {
        self.window.cmp(&other.window).then_with(|| {
            // both directions have argument in (0, pi], so the cross product decides
            let c = self.direction.cross(&other.direction);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    }
}

impl PartialEq for Phase {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Phase {}

impl PartialOrd for Phase {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "~{:.6}", self.approx())
    }
}

#[derive(Serialize)]
struct PhaseJson {
    window: i64,
    direction: ExactComplex,
    approx: f64,
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PhaseJson { window: self.window, direction: self.direction.clone(), approx: self.approx() }
            .serialize(s)
    }
}
