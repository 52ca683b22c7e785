//! K-group of the local P^1 category, Euler form, central charges and the
//! sign/shift invariants of spherical classes.
//!
//! `K(T)` has basis `[O_Z] = (1, 0)` and `[O_x] = (0, 1)`. The Euler form is
//! `chi(u, v) = 2 u.a v.a`; `[O_x]` spans its radical.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{q, q_pair, ExactComplex, Phase, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KClass {
    pub a: i64,
    pub b: i64,
}

impl KClass {
    pub const ZERO: KClass = KClass { a: 0, b: 0 };
    pub const O_Z: KClass = KClass { a: 1, b: 0 };
    pub const O_X: KClass = KClass { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn scale(self, k: i64) -> Self {
        Self::new(self.a * k, self.b * k)
    }

    /// Image in `N(T)` is `+-[O_Z]`.
    pub fn is_spherical_candidate(self) -> bool {
        self.a.abs() == 1
    }

    /// Class of a module with dimension vector `(d0, d1)` in the preprojective model,
    /// under `[S_1] = [O_Z]` and `[S_0] = [O_Z(-1)[1]] = (-1, 1)`.
    pub fn from_dims(d0: usize, d1: usize) -> Self {
        let (d0, d1) = (d0 as i64, d1 as i64);
        Self::new(d1 - d0, d0)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Add for KClass {
    type Output = KClass;
    fn add(self, o: KClass) -> KClass {
        KClass::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for KClass {
    type Output = KClass;
    fn sub(self, o: KClass) -> KClass {
        KClass::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass::new(-self.a, -self.b)
    }
}

pub fn euler_form(u: KClass, v: KClass) -> i64 {
    2 * u.a * v.a
}

/// `[O_Z(t)[shift]]`, using `[O(t)] - [O(t-1)] = [O_x]`.
pub fn class_of_line_bundle(t: i64, shift: i64) -> KClass {
    let sign = if shift.rem_euclid(2) == 0 { 1 } else { -1 };
    KClass::new(sign, sign * t)
}

/// `T_E[F] = [F] - chi(E, F)[E]`.
pub fn twist_on_k(e: KClass, f: KClass) -> Result<KClass> {
    if !e.is_spherical_candidate() {
        return Err(Error::NotSphericalClass(e.to_string()));
    }
    Ok(f - e.scale(euler_form(e, f)))
}

/// The unique `(s, p)` with `e = s f + p [O_x]`.
pub fn sign_and_p(f: KClass, e: KClass) -> Result<(i64, i64)> {
    if !f.is_spherical_candidate() {
        return Err(Error::NotABasis(f.to_string()));
    }
    if !e.is_spherical_candidate() {
        return Err(Error::NotSphericalClass(e.to_string()));
    }
    let s = e.a * f.a;
    Ok((s, e.b - s * f.b))
}

/// Sign of a spherical class with respect to `[O_Z]`.
pub fn sign_of(e: KClass) -> Result<i64> {
    sign_and_p(KClass::O_Z, e).map(|(s, _)| s)
}

/// A central charge on `K(T)` with a lazily applied `C`-action.
///
/// `rot` is the accumulated rotation `t` (phases shift by `t`), `logscale` the
/// accumulated real part `x` of `z = x + i pi t`. The raw values are never
/// multiplied by `e^z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralCharge {
    #[serde(rename = "z_OZ")]
    pub z_oz: ExactComplex,
    #[serde(rename = "z_Ox")]
    pub z_ox: ExactComplex,
    #[serde(with = "q_pair", default = "zero_q")]
    pub rot: Q,
    #[serde(with = "q_pair", default = "zero_q")]
    pub logscale: Q,
}

fn zero_q() -> Q {
    q(0)
}

impl CentralCharge {
    pub fn new(z_oz: ExactComplex, z_ox: ExactComplex) -> Self {
        Self { z_oz, z_ox, rot: q(0), logscale: q(0) }
    }

    /// Constructor restricted to the standard region: `Im Z(O_Z) > 0` and
    /// `Im Z(O_Z(-1)[1]) > 0`.
    pub fn standard_region(z_oz: ExactComplex, z_ox: ExactComplex) -> Result<Self> {
        let z = Self::new(z_oz, z_ox);
        if z.is_standard_region() {
            Ok(z)
        } else {
            Err(Error::ChargeDegenerate(
                "standard region needs Im Z(O_Z) > 0 and Im Z(O_Z(-1)[1]) > 0".into(),
            ))
        }
    }

    /// Charge with prescribed values on the two simple modules of the model:
    /// `Z(S_0) = Z(O_Z(-1)[1])`, `Z(S_1) = Z(O_Z)`.
    pub fn from_simples(z_s0: ExactComplex, z_s1: ExactComplex) -> Self {
        let z_ox = &z_s0 + &z_s1;
        Self::new(z_s1, z_ox)
    }

    pub fn is_standard_region(&self) -> bool {
        self.eval(KClass::O_Z).im.is_positive()
            && self.eval(KClass::new(-1, 1)).im.is_positive()
    }

    pub fn eval(&self, u: KClass) -> ExactComplex {
        &self.z_oz.scale_int(u.a) + &self.z_ox.scale_int(u.b)
    }

    /// Principal phase of `Z(u)` in `(-1, 1]`, before the rotation tag.
    pub fn phase(&self, u: KClass) -> Result<Phase> {
        Phase::principal(&self.eval(u)).ok_or_else(|| Error::ZeroCharge(u.to_string()))
    }

    /// Approximate displayed phase including the rotation tag.
    pub fn display_phase(&self, u: KClass) -> Result<f64> {
        use num_traits::ToPrimitive;
        Ok(self.phase(u)?.approx() + self.rot.to_f64().unwrap_or(f64::NAN))
    }

    /// `|Z(u)|^2`. The mass itself is irrational in general and is not exposed.
    pub fn mass_squared(&self, u: KClass) -> Q {
        self.eval(u).norm_sqr()
    }

    /// Lazy action of `z = x + i pi t`.
    pub fn rotate_scale(&self, x: &Q, t: &Q) -> Self {
        Self {
            z_oz: self.z_oz.clone(),
            z_ox: self.z_ox.clone(),
            rot: &self.rot + t,
            logscale: &self.logscale + x,
        }
    }
}

pub fn charge_eval(z: &CentralCharge, u: KClass) -> ExactComplex {
    z.eval(u)
}

/// Exact comparison of phases; the rotation tag shifts both sides equally.
pub fn phase_compare(z: &CentralCharge, u: KClass, v: KClass) -> Result<Ordering> {
    Ok(z.phase(u)?.cmp(&z.phase(v)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareSignsVerdict {
    Pass,
    HypothesisNotMet,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareSignsReport {
    /// `E` and `F` have different signs.
    pub e_f_signs_differ: bool,
    /// Lifts with `phi(E[-1]) < phi(S) < phi(F) < phi(E)` exist.
    pub phase_chain: bool,
    pub hypothesis: bool,
    /// `F` and `S` have the same sign; only evaluated when the hypothesis holds.
    pub conclusion: Option<bool>,
    pub verdict: CompareSignsVerdict,
}

/// Lift of the principal phase of `x` into the open interval `(lo, hi)` of length one.
fn lift_into(x: &Phase, lo: &Phase, hi: &Phase) -> Option<Phase> {
    [-2, 0, 2]
        .iter()
        .map(|k| x.shifted(*k))
        .find(|c| lo < c && c < hi)
}

/// Checks the sign comparison for spherical classes `E`, `S`, `F`: whenever `E`
/// and `F` have different signs and `phi(E[-1]) < phi(S) < phi(F) < phi(E)`,
/// the signs of `F` and `S` agree.
///
/// Only classes are given, so `phi(E)` is the principal phase of `Z(E)` and the
/// phases of `S` and `F` are their unique lifts into `(phi(E) - 1, phi(E))`.
pub fn compare_signs_check(
    z: &CentralCharge,
    e: KClass,
    s: KClass,
    f: KClass,
) -> Result<CompareSignsReport> {
    let se = sign_of(e)?;
    let ss = sign_of(s)?;
    let sf = sign_of(f)?;
    let pe = z.phase(e)?;
    let ps = z.phase(s)?;
    let pf = z.phase(f)?;
    let lo = pe.shifted(-1);
    let phase_chain = match (lift_into(&ps, &lo, &pe), lift_into(&pf, &lo, &pe)) {
        (Some(ls), Some(lf)) => ls < lf,
        _ => false,
    };
    let e_f_signs_differ = se != sf;
    let hypothesis = e_f_signs_differ && phase_chain;
    let conclusion = hypothesis.then_some(sf == ss);
    let verdict = match conclusion {
        None => CompareSignsVerdict::HypothesisNotMet,
        Some(true) => CompareSignsVerdict::Pass,
        Some(false) => CompareSignsVerdict::Fail,
    };
    Ok(CompareSignsReport { e_f_signs_differ, phase_chain, hypothesis, conclusion, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q_frac;

    fn c(re: i64, im: i64) -> ExactComplex {
        ExactComplex::from_ints(re, im)
    }

    fn z0() -> CentralCharge {
        CentralCharge::new(c(0, 1), c(1, 1))
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(euler_form(KClass::new(1, 0), KClass::new(1, 0)), 2);
        assert_eq!(euler_form(KClass::new(0, 1), KClass::new(7, -3)), 0);
        assert_eq!(euler_form(KClass::new(-1, 1), KClass::new(1, 0)), -2);
    }

    #[test]
    fn line_bundle_classes() {
        assert_eq!(class_of_line_bundle(0, 0), KClass::new(1, 0));
        assert_eq!(class_of_line_bundle(-1, 1), KClass::new(-1, 1));
        assert_eq!(class_of_line_bundle(2, 2), KClass::new(1, 2));
        assert_eq!(class_of_line_bundle(3, -1), KClass::new(-1, -3));
    }

    #[test]
    fn eval_examples() {
        let z = z0();
        assert_eq!(z.eval(KClass::new(1, 0)), c(0, 1));
        assert_eq!(z.eval(KClass::ZERO), c(0, 0));
        assert_eq!(z.eval(KClass::new(-1, 1)), c(1, 0));
    }

    #[test]
    fn phase_compare_examples() {
        let z = z0();
        assert_eq!(phase_compare(&z, KClass::new(1, 0), KClass::new(-1, 1)), Ok(Ordering::Greater));
        assert_eq!(phase_compare(&z, KClass::new(1, 0), KClass::new(1, 0)), Ok(Ordering::Equal));
        assert_eq!(phase_compare(&z, KClass::new(0, 1), KClass::new(1, 0)), Ok(Ordering::Less));
        assert!(matches!(
            phase_compare(&z, KClass::ZERO, KClass::new(1, 0)),
            Err(Error::ZeroCharge(_))
        ));
    }

    #[test]
    fn rotate_scale_is_additive() {
        let z = z0();
        let id = z.rotate_scale(&q(0), &q(0));
        assert_eq!(id, z);
        let twice = z.rotate_scale(&q(0), &q(1)).rotate_scale(&q(0), &q(1));
        assert_eq!(twice, z.rotate_scale(&q(0), &q(2)));
        let shifted = z.rotate_scale(&q_frac(1, 3), &q(1));
        let u = KClass::new(1, 0);
        assert!((shifted.display_phase(u).unwrap() - z.display_phase(u).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(phase_compare(&shifted, u, KClass::O_X), phase_compare(&z, u, KClass::O_X));
    }

    #[test]
    fn twist_examples() {
        let e = KClass::new(1, 0);
        assert_eq!(twist_on_k(e, KClass::new(1, 1)), Ok(KClass::new(-1, 1)));
        assert_eq!(twist_on_k(e, KClass::new(1, 0)), Ok(KClass::new(-1, 0)));
        assert!(matches!(twist_on_k(KClass::new(2, 0), e), Err(Error::NotSphericalClass(_))));
    }

    #[test]
    fn sign_examples() {
        let f = KClass::O_Z;
        assert_eq!(sign_and_p(f, KClass::new(1, 1)), Ok((1, 1)));
        assert_eq!(sign_and_p(f, KClass::new(-1, 1)), Ok((-1, 1)));
        assert_eq!(sign_and_p(f, KClass::new(1, 0)), Ok((1, 0)));
        assert!(matches!(sign_and_p(KClass::new(0, 1), f), Err(Error::NotABasis(_))));
        assert!(matches!(sign_and_p(f, KClass::new(3, 1)), Err(Error::NotSphericalClass(_))));
    }

    #[test]
    fn standard_region_guard() {
        assert!(CentralCharge::standard_region(c(0, 1), c(1, 2)).is_ok());
        // Z(O_Z(-1)[1]) = 1 is real
        assert!(CentralCharge::standard_region(c(0, 1), c(1, 1)).is_err());
        let z = CentralCharge::from_simples(c(1, 1), c(-1, 1));
        assert_eq!(z.eval(KClass::from_dims(1, 0)), c(1, 1));
        assert_eq!(z.eval(KClass::from_dims(0, 1)), c(-1, 1));
    }

    #[test]
    fn compare_signs_worked_example() {
        let z = CentralCharge::new(c(0, 1), ExactComplex::new(q_frac(1, 2), q_frac(1, 2)));
        let r = compare_signs_check(&z, KClass::new(1, 0), KClass::new(1, 1), KClass::new(1, 2)).unwrap();
        // E and F share a sign here
        assert!(!r.hypothesis);
        assert_eq!(r.verdict, CompareSignsVerdict::HypothesisNotMet);
    }

    #[test]
    fn compare_signs_needs_sign_condition() {
        // phase chain holds but E and F have the same sign; S has the other sign
        let z = z0();
        let r = compare_signs_check(&z, KClass::new(1, 0), KClass::new(-1, 1), KClass::new(1, 1)).unwrap();
        assert!(r.phase_chain);
        assert!(!r.e_f_signs_differ);
        assert_eq!(r.verdict, CompareSignsVerdict::HypothesisNotMet);
    }

    #[test]
    fn charge_json() {
        let z = CentralCharge::new(c(0, 1), c(1, 1));
        let s = serde_json::to_string(&z).unwrap();
        assert_eq!(s, r#"{"z_OZ":[0,1,1,1],"z_Ox":[1,1,1,1],"rot":[0,1],"logscale":[0,1]}"#);
        let back: CentralCharge =
            serde_json::from_str(r#"{"z_OZ":[0,1,1,1],"z_Ox":[1,1,1,1],"rot":[0,1]}"#).unwrap();
        assert_eq!(back, z);
    }
}
