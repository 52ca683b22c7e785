//! Normal forms of spherical objects on local P^1 and words in twists and shifts.
//!
//! A normal form records `H^q(E) = O(v)^{f_q} + O(v-1)^{g_q}` for every degree `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kcharge::{class_of_line_bundle, twist_on_k, KClass};

/// `O_Z(deg)[shift]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineObject {
    pub deg: i64,
    pub shift: i64,
}

impl LineObject {
    pub const fn new(deg: i64, shift: i64) -> Self {
        Self { deg, shift }
    }

    pub fn class(self) -> KClass {
        class_of_line_bundle(self.deg, self.shift)
    }

    pub fn shifted(self, n: i64) -> Self {
        Self::new(self.deg, self.shift + n)
    }

    pub fn to_normal_form(self) -> NormalForm {
        NormalForm::line(self.deg, self.shift)
    }
}

impl fmt::Display for LineObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({})[{}]", self.deg, self.shift)
    }
}

impl Serialize for LineObject {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LineObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for LineObject {
    type Err = Error;

    /// Accepts `O(m)[l]`, `O(m)` and `O_Z(m)[l]`, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected O(m)[l], got {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = compact
            .strip_prefix("O_Z(")
            .or_else(|| compact.strip_prefix("O("))
            .ok_or_else(bad)?;
        let (deg, rest) = rest.split_once(')').ok_or_else(bad)?;
        let deg = deg.parse().map_err(|_| bad())?;
        let shift = if rest.is_empty() {
            0
        } else {
            rest.strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?
        };
        Ok(Self::new(deg, shift))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    v: i64,
    comps: BTreeMap<i64, (u64, u64)>,
}

impl NormalForm {
    /// Validates and canonicalizes: zero entries are dropped, and if no `O(v)`
    /// summand occurs the level is lowered so the remaining twist occupies `f`.
    pub fn new(v: i64, comps: BTreeMap<i64, (u64, u64)>) -> Result<Self> {
        let mut comps: BTreeMap<_, _> = comps.into_iter().filter(|(_, fg)| *fg != (0, 0)).collect();
        if comps.is_empty() {
            return Err(Error::InvalidNormalForm("all multiplicities vanish".into()));
        }
        let mut v = v;
        if comps.values().all(|(f, _)| *f == 0) {
            v -= 1;
            for fg in comps.values_mut() {
                *fg = (fg.1, 0);
            }
        }
        Ok(Self { v, comps })
    }

    pub fn line(deg: i64, shift: i64) -> Self {
        Self { v: deg, comps: BTreeMap::from([(-shift, (1, 0))]) }
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn comps(&self) -> &BTreeMap<i64, (u64, u64)> {
        &self.comps
    }

    /// `(f_q, g_q)`, zero outside the support.
    pub fn at(&self, q: i64) -> (u64, u64) {
        self.comps.get(&q).copied().unwrap_or((0, 0))
    }

    pub fn length(&self) -> u64 {
        self.comps.values().map(|(f, g)| f + g).sum()
    }

    /// `E[n]`: `H^q(E[n]) = H^{q+n}(E)`.
    pub fn shift(&self, n: i64) -> Self {
        Self { v: self.v, comps: self.comps.iter().map(|(q, fg)| (q - n, *fg)).collect() }
    }

    /// `E (x) O(k)`; the flag is true iff this functor lies in the twist group (k even).
    pub fn tensor_line(&self, k: i64) -> (Self, bool) {
        (Self { v: self.v + k, comps: self.comps.clone() }, k.rem_euclid(2) == 0)
    }

    /// Alternating sum of the cohomology classes.
    pub fn class(&self) -> KClass {
        let hi = class_of_line_bundle(self.v, 0);
        let lo = class_of_line_bundle(self.v - 1, 0);
        self.comps.iter().fold(KClass::ZERO, |acc, (q, (f, g))| {
            let sign = if q.rem_euclid(2) == 0 { 1 } else { -1 };
            acc + (hi.scale(*f as i64) + lo.scale(*g as i64)).scale(sign)
        })
    }

    /// The line bundle this normal form describes, if it has length one.
    pub fn as_line(&self) -> Option<LineObject> {
        if self.length() != 1 {
            return None;
        }
        let (q, (f, _)) = self.comps.iter().next()?;
        let deg = if *f == 1 { self.v } else { self.v - 1 };
        Some(LineObject::new(deg, -q))
    }

    /// Summands `(q, s, multiplicity)` of `H^q(E) = O(s)^mult`.
    pub fn summands(&self) -> Vec<(i64, i64, u64)> {
        let mut out = Vec::new();
        for (q, (f, g)) in &self.comps {
            if *f > 0 {
                out.push((*q, self.v, *f));
            }
            if *g > 0 {
                out.push((*q, self.v - 1, *g));
            }
        }
        out
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(q, (f, g))| format!("H^{q} = O({})^{f} + O({})^{g}", self.v, self.v - 1))
            .collect();
        write!(out, "{}", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct NormalFormJson {
    v: i64,
    comps: BTreeMap<i64, [u64; 2]>,
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NormalFormJson { v: self.v, comps: self.comps.iter().map(|(q, (f, g))| (*q, [*f, *g])).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NormalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = NormalFormJson::deserialize(d)?;
        NormalForm::new(raw.v, raw.comps.into_iter().map(|(q, [f, g])| (q, (f, g))).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// `T_{O(t)}(O(s)[n])` for `|s - t| <= 1`.
pub fn twist_line_on_line(t: i64, s: i64, n: i64) -> Result<NormalForm> {
    let nf = match s - t {
        0 => NormalForm::line(t, -1),
        1 => NormalForm::line(t - 1, 1),
        // RHom(O(t), O(t-1)) = k^2[-2]; the cone has H^0 = O(t-1), H^1 = O(t)^2
        -1 => NormalForm { v: t, comps: BTreeMap::from([(0, (0, 1)), (1, (2, 0))]) },
        _ => return Err(Error::UnsupportedTwistDistance { t, s }),
    };
    Ok(nf.shift(n))
}

/// `T_{O(t)}^{-1}(O(s)[n])` for `|s - t| <= 1`.
pub fn inverse_twist_line_on_line(t: i64, s: i64, n: i64) -> Result<NormalForm> {
    let nf = match s - t {
        0 => NormalForm::line(t, 1),
        -1 => NormalForm::line(t + 1, -1),
        // RHom(O(t+1), O(t)) = k^2 in degree 2 after duality; H^-1 = O(t)^2, H^0 = O(t+1)
        1 => NormalForm { v: t + 1, comps: BTreeMap::from([(-1, (0, 2)), (0, (1, 0))]) },
        _ => return Err(Error::UnsupportedTwistDistance { t, s }),
    };
    Ok(nf.shift(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Tw(i64),
    TwInv(i64),
    Shift(i64),
}

impl Generator {
    /// Action on a line bundle, when the result is again a line bundle.
    pub fn apply_to_line(self, x: LineObject) -> Result<NormalForm> {
        match self {
            Generator::Tw(t) => twist_line_on_line(t, x.deg, x.shift),
            Generator::TwInv(t) => inverse_twist_line_on_line(t, x.deg, x.shift),
            Generator::Shift(n) => Ok(NormalForm::line(x.deg, x.shift + n)),
        }
    }

    pub fn apply_to_class(self, u: KClass) -> KClass {
        match self {
            Generator::Tw(t) | Generator::TwInv(t) => {
                twist_on_k(class_of_line_bundle(t, 0), u).expect("line classes are spherical")
            }
            Generator::Shift(n) => {
                if n.rem_euclid(2) == 0 {
                    u
                } else {
                    -u
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Tw(t) => write!(f, "Tw({t})"),
            Generator::TwInv(t) => write!(f, "TwInv({t})"),
            Generator::Shift(n) => write!(f, "Shift({n})"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("unknown generator {s:?}"));
        let s = s.trim();
        let (head, arg) = s.split_once('(').ok_or_else(bad)?;
        let arg: i64 = arg.strip_suffix(')').ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        match head {
            "Tw" => Ok(Generator::Tw(arg)),
            "TwInv" => Ok(Generator::TwInv(arg)),
            "Shift" => Ok(Generator::Shift(arg)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Generator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A word in `S_Z(X)`, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AutoWord(pub Vec<Generator>);

impl AutoWord {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, g: Generator) {
        self.0.push(g);
    }

    pub fn extend(&mut self, other: &AutoWord) {
        self.0.extend_from_slice(&other.0);
    }

    /// `[Tw(v), Tw(v-1)]`, acting as `- (x) O(-2)`.
    pub fn tensor_minus_two(v: i64) -> Self {
        Self(vec![Generator::Tw(v), Generator::Tw(v - 1)])
    }

    /// `[TwInv(a-1), TwInv(a)]`, acting as `- (x) O(2)`.
    pub fn tensor_plus_two(a: i64) -> Self {
        Self(vec![Generator::TwInv(a - 1), Generator::TwInv(a)])
    }

    /// Positions of adjacent generator pairs forming a composite that acts as a line
    /// bundle tensor, with labels.
    pub fn annotations(&self) -> Vec<(usize, &'static str)> {
        let mut out = Vec::new();
        let mut i = 0;
        while i + 1 < self.0.len() {
            match (self.0[i], self.0[i + 1]) {
                (Generator::Tw(a), Generator::Tw(b)) if b == a - 1 => {
                    out.push((i, "tensor O(-2)"));
                    i += 2;
                }
                (Generator::TwInv(a), Generator::TwInv(b)) if b == a + 1 => {
                    out.push((i, "tensor O(2)"));
                    i += 2;
                }
                _ => i += 1,
            }
        }
        out
    }
}

impl fmt::Display for AutoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn word_on_k(w: &AutoWord, u: KClass) -> KClass {
    w.0.iter().fold(u, |acc, g| g.apply_to_class(acc))
}

/// Evaluates a word on a line bundle generator by generator; fails as soon as an
/// intermediate result is not a line bundle.
pub fn word_on_line(w: &AutoWord, x: LineObject) -> Result<LineObject> {
    w.0.iter().try_fold(x, |acc, g| {
        let nf = g.apply_to_line(acc)?;
        nf.as_line().ok_or_else(|| {
            Error::UnsupportedInstance(format!("{g} sends {acc} to a non-line object {nf}"))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(v: i64, comps: &[(i64, (u64, u64))]) -> NormalForm {
        NormalForm::new(v, comps.iter().copied().collect()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(NormalForm::line(0, 0).length(), 1);
        assert_eq!(nf(1, &[(1, (2, 0)), (0, (0, 1))]).length(), 3);
        let e = nf(1, &[(1, (2, 0)), (0, (0, 1))]);
        assert_eq!(e.shift(4).length(), 3);
    }

    #[test]
    fn canonical_form() {
        assert_eq!(nf(3, &[(0, (0, 2))]), nf(2, &[(0, (2, 0))]));
        assert!(NormalForm::new(0, BTreeMap::from([(0, (0, 0))])).is_err());
        assert_eq!(nf(0, &[(0, (1, 0)), (1, (0, 0))]), NormalForm::line(0, 0));
    }

    #[test]
    fn shifts_and_tensors() {
        let o = NormalForm::line(0, 0);
        assert_eq!(o.shift(1).comps().keys().copied().collect::<Vec<_>>(), vec![-1]);
        assert_eq!(o.shift(1).shift(-1), o);
        let (t, in_group) = NormalForm::line(1, 0).tensor_line(-2);
        assert_eq!(t, NormalForm::line(-1, 0));
        assert!(in_group);
        assert!(!o.tensor_line(1).1);
        assert_eq!(o.tensor_line(0).0, o);
        let e = nf(2, &[(0, (1, 1)), (1, (2, 0))]);
        assert_eq!(e.shift(3).tensor_line(5).0, e.tensor_line(5).0.shift(3));
    }

    #[test]
    fn quoted_twist_rules() {
        assert_eq!(twist_line_on_line(0, 0, 0).unwrap(), NormalForm::line(0, -1));
        assert_eq!(twist_line_on_line(-1, 0, 0).unwrap(), NormalForm::line(-2, 1));
        assert_eq!(twist_line_on_line(0, 1, 0).unwrap(), NormalForm::line(-1, 1));
        assert_eq!(
            twist_line_on_line(0, 3, 0),
            Err(Error::UnsupportedTwistDistance { t: 0, s: 3 })
        );
    }

    #[test]
    fn cone_case_class() {
        // T_{O(t)}(O(t-1)) has H^0 = O(t-1), H^1 = O(t)^2
        let c = twist_line_on_line(2, 1, 0).unwrap();
        assert_eq!(c.length(), 3);
        assert_eq!(c.class(), twist_on_k(KClass::new(1, 2), KClass::new(1, 1)).unwrap());
    }

    #[test]
    fn inverse_twist_undoes_twist_on_lines() {
        for t in -4..=4 {
            for s in [t, t + 1] {
                let x = twist_line_on_line(t, s, 0).unwrap().as_line().unwrap();
                let back = inverse_twist_line_on_line(t, x.deg, x.shift).unwrap();
                assert_eq!(back, NormalForm::line(s, 0));
            }
        }
    }

    #[test]
    fn words_on_k() {
        let w = AutoWord(vec![Generator::Tw(0)]);
        assert_eq!(word_on_k(&w, KClass::new(1, 1)), KClass::new(-1, 1));
        assert_eq!(word_on_k(&AutoWord::new(), KClass::new(3, -2)), KClass::new(3, -2));
        for v in -5..=5 {
            for s in -5..=5 {
                let u = class_of_line_bundle(s, 0);
                assert_eq!(word_on_k(&AutoWord::tensor_minus_two(v), u), class_of_line_bundle(s - 2, 0));
                assert_eq!(word_on_k(&AutoWord::tensor_plus_two(v), u), class_of_line_bundle(s + 2, 0));
            }
        }
    }

    #[test]
    fn composite_annotation() {
        let mut w = AutoWord(vec![Generator::Shift(1)]);
        w.extend(&AutoWord::tensor_minus_two(3));
        w.push(Generator::Tw(0));
        assert_eq!(w.annotations(), vec![(1, "tensor O(-2)")]);
        assert_eq!(AutoWord::tensor_plus_two(-1).annotations(), vec![(0, "tensor O(2)")]);
    }

    #[test]
    fn parsing() {
        assert_eq!("O(0)[1]".parse::<LineObject>().unwrap(), LineObject::new(0, 1));
        assert_eq!("O(-3)".parse::<LineObject>().unwrap(), LineObject::new(-3, 0));
        assert_eq!("O_Z(2)[-1]".parse::<LineObject>().unwrap(), LineObject::new(2, -1));
        assert!("P(1)".parse::<LineObject>().is_err());
        assert_eq!("TwInv(-2)".parse::<Generator>().unwrap(), Generator::TwInv(-2));
        assert!("Tw[0]".parse::<Generator>().is_err());
    }

    #[test]
    fn json_shapes() {
        let w = AutoWord(vec![Generator::Tw(0), Generator::Shift(1)]);
        assert_eq!(serde_json::to_string(&w).unwrap(), r#"["Tw(0)","Shift(1)"]"#);
        let e = nf(1, &[(1, (2, 0)), (0, (0, 1))]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"v":1,"comps":{"0":[0,1],"1":[2,0]}}"#);
        assert_eq!(serde_json::from_str::<NormalForm>(&s).unwrap(), e);
        assert!(serde_json::from_str::<NormalForm>(r#"{"v":0,"comps":{}}"#).is_err());
    }
}
