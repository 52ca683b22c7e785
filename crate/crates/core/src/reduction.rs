//! Reduction of a pair of shifted line bundles with Hom concentrated in degree one
//! to the standard pair `{O_Z, O_Z(-1)[1]}`, with a step-by-step certificate.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homtable::hom_support_shifted;
use crate::kcharge::KClass;
use crate::nfcalc::{twist_line_on_line, word_on_k, word_on_line, AutoWord, Generator, LineObject, NormalForm};
use crate::pimod::{identify_line, realize_line_bundle, twist_shifted, PiModule, RealizationOutcome, ShiftedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinePair {
    #[serde(rename = "E")]
    pub e: LineObject,
    #[serde(rename = "F")]
    pub f: LineObject,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairCase {
    #[serde(rename = "M_EQ_N_MINUS_1_L1")]
    MEqNMinus1L1,
    #[serde(rename = "N_EQ_M_MINUS_1_Lm1")]
    NEqMMinus1Lm1,
}

/// Nonzero `dim Hom^i(a, b)`.
pub fn hom_table(a: LineObject, b: LineObject) -> BTreeMap<i64, u64> {
    hom_support_shifted(a.deg, a.shift, b.deg, b.shift)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairHoms {
    #[serde(rename = "EF")]
    pub ef: BTreeMap<i64, u64>,
    #[serde(rename = "FE")]
    pub fe: BTreeMap<i64, u64>,
}

impl LinePair {
    pub fn new(e: LineObject, f: LineObject) -> Self {
        Self { e, f }
    }

    pub fn homs(&self) -> PairHoms {
        PairHoms { ef: hom_table(self.e, self.f), fe: hom_table(self.f, self.e) }
    }

    /// Hom in both directions vanishes outside degree 1.
    pub fn is_concentrated(&self) -> bool {
        let h = self.homs();
        h.ef.keys().chain(h.fe.keys()).all(|i| *i == 1)
    }

    pub fn classes(&self) -> [KClass; 2] {
        [self.e.class(), self.f.class()]
    }

    pub fn shifted(&self, n: i64) -> Self {
        Self::new(self.e.shifted(n), self.f.shifted(n))
    }

    /// Level `v` with `{E, F} = {O(v), O(v-1)[1]}`, if the pair has that shape.
    pub fn standard_level(&self) -> Option<i64> {
        let (a, b) = (self.e, self.f);
        if a.shift == 0 && b.shift == 1 && b.deg == a.deg - 1 {
            Some(a.deg)
        } else if b.shift == 0 && a.shift == 1 && a.deg == b.deg - 1 {
            Some(b.deg)
        } else {
            None
        }
    }

    fn map(&self, g: impl Fn(LineObject) -> Result<LineObject>) -> Result<Self> {
        Ok(Self::new(g(self.e)?, g(self.f)?))
    }
}

impl std::fmt::Display for LinePair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{E = {}, F = {}}}", self.e, self.f)
    }
}

/// Decides which admissible configuration a pair is in, from `(m, n, l - k)`,
/// and cross-checks against the Hom tables.
pub fn classify_pair(p: &LinePair) -> Result<PairCase> {
    let (m, n, l) = (p.e.deg, p.f.deg, p.e.shift - p.f.shift);
    let case = if n == m + 1 && l == 1 {
        Some(PairCase::MEqNMinus1L1)
    } else if n == m - 1 && l == -1 {
        Some(PairCase::NEqMMinus1Lm1)
    } else {
        None
    };
    let concentrated = p.is_concentrated();
    match (case, concentrated) {
        (Some(c), true) => Ok(c),
        (None, false) => Err(Error::InadmissiblePair(format!(
            "{p}: Hom is not concentrated in degree 1 (E->F {:?}, F->E {:?})",
            p.homs().ef,
            p.homs().fe
        ))),
        _ => unreachable!("case analysis disagrees with the Hom table for {p}"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub word: AutoWord,
    pub label: Option<String>,
    pub before: LinePair,
    pub after: LinePair,
    pub classes_before: [KClass; 2],
    pub classes_after: [KClass; 2],
    pub homs_before: PairHoms,
    pub homs_after: PairHoms,
    pub lengths_before: [u64; 2],
    pub lengths_after: [u64; 2],
}

impl TraceStep {
    fn new(word: AutoWord, label: Option<&str>, before: LinePair, after: LinePair) -> Self {
        Self {
            label: label.map(str::to_owned),
            classes_before: before.classes(),
            classes_after: after.classes(),
            homs_before: before.homs(),
            homs_after: after.homs(),
            lengths_before: [1, 1],
            lengths_after: [1, 1],
            word,
            before,
            after,
        }
    }
}

/// Applies a single generator or a tensor composite to both members of a pair.
fn apply_step(p: &LinePair, word: &AutoWord) -> Result<(LinePair, Option<&'static str>)> {
    if let [(0, label)] = word.annotations()[..] {
        if word.len() == 2 {
            let k = if label == "tensor O(-2)" { -2 } else { 2 };
            let after = p.map(|x| Ok(LineObject::new(x.deg + k, x.shift)))?;
            return Ok((after, Some(label)));
        }
    }
    Ok((p.map(|x| word_on_line(word, x))?, None))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionTrace {
    pub input: LinePair,
    pub case: PairCase,
    pub level: i64,
    pub word: AutoWord,
    pub steps: Vec<TraceStep>,
    /// The image pair with `O_Z` first.
    pub output: [LineObject; 2],
    /// True iff `E` is sent to `O_Z(-1)[1]` rather than `O_Z`.
    pub swapped: bool,
}

fn push_step(steps: &mut Vec<TraceStep>, cur: &mut LinePair, word: AutoWord) -> Result<()> {
    let (after, label) = apply_step(cur, &word)?;
    steps.push(TraceStep::new(word, label, *cur, after));
    *cur = after;
    Ok(())
}

/// Shift then tensor composites bringing an admissible pair to `{O(v), O(v-1)[1]}`
/// with `v` in `{0, 1}`.
pub fn normalize_level(p: &LinePair) -> Result<(LinePair, AutoWord)> {
    let (cur, steps, _) = normalize_steps(p)?;
    Ok((cur, concat(&steps)))
}

/// Returns the normalized pair, the steps, and the level right after the shift.
fn normalize_steps(p: &LinePair) -> Result<(LinePair, Vec<TraceStep>, i64)> {
    let case = classify_pair(p)?;
    let n = match case {
        PairCase::MEqNMinus1L1 => -p.f.shift,
        PairCase::NEqMMinus1Lm1 => 1 - p.f.shift,
    };
    let mut cur = *p;
    let mut steps = Vec::new();
    if n != 0 {
        push_step(&mut steps, &mut cur, AutoWord(vec![Generator::Shift(n)]))?;
    }
    let level = cur.standard_level().expect("shifted admissible pair is standard-shaped");
    let mut v = level;
    while v >= 2 {
        push_step(&mut steps, &mut cur, AutoWord::tensor_minus_two(v))?;
        v -= 2;
    }
    while v < 0 {
        push_step(&mut steps, &mut cur, AutoWord::tensor_plus_two(v + 1))?;
        v += 2;
    }
    Ok((cur, steps, level))
}

fn concat(steps: &[TraceStep]) -> AutoWord {
    let mut w = AutoWord::new();
    for s in steps {
        w.extend(&s.word);
    }
    w
}

/// Word sending an admissible pair at level 0 or 1 to the standard pair.
pub fn finalize(p: &LinePair) -> Result<AutoWord> {
    let (_, steps, _) = finalize_steps(p)?;
    Ok(concat(&steps))
}

fn finalize_steps(p: &LinePair) -> Result<(LinePair, Vec<TraceStep>, i64)> {
    let (mut cur, mut steps, level) = normalize_steps(p)?;
    if cur.standard_level() == Some(1) {
        push_step(&mut steps, &mut cur, AutoWord(vec![Generator::Tw(0)]))?;
    }
    Ok((cur, steps, level))
}

pub fn reduce_pair(p: &LinePair) -> Result<ReductionTrace> {
    let case = classify_pair(p)?;
    let (cur, steps, level) = finalize_steps(p)?;
    let oz = LineObject::new(0, 0);
    let swapped = cur.e != oz;
    Ok(ReductionTrace {
        input: *p,
        case,
        level,
        word: concat(&steps),
        steps,
        output: [oz, LineObject::new(-1, 1)],
        swapped,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateError(pub String);

impl ReductionTrace {
    /// Re-verifies every step: classes against `word_on_k`, Hom tables against the
    /// closed form, Hom tables preserved, steps chained, final pair standard.
    pub fn certify(&self) -> std::result::Result<(), CertificateError> {
        let fail = |m: String| Err(CertificateError(m));
        let mut cur = self.input;
        for (i, s) in self.steps.iter().enumerate() {
            if s.before != cur {
                return fail(format!("step {i} does not start where step {} ended", i.wrapping_sub(1)));
            }
            for (j, (b, a)) in s.classes_before.iter().zip(&s.classes_after).enumerate() {
                if word_on_k(&s.word, *b) != *a {
                    return fail(format!("step {i} object {j}: class {a} is not the image of {b}"));
                }
            }
            if s.classes_before != s.before.classes() || s.classes_after != s.after.classes() {
                return fail(format!("step {i}: recorded classes disagree with the objects"));
            }
            if s.homs_before != s.before.homs() || s.homs_after != s.after.homs() {
                return fail(format!("step {i}: recorded Hom tables disagree with the closed form"));
            }
            if s.homs_before != s.homs_after {
                return fail(format!("step {i}: Hom dimensions changed"));
            }
            if !s.after.is_concentrated() {
                return fail(format!("step {i}: pair left degree-1 concentration"));
            }
            if s.lengths_after != s.lengths_before {
                return fail(format!("step {i}: lengths changed"));
            }
            cur = s.after;
        }
        let out = [cur.e, cur.f];
        let expected = if self.swapped { [self.output[1], self.output[0]] } else { self.output };
        if out != expected {
            return fail(format!("final pair {cur} is not the standard pair"));
        }
        let mut classes = vec![word_on_k(&self.word, self.input.e.class()), word_on_k(&self.word, self.input.f.class())];
        classes.sort();
        if classes != vec![KClass::new(-1, 1), KClass::new(1, 0)] {
            return fail(format!("word sends the input classes to {classes:?}"));
        }
        Ok(())
    }
}

/// An object of the module model with known line-bundle cohomology: the image of
/// `seed` under one twist or inverse twist by `O(0)` or `O(-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaTtInstance {
    pub seed: LineObject,
    pub generator: Generator,
    /// `F = O(t)[f_shift]`.
    pub t: i64,
    pub f_shift: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaTtReport {
    pub instance: LemmaTtInstance,
    /// Degree of the line bundle twisted by.
    pub twist_line: i64,
    pub e_before: NormalForm,
    pub e_after: LineObject,
    pub l_before: u64,
    pub l_after: u64,
    pub f_before: LineObject,
    pub f_after: NormalForm,
    pub model_e_before: ShiftedModule,
    pub model_e_after: ShiftedModule,
    pub model_f_after: ShiftedModule,
    /// The model image of `F` has the Hom tables of `f_after`.
    pub f_model_agrees: bool,
    pub holds: bool,
}

const REALIZE_DEPTH: usize = 4;
const REALIZE_DIM: usize = 8;
const IDENTIFY_SHIFT: i64 = 8;

fn simple_for_line(deg: i64, p: u32) -> Result<PiModule> {
    match deg {
        0 => Ok(PiModule::simple(1, p)),
        -1 => Ok(PiModule::simple(0, p)),
        _ => Err(Error::UnsupportedInstance(format!("the model twists only by O(0) and O(-1), not O({deg})"))),
    }
}

fn realize_shifted(x: LineObject, p: u32) -> Result<ShiftedModule> {
    match realize_line_bundle(x.deg, p, REALIZE_DEPTH, REALIZE_DIM) {
        RealizationOutcome::Found(r) => Ok(ShiftedModule { module: r.object.module, shift: r.object.shift + x.shift }),
        RealizationOutcome::Unsupported { .. } => {
            Err(Error::UnsupportedInstance(format!("O({}) has no realization within the search bound", x.deg)))
        }
    }
}

fn model_twist(line: i64, x: &ShiftedModule, inverse: bool, p: u32) -> Result<ShiftedModule> {
    twist_shifted(&simple_for_line(line, p)?, x, inverse)?
        .ok_or_else(|| Error::UnsupportedInstance("the model twist is not concentrated in one degree".into()))
}

/// Applies the twist that shortens `E` when every summand of its cohomology is
/// within distance one of `t` (by `O(t)` when the summands lie in `{t+1, t}`, by
/// `O(t-1)` when they lie in `{t, t-1}`), computing it in the module model. Checks
/// that the length of `E` drops and that `F = O(t)[k]` stays a shifted line bundle.
pub fn lemma_tt_certify(inst: &LemmaTtInstance, p: u32) -> Result<LemmaTtReport> {
    let (line0, inverse0) = match inst.generator {
        Generator::Tw(a) => (a, false),
        Generator::TwInv(a) => (a, true),
        Generator::Shift(_) => return Err(Error::UnsupportedInstance("E must be a twist image of a line bundle".into())),
    };
    let e_before = inst.generator.apply_to_line(inst.seed)?;
    let l_before = e_before.length();
    if l_before <= 1 {
        return Err(Error::HypothesisViolated(format!("l(E) = {l_before} is not greater than 1")));
    }
    let degs: Vec<i64> = e_before.summands().iter().map(|(_, d, _)| *d).collect();
    if degs.iter().any(|d| (d - inst.t).abs() >= 2) {
        return Err(Error::HypothesisViolated(format!("a summand of E is at distance >= 2 from t = {}", inst.t)));
    }
    let twist_line = if degs.iter().all(|d| *d == inst.t || *d == inst.t + 1) { inst.t } else { inst.t - 1 };

    let model_e_before = model_twist(line0, &realize_shifted(inst.seed, p)?, inverse0, p)?;
    if model_e_before.class() != e_before.class() {
        return Err(Error::UnsupportedInstance("model object has the wrong class".into()));
    }
    let model_e_after = model_twist(twist_line, &model_e_before, false, p)?;
    let e_after = identify_line(&model_e_after, IDENTIFY_SHIFT)
        .ok_or_else(|| Error::UnsupportedInstance("the twisted object is not identified with a line bundle".into()))?;

    let f_before = LineObject::new(inst.t, inst.f_shift);
    let f_after = twist_line_on_line(twist_line, f_before.deg, f_before.shift)?;
    let model_f_after = model_twist(twist_line, &realize_shifted(f_before, p)?, false, p)?;
    let f_model_agrees = identify_line(&model_f_after, IDENTIFY_SHIFT) == f_after.as_line();
    let l_after = 1;
    let holds = l_after < l_before && f_after.length() == 1 && f_model_agrees;
    Ok(LemmaTtReport {
        instance: *inst,
        twist_line,
        e_before,
        e_after,
        l_before,
        l_after,
        f_before,
        f_after,
        model_e_before,
        model_e_after,
        model_f_after,
        f_model_agrees,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(e: &str, f: &str) -> LinePair {
        LinePair::new(e.parse().unwrap(), f.parse().unwrap())
    }

    #[test]
    fn classification() {
        assert_eq!(classify_pair(&pair("O(0)[1]", "O(1)[0]")), Ok(PairCase::MEqNMinus1L1));
        assert_eq!(classify_pair(&pair("O(1)[-1]", "O(0)[0]")), Ok(PairCase::NEqMMinus1Lm1));
        assert!(matches!(classify_pair(&pair("O(0)", "O(0)")), Err(Error::InadmissiblePair(_))));
        assert!(matches!(classify_pair(&pair("O(0)[1]", "O(2)")), Err(Error::InadmissiblePair(_))));
    }

    #[test]
    fn level_normalization() {
        let (p, w) = normalize_level(&pair("O(2)[1]", "O(3)")).unwrap();
        assert_eq!(w, AutoWord::tensor_minus_two(3));
        assert_eq!(p.standard_level(), Some(1));
        let (_, w) = normalize_level(&pair("O(-1)[1]", "O(0)")).unwrap();
        assert!(w.is_empty());
        let (p, w) = normalize_level(&pair("O(-3)[1]", "O(-2)")).unwrap();
        assert_eq!(w, AutoWord::tensor_plus_two(-1));
        assert_eq!(p.standard_level(), Some(0));
    }

    #[test]
    fn finalize_examples() {
        assert_eq!(finalize(&pair("O(0)[1]", "O(1)")).unwrap(), AutoWord(vec![Generator::Tw(0)]));
        assert!(finalize(&pair("O(0)", "O(-1)[1]")).unwrap().is_empty());
        // the standard pair shifted by [-1]
        assert_eq!(finalize(&pair("O(-1)[0]", "O(0)[-1]")).unwrap(), AutoWord(vec![Generator::Shift(1)]));
    }

    #[test]
    fn worked_reduction() {
        let t = reduce_pair(&pair("O(2)[1]", "O(3)")).unwrap();
        assert_eq!(t.steps.len(), 2);
        assert_eq!(t.steps[0].label.as_deref(), Some("tensor O(-2)"));
        assert_eq!(t.word.0.last(), Some(&Generator::Tw(0)));
        t.certify().unwrap();
        assert!(!t.swapped);

        let t = reduce_pair(&pair("O(-1)[1]", "O(0)")).unwrap();
        assert!(t.word.is_empty());
        assert!(t.swapped);
        t.certify().unwrap();
    }

    #[test]
    fn certificate_catches_tampering() {
        let mut t = reduce_pair(&pair("O(4)[1]", "O(5)")).unwrap();
        t.steps[0].classes_after[0] = KClass::new(5, 5);
        assert!(t.certify().is_err());
    }

    #[test]
    fn lemma_tt_instances() {
        let inst = |seed: &str, generator: &str, t: i64| LemmaTtInstance {
            seed: seed.parse().unwrap(),
            generator: generator.parse().unwrap(),
            t,
            f_shift: 0,
        };
        for (seed, g, t, line) in [
            ("O(-1)", "Tw(0)", 0, -1),
            ("O(-1)", "Tw(0)", -1, -1),
            ("O(0)", "TwInv(-1)", -1, -1),
            ("O(0)", "TwInv(-1)", 0, -1),
        ] {
            let r = lemma_tt_certify(&inst(seed, g, t), 3).unwrap_or_else(|e| panic!("{seed} {g} {t}: {e:?}"));
            assert_eq!(r.twist_line, line);
            assert_eq!(r.l_before, 3);
            assert!(r.holds, "{seed} {g} t={t}: {r:?}");
        }
        let r = lemma_tt_certify(&inst("O(0)", "TwInv(-1)", -1), 3).unwrap();
        assert_eq!(r.f_after.as_line(), Some(LineObject::new(-1, -1)));
        // T_{O(0)}^{-1}(O(1)) has two nonzero cohomology modules in the model
        assert!(matches!(lemma_tt_certify(&inst("O(1)", "TwInv(0)", 0), 3), Err(Error::UnsupportedInstance(_))));
        assert!(matches!(lemma_tt_certify(&inst("O(0)", "Tw(0)", 0), 3), Err(Error::HypothesisViolated(_))));
        assert!(matches!(lemma_tt_certify(&inst("O(-1)", "Tw(0)", 3), 3), Err(Error::HypothesisViolated(_))));
    }
}
