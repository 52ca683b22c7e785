//! Graded Hom dimensions between shifted line bundles on the zero section.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::nfcalc::NormalForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HomDims {
    pub d0: u64,
    pub d1: u64,
    pub d2: u64,
}

impl HomDims {
    pub fn get(&self, i: i64) -> u64 {
        match i {
            0 => self.d0,
            1 => self.d1,
            2 => self.d2,
            _ => 0,
        }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.d0, self.d1, self.d2]
    }

    pub fn euler(&self) -> i64 {
        self.d0 as i64 - self.d1 as i64 + self.d2 as i64
    }
}

/// `dim Hom^i(O_Z(s), O_Z(t))` for `i = 0, 1, 2`.
pub fn hom_dims_line(s: i64, t: i64) -> HomDims {
    let d = t - s;
    let pos = |x: i64| x.max(0) as u64;
    HomDims { d0: pos(d + 1), d1: pos(d - 1) + pos(-d - 1), d2: pos(1 - d) }
}

/// `dim Hom^i(O(s)[p], O(t)[q])` on the three degrees `p - q .. p - q + 2`.
pub fn hom_dims_shifted(s: i64, p: i64, t: i64, q: i64) -> BTreeMap<i64, u64> {
    let dims = hom_dims_line(s, t);
    (0..3).map(|j| (j + p - q, dims.get(j))).collect()
}

/// Nonzero entries of [`hom_dims_shifted`].
pub fn hom_support_shifted(s: i64, p: i64, t: i64, q: i64) -> BTreeMap<i64, u64> {
    hom_dims_shifted(s, p, t, q).into_iter().filter(|(_, d)| *d > 0).collect()
}

/// Whether `Hom^i(O_Z(s), O_Z(t)) = 0`, decided by the vanishing clauses:
/// degree 0 iff `s > t`, degree 1 iff `|s - t| < 2`, degree 2 iff `s < t`.
pub fn vanishing_predicate(i: i64, s: i64, t: i64) -> Result<bool> {
    match i {
        0 => Ok(s - t > 0),
        1 => Ok((s - t).abs() < 2),
        2 => Ok(s - t < 0),
        _ => Err(Error::DegreeOutOfRange(i)),
    }
}

/// `dim Hom^p(H^q(E), O(t))` for a normal form `E`.
fn cohomology_hom(e: &NormalForm, q: i64, p: i64, t: i64) -> u64 {
    let (f, g) = e.at(q);
    f * hom_dims_line(e.v(), t).get(p) + g * hom_dims_line(e.v() - 1, t).get(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PromiseStatus {
    Satisfied,
    Unsatisfied,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseEntry {
    pub clause: char,
    pub q: i64,
    pub s: i64,
    pub premise: bool,
    pub conclusion: bool,
    pub violated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DifferenceVerdict {
    /// No implication is violated.
    Pass,
    /// An implication fails although `Hom^i(E, O(t))` is provably concentrated in degree 1.
    Fail,
    /// Some implication fails and the concentration hypothesis is provably false.
    PromiseUnsatisfied,
    /// Some implication fails and the Hom bounds cannot decide the hypothesis.
    PromiseUndetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferenceReport {
    pub t: i64,
    /// Lower and upper bounds for `dim Hom^n(E, O(t))` from the `E_2` page.
    pub hom_bounds: BTreeMap<i64, (u64, u64)>,
    pub promise: PromiseStatus,
    pub clauses: Vec<ClauseEntry>,
    pub flagged: bool,
    pub verdict: DifferenceVerdict,
}

/// Evaluates the three implications relating the summands of `H^q(E)` to `t`
/// for `F = O_Z(t)`, under the hypothesis `Hom^i(E, F) = 0` unless `i = 1`:
/// (a) `q != 0` implies `|s - t| < 2`; (b) `q = 0` and `Hom(H^{-1}(E), F) = 0`
/// imply `s < t`; (c) `q = 0` and `Hom^2(H^1(E), F) = 0` imply `s > t`.
///
/// The hypothesis is decided from the spectral sequence
/// `E_2^{p,q} = Hom^p(H^{-q}(E), F)`: its only differential `d_2: E_2^{0,q} -> E_2^{2,q-1}`
/// is unknown at the level of normal forms, so `Hom^n` is bracketed between the
/// smallest and largest possible `E_3` totals.
pub fn difference_check(e: &NormalForm, t: i64) -> DifferenceReport {
    let e2 = |p: i64, q: i64| cohomology_hom(e, -q, p, t);
    let qs: Vec<i64> = e.comps().keys().copied().collect();
    let lo = qs.iter().min().copied().unwrap_or(0);
    let hi = qs.iter().max().copied().unwrap_or(0);
    let mut hom_bounds = BTreeMap::new();
    // n = p - (cohomological degree), p in 0..=2
    for n in (-hi)..=(2 - lo) {
        let lb = e2(1, n - 1)
            + e2(0, n).saturating_sub(e2(2, n - 1))
            + e2(2, n - 2).saturating_sub(e2(0, n - 1));
        let ub = e2(0, n) + e2(1, n - 1) + e2(2, n - 2);
        hom_bounds.insert(n, (lb, ub));
    }
    let off = hom_bounds.iter().filter(|(n, _)| **n != 1);
    let promise = if off.clone().any(|(_, (lb, _))| *lb > 0) {
        PromiseStatus::Unsatisfied
    } else if off.clone().all(|(_, (_, ub))| *ub == 0) {
        PromiseStatus::Satisfied
    } else {
        PromiseStatus::Undetermined
    };

    let h_minus1_hom0 = cohomology_hom(e, -1, 0, t);
    let h1_hom2 = cohomology_hom(e, 1, 2, t);
    let mut clauses = Vec::new();
    for (q, s, _) in e.summands() {
        if q != 0 {
            let conclusion = (s - t).abs() < 2;
            clauses.push(ClauseEntry { clause: 'a', q, s, premise: true, conclusion, violated: !conclusion });
        } else {
            let premise = h_minus1_hom0 == 0;
            let conclusion = s - t < 0;
            clauses.push(ClauseEntry { clause: 'b', q, s, premise, conclusion, violated: premise && !conclusion });
            let premise = h1_hom2 == 0;
            let conclusion = s - t > 0;
            clauses.push(ClauseEntry { clause: 'c', q, s, premise, conclusion, violated: premise && !conclusion });
        }
    }
    let flagged = clauses.iter().any(|c| c.violated);
    let verdict = match (flagged, promise) {
        (false, _) => DifferenceVerdict::Pass,
        (true, PromiseStatus::Satisfied) => DifferenceVerdict::Fail,
        (true, PromiseStatus::Unsatisfied) => DifferenceVerdict::PromiseUnsatisfied,
        (true, PromiseStatus::Undetermined) => DifferenceVerdict::PromiseUndetermined,
    };
    DifferenceReport { t, hom_bounds, promise, clauses, flagged, verdict }
}
