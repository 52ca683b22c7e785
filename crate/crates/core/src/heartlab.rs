//! Harder-Narasimhan and Jordan-Hölder engines over a finite-length abelian
//! category, and checks of the inequalities and twist statements built on them.
//!
//! Everything here talks to the category through [`CategoryOracle`]; phases are
//! exact keys computed from a [`CentralCharge`] on the classes of heart objects.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Phase;
use crate::kcharge::{CentralCharge, KClass};

/// A finite-length abelian category (a heart), queried through its subobject
/// lattices and Hom dimensions.
pub trait CategoryOracle {
    type Obj: Clone + fmt::Debug + PartialEq;
    type Sub: Clone + fmt::Debug + PartialEq;

    /// All subobjects of `x`, in a fixed order.
    fn subobjects(&self, x: &Self::Obj) -> Result<Vec<Self::Sub>>;
    fn sub_object(&self, s: &Self::Sub) -> Self::Obj;
    fn quotient(&self, x: &Self::Obj, s: &Self::Sub) -> Self::Obj;
    /// `(dim Hom, dim Hom^1, dim Hom^2)`.
    fn hom_dims(&self, x: &Self::Obj, y: &Self::Obj) -> (usize, usize, usize);
    fn direct_sum(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Obj;
    fn zero(&self) -> Self::Obj;
    fn is_zero(&self, x: &Self::Obj) -> bool;
    fn is_isomorphic(&self, x: &Self::Obj, y: &Self::Obj) -> bool;
    fn kclass(&self, x: &Self::Obj) -> KClass;
    fn length(&self, x: &Self::Obj) -> usize;
    /// A key that is equal exactly on isomorphic objects; orders stable objects
    /// when a choice has to be made.
    fn order_key(&self, x: &Self::Obj) -> Result<Vec<u64>>;
}

/// Categories that can also compute inverse spherical twists.
pub trait TwistOracle: CategoryOracle {
    /// Cohomology `[H^-1, H^0, H^1]` of `T_E^{-1}(F)` with respect to the heart.
    fn inverse_twist(&self, e: &Self::Obj, f: &Self::Obj) -> Result<[Self::Obj; 3]>;
}

pub fn phase_of<C: CategoryOracle>(cat: &C, z: &CentralCharge, x: &C::Obj) -> Result<Phase> {
    let u = cat.kclass(x);
    z.phase(u).map_err(|_| Error::ChargeDegenerate(format!("Z vanishes on the class {u} of a nonzero object")))
}

fn total(d: (usize, usize, usize)) -> usize {
    d.0 + d.1 + d.2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HNFactor<O> {
    pub phase: Phase,
    pub object: O,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HNFiltration<O> {
    pub factors: Vec<HNFactor<O>>,
}

impl<O> HNFiltration<O> {
    pub fn is_semistable(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn phases(&self) -> Vec<Phase> {
        self.factors.iter().map(|f| f.phase.clone()).collect()
    }
}

/// The subobject of maximal phase, and among those of maximal length.
fn max_destabilizing<C: CategoryOracle>(cat: &C, z: &CentralCharge, x: &C::Obj) -> Result<(C::Sub, C::Obj, Phase)> {
    let mut best: Option<(Phase, usize, C::Sub, C::Obj)> = None;
    let mut tied = false;
    for s in cat.subobjects(x)? {
        let u = cat.sub_object(&s);
        if cat.is_zero(&u) {
            continue;
        }
        let phase = phase_of(cat, z, &u)?;
        let len = cat.length(&u);
        let ord = match &best {
            None => std::cmp::Ordering::Greater,
            Some((bp, bl, _, _)) => phase.cmp(bp).then(len.cmp(bl)),
        };
        match ord {
            std::cmp::Ordering::Greater => {
                best = Some((phase, len, s, u));
                tied = false;
            }
            std::cmp::Ordering::Equal => tied = true,
            std::cmp::Ordering::Less => {}
        }
    }
    if tied {
        return Err(Error::UnsupportedInstance("maximal destabilizing subobject is not unique".into()));
    }
    let (phase, _, s, u) = best.ok_or_else(|| Error::UnsupportedInstance("zero object has no HN filtration".into()))?;
    Ok((s, u, phase))
}

/// HN filtration of a heart object: repeatedly split off the maximal destabilizing
/// subobject (maximal phase, then maximal length).
pub fn hn_filter<C: CategoryOracle>(cat: &C, z: &CentralCharge, m: &C::Obj) -> Result<HNFiltration<C::Obj>> {
    let mut rest = m.clone();
    let mut factors = Vec::new();
    while !cat.is_zero(&rest) {
        let (s, object, phase) = max_destabilizing(cat, z, &rest)?;
        rest = cat.quotient(&rest, &s);
        factors.push(HNFactor { phase, object });
    }
    Ok(HNFiltration { factors })
}

pub fn is_semistable<C: CategoryOracle>(cat: &C, z: &CentralCharge, x: &C::Obj) -> Result<bool> {
    Ok(!cat.is_zero(x) && hn_filter(cat, z, x)?.is_semistable())
}

/// Nonzero, and every proper nonzero subobject has strictly smaller phase.
pub fn is_stable<C: CategoryOracle>(cat: &C, z: &CentralCharge, x: &C::Obj) -> Result<bool> {
    if cat.is_zero(x) {
        return Ok(false);
    }
    let phase = phase_of(cat, z, x)?;
    let len = cat.length(x);
    for s in cat.subobjects(x)? {
        let u = cat.sub_object(&s);
        let l = cat.length(&u);
        if l == 0 || l == len {
            continue;
        }
        if phase_of(cat, z, &u)? >= phase {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stable factors of a semistable object, each taken as a minimal subobject of
/// the same phase.
pub fn jh_factors<C: CategoryOracle>(cat: &C, z: &CentralCharge, x: &C::Obj) -> Result<Vec<C::Obj>> {
    let mut rest = x.clone();
    let mut out = Vec::new();
    while !cat.is_zero(&rest) {
        let phase = phase_of(cat, z, &rest)?;
        let mut best: Option<(usize, C::Sub, C::Obj)> = None;
        for s in cat.subobjects(&rest)? {
            let u = cat.sub_object(&s);
            let l = cat.length(&u);
            if l == 0 || phase_of(cat, z, &u)? != phase {
                continue;
            }
            if best.as_ref().is_none_or(|(bl, _, _)| l < *bl) {
                best = Some((l, s, u));
            }
        }
        let (_, s, u) = best.ok_or(Error::NotSemistable)?;
        rest = cat.quotient(&rest, &s);
        out.push(u);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JHBlock<O> {
    pub block: O,
    pub stable_factor: O,
    pub multiplicity: usize,
    /// `dim Hom(A_i, B_i)` for the running quotient `B_i`.
    pub hom_to_rest: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JHBlocks<O> {
    pub phase: Phase,
    pub blocks: Vec<JHBlock<O>>,
}

impl<O> JHBlocks<O> {
    pub fn certified(&self) -> bool {
        self.blocks.iter().all(|b| b.hom_to_rest == 0)
    }
}

/// JH blocks of a semistable object of phase `k`: `A_i` is the maximal subobject of
/// `B_{i-1}` whose stable factors are all isomorphic to `S`, where `S` is the stable
/// subobject of `B_{i-1}` with the least order key.
pub fn jh_blocks<C: CategoryOracle>(cat: &C, z: &CentralCharge, m: &C::Obj, k: &Phase) -> Result<JHBlocks<C::Obj>> {
    let hn = hn_filter(cat, z, m)?;
    if !hn.is_semistable() || hn.factors[0].phase != *k {
        return Err(Error::NotSemistable);
    }
    let mut rest = m.clone();
    let mut blocks = Vec::new();
    while !cat.is_zero(&rest) {
        let mut same_phase = Vec::new();
        for s in cat.subobjects(&rest)? {
            let u = cat.sub_object(&s);
            if !cat.is_zero(&u) && phase_of(cat, z, &u)? == *k {
                same_phase.push((s, u));
            }
        }
        let mut stable: Option<(Vec<u64>, C::Obj)> = None;
        for (_, u) in &same_phase {
            if is_stable(cat, z, u)? {
                let key = cat.order_key(u)?;
                if stable.as_ref().is_none_or(|(bk, _)| key < *bk) {
                    stable = Some((key, u.clone()));
                }
            }
        }
        let (_, s) = stable.ok_or(Error::NotSemistable)?;
        let mut best: Option<(usize, C::Sub, C::Obj, usize)> = None;
        for (sub, u) in same_phase {
            let factors = jh_factors(cat, z, &u)?;
            if !factors.iter().all(|f| cat.is_isomorphic(f, &s)) {
                continue;
            }
            let l = cat.length(&u);
            if best.as_ref().is_none_or(|(bl, _, _, _)| l > *bl) {
                best = Some((l, sub, u, factors.len()));
            }
        }
        let (_, sub, block, multiplicity) = best.expect("the stable subobject itself qualifies");
        rest = cat.quotient(&rest, &sub);
        let hom_to_rest = cat.hom_dims(&block, &rest).0;
        blocks.push(JHBlock { block, stable_factor: s, multiplicity, hom_to_rest });
    }
    Ok(JHBlocks { phase: k.clone(), blocks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MukaiReport {
    pub ext1_sub: usize,
    pub ext1_quotient: usize,
    pub ext1_middle: usize,
    pub holds: bool,
}

/// `(A,A)^1 + (C,C)^1 <= (B,B)^1` for `0 -> A -> B -> C -> 0` with `(A,C)^0 = 0`, the
/// sequence given by the subobject `witness` of `B`.
pub fn mukai_check<C: CategoryOracle>(cat: &C, b: &C::Obj, witness: &C::Sub) -> Result<MukaiReport> {
    let a = cat.sub_object(witness);
    let c = cat.quotient(b, witness);
    if cat.kclass(&a) + cat.kclass(&c) != cat.kclass(b) || cat.length(&a) + cat.length(&c) != cat.length(b) {
        return Err(Error::HypothesisViolated("the sequence is not exact".into()));
    }
    if cat.hom_dims(&a, &c).0 != 0 {
        return Err(Error::HypothesisViolated("(A,C)^0 != 0".into()));
    }
    let ext1_sub = cat.hom_dims(&a, &a).1;
    let ext1_quotient = cat.hom_dims(&c, &c).1;
    let ext1_middle = cat.hom_dims(b, b).1;
    Ok(MukaiReport { ext1_sub, ext1_quotient, ext1_middle, holds: ext1_sub + ext1_quotient <= ext1_middle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub self_ext1: usize,
    pub cohomology_sum: usize,
    pub hn_sum: usize,
    pub jh_sum: usize,
    pub holds: bool,
}

/// `(E,E)^1 >= sum_i (H^i,H^i)^1 >= sum_k (H^k_sigma,H^k_sigma)^1 >= sum over JH blocks`,
/// for `E` given by its self-`Ext^1` and its heart cohomology objects.
pub fn inequality_chain_from_cohomology<C: CategoryOracle>(
    cat: &C,
    z: &CentralCharge,
    self_ext1: usize,
    cohomology: &[C::Obj],
) -> Result<ChainReport> {
    let mut cohomology_sum = 0;
    let mut hn_sum = 0;
    let mut jh_sum = 0;
    for h in cohomology.iter().filter(|h| !cat.is_zero(h)) {
        cohomology_sum += cat.hom_dims(h, h).1;
        for f in hn_filter(cat, z, h)?.factors {
            hn_sum += cat.hom_dims(&f.object, &f.object).1;
            for b in jh_blocks(cat, z, &f.object, &f.phase)?.blocks {
                jh_sum += cat.hom_dims(&b.block, &b.block).1;
            }
        }
    }
    let holds = self_ext1 >= cohomology_sum && cohomology_sum >= hn_sum && hn_sum >= jh_sum;
    Ok(ChainReport { self_ext1, cohomology_sum, hn_sum, jh_sum, holds })
}

/// The chain for an object of the heart, where the first inequality is an equality.
pub fn inequality_chain_check<C: CategoryOracle>(cat: &C, z: &CentralCharge, e: &C::Obj) -> Result<ChainReport> {
    let self_ext1 = cat.hom_dims(e, e).1;
    inequality_chain_from_cohomology(cat, z, self_ext1, std::slice::from_ref(e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DecomposabilityVerdict {
    /// The gap between the `(s-1)`-th and `s`-th phases (1-based) exceeds `n - 1`.
    Decomposable { s: usize },
    NoCertificate,
}

/// An object whose nontrivial phases have a gap larger than `n - 1` is decomposable.
pub fn decomposability_certificate(phases: &[Phase], n: i64) -> Result<DecomposabilityVerdict> {
    if phases.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::PhasesNotDecreasing);
    }
    for (i, w) in phases.windows(2).enumerate() {
        if w[0] > w[1].shifted(n - 1) {
            return Ok(DecomposabilityVerdict::Decomposable { s: i + 2 });
        }
    }
    Ok(DecomposabilityVerdict::NoCertificate)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockAudit<O> {
    pub phase: Phase,
    pub block: O,
    pub stable_factor: O,
    pub multiplicity: usize,
    pub block_rigid: bool,
    pub stable_ext1: usize,
    pub stable_spherical: bool,
    pub multiple_of_stable: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidityReport<O> {
    pub rigid: bool,
    pub blocks: Vec<BlockAudit<O>>,
    pub all_stable_ext1_even: bool,
    pub holds: bool,
}

/// Audits the JH blocks of every HN factor: rigid blocks (all blocks when `E` is
/// rigid) must be multiples of a stable spherical object, and every stable factor
/// must have even `Ext^1`.
pub fn rigidity_spherical_audit<C: CategoryOracle>(
    cat: &C,
    z: &CentralCharge,
    e: &C::Obj,
) -> Result<RigidityReport<C::Obj>> {
    let rigid = cat.hom_dims(e, e).1 == 0;
    let mut blocks = Vec::new();
    for f in hn_filter(cat, z, e)?.factors {
        for b in jh_blocks(cat, z, &f.object, &f.phase)?.blocks {
            let block_rigid = cat.hom_dims(&b.block, &b.block).1 == 0;
            let s_dims = cat.hom_dims(&b.stable_factor, &b.stable_factor);
            let stable_spherical = total(s_dims) == 2;
            let mut power = cat.zero();
            for _ in 0..b.multiplicity {
                power = cat.direct_sum(&power, &b.stable_factor);
            }
            let multiple_of_stable = cat.is_isomorphic(&b.block, &power);
            let ok = !(rigid || block_rigid) || (stable_spherical && multiple_of_stable);
            blocks.push(BlockAudit {
                phase: f.phase.clone(),
                block: b.block,
                stable_factor: b.stable_factor,
                multiplicity: b.multiplicity,
                block_rigid,
                stable_ext1: s_dims.1,
                stable_spherical,
                multiple_of_stable,
                ok,
            });
        }
    }
    let all_stable_ext1_even = blocks.iter().all(|b| b.stable_ext1 % 2 == 0);
    let holds = all_stable_ext1_even && blocks.iter().all(|b| b.ok);
    Ok(RigidityReport { rigid, blocks, all_stable_ext1_even, holds })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionB<O> {
    pub holds: bool,
    pub stable_sphericals: usize,
    /// Two non-isomorphic stable spherical objects of the same phase.
    pub conflict: Option<(O, O)>,
}

/// Whether any two stable spherical objects among `candidates` with equal phase
/// are isomorphic.
pub fn condition_b<C: CategoryOracle>(cat: &C, z: &CentralCharge, candidates: &[C::Obj]) -> Result<ConditionB<C::Obj>> {
    let mut found: Vec<(Phase, C::Obj)> = Vec::new();
    for x in candidates {
        if cat.is_zero(x) || total(cat.hom_dims(x, x)) != 2 || !is_stable(cat, z, x)? {
            continue;
        }
        let phase = phase_of(cat, z, x)?;
        if let Some((_, y)) = found.iter().find(|(p, y)| *p == phase && !cat.is_isomorphic(x, y)) {
            return Ok(ConditionB { holds: false, stable_sphericals: found.len() + 1, conflict: Some((y.clone(), x.clone())) });
        }
        found.push((phase, x.clone()));
    }
    Ok(ConditionB { holds: true, stable_sphericals: found.len(), conflict: None })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistLemmaReport<O> {
    pub hom_f_e: usize,
    pub hom_e_f: usize,
    pub f_phase: Phase,
    pub f_spherical: bool,
    pub condition_b: bool,
    /// Cohomology `[H^-1, H^0, H^1]` of `T_E^{-1}(F)`.
    pub inverse_twist: [O; 3],
    /// HN factors of `T_E^{-1}(F)` in the original stability condition; applying
    /// `T_E` gives the HN factors of `F` in the twisted one, with the same phases.
    pub hn: Vec<HNFactor<O>>,
    /// `F` has all twisted phases in `[0, 1]`.
    pub window: bool,
    /// `F` is not semistable after twisting; `None` when not applicable.
    pub not_semistable: Option<bool>,
    /// `F` has no twisted HN factor of phase 0; `None` when not applicable.
    pub no_phase_zero_factor: Option<bool>,
    pub holds: bool,
}

/// Checks the conclusions about `F` in the twisted stability condition `T_E sigma`,
/// where the heart sits in phases `[0, 1)` and `E` is stable spherical of phase 0.
///
/// Phases of `F` in `T_E sigma` are those of `T_E^{-1}(F)` in `sigma`, which are read
/// off from its heart cohomology: `H^-1` contributes its HN phases plus one.
pub fn twist_lemma_check<C: TwistOracle>(
    cat: &C,
    z: &CentralCharge,
    e: &C::Obj,
    f: &C::Obj,
    condition_b: bool,
) -> Result<TwistLemmaReport<C::Obj>> {
    let zero = Phase::integer(0);
    let one = Phase::integer(1);
    if total(cat.hom_dims(e, e)) != 2 || !is_stable(cat, z, e)? {
        return Err(Error::HypothesisViolated("E is not stable spherical".into()));
    }
    if phase_of(cat, z, e)? != zero {
        return Err(Error::HypothesisViolated("E does not have phase 0".into()));
    }
    if cat.is_zero(f) {
        return Err(Error::HypothesisViolated("F is zero".into()));
    }
    if hn_filter(cat, z, f)?.factors.iter().any(|x| x.phase < zero || x.phase >= one) {
        return Err(Error::HypothesisViolated("F is not in P([0,1))".into()));
    }
    let hom_f_e = cat.hom_dims(f, e).0;
    if hom_f_e != 0 {
        return Err(Error::HypothesisViolated("Hom(F, E) != 0".into()));
    }
    let hom_e_f = cat.hom_dims(e, f).0;
    let f_phase = phase_of(cat, z, f)?;
    let f_spherical = total(cat.hom_dims(f, f)) == 2;

    let inverse_twist = cat.inverse_twist(e, f)?;
    let mut hn = Vec::new();
    for (shift, h) in [(1, &inverse_twist[0]), (0, &inverse_twist[1]), (-1, &inverse_twist[2])] {
        for x in hn_filter(cat, z, h)?.factors {
            hn.push(HNFactor { phase: x.phase.shifted(shift), object: x.object });
        }
    }
    let window = hn.iter().all(|x| x.phase >= zero && x.phase <= one);
    let cor_applies = f_phase > zero && f_phase < one && hom_e_f != 0;
    let not_semistable = cor_applies.then(|| hn.iter().any(|x| x.phase != hn[0].phase));
    let no_phase_zero_factor = (cor_applies && f_spherical && condition_b).then(|| hn.iter().all(|x| x.phase != zero));
    let holds = window && not_semistable != Some(false) && no_phase_zero_factor != Some(false);
    Ok(TwistLemmaReport {
        hom_f_e,
        hom_e_f,
        f_phase,
        f_spherical,
        condition_b,
        inverse_twist,
        hn,
        window,
        not_semistable,
        no_phase_zero_factor,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactComplex;
    use crate::pimod::{twist_simple, IsoClassCatalog, PiCategory, PiModule};

    const P: u32 = 3;

    fn cat() -> PiCategory {
        PiCategory::new(P)
    }

    fn z(s0: (i64, i64), s1: (i64, i64)) -> CentralCharge {
        CentralCharge::from_simples(ExactComplex::from_ints(s0.0, s0.1), ExactComplex::from_ints(s1.0, s1.1))
    }

    fn s(v: usize) -> PiModule {
        PiModule::simple(v, P)
    }

    /// Dims (1,1) with `A1 = 1`: `S_1` is the only proper submodule.
    fn a_extension() -> PiModule {
        PiModule::from_signed(1, 1, P, [&[vec![1]], &[vec![0]], &[vec![0]], &[vec![0]]]).unwrap()
    }

    /// Dims (1,1) with `B1 = 1`: `S_0` is the only proper submodule.
    fn b_extension() -> PiModule {
        PiModule::from_signed(1, 1, P, [&[vec![0]], &[vec![0]], &[vec![1]], &[vec![0]]]).unwrap()
    }

    #[test]
    fn hn_of_extension() {
        let hn = hn_filter(&cat(), &z((1, 1), (-1, 1)), &a_extension()).unwrap();
        assert_eq!(hn.factors.len(), 2);
        assert_eq!(hn.factors[0].object, s(1));
        assert_eq!(hn.factors[1].object, s(0));
        assert!((hn.factors[0].phase.approx() - 0.75).abs() < 1e-12);
        let hn = hn_filter(&cat(), &z((-1, 1), (1, 1)), &a_extension()).unwrap();
        assert!(hn.is_semistable());
        assert!(is_stable(&cat(), &z((-1, 1), (1, 1)), &a_extension()).unwrap());
    }

    #[test]
    fn degenerate_charge() {
        let r = hn_filter(&cat(), &z((1, 1), (-1, -1)), &a_extension());
        assert!(matches!(r, Err(Error::ChargeDegenerate(_))));
    }

    #[test]
    fn jh_examples() {
        let zz = z((0, 1), (0, 1));
        let half = phase_of(&cat(), &zz, &s(0)).unwrap();
        let two = s(0).power(2);
        let b = jh_blocks(&cat(), &zz, &two, &half).unwrap();
        assert_eq!(b.blocks.len(), 1);
        assert_eq!(b.blocks[0].multiplicity, 2);
        let mixed = s(0).direct_sum(&s(1));
        let b = jh_blocks(&cat(), &zz, &mixed, &half).unwrap();
        assert_eq!(b.blocks.len(), 2);
        assert!(b.certified());
        assert_eq!(b.blocks[0].stable_factor, s(1));
        let sum = b.blocks.iter().fold(KClass::ZERO, |acc, x| acc + x.block.class());
        assert_eq!(sum, mixed.class());
        assert!(matches!(jh_blocks(&cat(), &z((1, 1), (-1, 1)), &a_extension(), &half), Err(Error::NotSemistable)));
    }

    #[test]
    fn mukai_examples() {
        let m = a_extension();
        let subs = cat().subobjects(&m).unwrap();
        let r = mukai_check(&cat(), &m, &subs[1]).unwrap();
        assert_eq!((r.ext1_sub, r.ext1_quotient, r.ext1_middle), (0, 0, 2));
        assert!(r.holds);
        let r = mukai_check(&cat(), &m, &subs[2]).unwrap();
        assert!(r.holds);
        // 0 -> S_0 -> B -> S_1 -> 0 has (S_0, S_1)^0 = 0 as well
        let b = b_extension();
        let subs = cat().subobjects(&b).unwrap();
        assert!(mukai_check(&cat(), &b, &subs[1]).unwrap().holds);
        // a split sequence with a nonzero map from sub to quotient violates the hypothesis
        let split = s(1).direct_sum(&s(1));
        let subs = cat().subobjects(&split).unwrap();
        assert!(matches!(mukai_check(&cat(), &split, &subs[1]), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn chain_examples() {
        let r = inequality_chain_check(&cat(), &z((1, 1), (-1, 1)), &a_extension()).unwrap();
        assert_eq!((r.self_ext1, r.cohomology_sum, r.hn_sum, r.jh_sum), (2, 2, 0, 0));
        assert!(r.holds);
    }

    #[test]
    fn decomposability_examples() {
        let p25 = Phase { window: 2, direction: ExactComplex::from_ints(0, 1) };
        let p05 = Phase { window: 0, direction: ExactComplex::from_ints(0, 1) };
        let one = Phase::integer(1);
        assert_eq!(
            decomposability_certificate(&[p25, one.clone()], 2).unwrap(),
            DecomposabilityVerdict::Decomposable { s: 2 }
        );
        assert_eq!(decomposability_certificate(&[one.clone(), p05], 2).unwrap(), DecomposabilityVerdict::NoCertificate);
        assert_eq!(decomposability_certificate(&[one.clone()], 2).unwrap(), DecomposabilityVerdict::NoCertificate);
        assert!(matches!(decomposability_certificate(&[one.clone(), one], 2), Err(Error::PhasesNotDecreasing)));
    }

    #[test]
    fn rigidity_examples() {
        let zz = z((1, 1), (-1, 1));
        let r = rigidity_spherical_audit(&cat(), &zz, &s(0)).unwrap();
        assert!(r.rigid && r.holds && r.blocks.len() == 1);
        let r = rigidity_spherical_audit(&cat(), &zz, &s(0).power(2)).unwrap();
        assert!(r.holds && r.blocks[0].multiple_of_stable);
    }

    #[test]
    fn twist_lemma_examples() {
        let zz = z((1, 0), (0, 1));
        let r = twist_lemma_check(&cat(), &zz, &s(0), &s(1), true).unwrap();
        assert!(r.window && r.not_semistable.is_none() && r.holds);
        let r = twist_lemma_check(&cat(), &zz, &s(0), &b_extension(), true).unwrap();
        assert_eq!(r.not_semistable, Some(true));
        assert!(r.no_phase_zero_factor.is_none() && r.holds);
        let catalog = IsoClassCatalog::new([2, 2], P).unwrap();
        let b = condition_b(&cat(), &zz, &catalog.classes).unwrap();
        assert!(b.holds);
        let f = twist_simple(&s(1), &s(0)).unwrap().h0;
        let r = twist_lemma_check(&cat(), &zz, &s(0), &f, b.holds).unwrap();
        assert_eq!(r.no_phase_zero_factor, Some(true));
        assert!(r.holds);
        assert!(matches!(twist_lemma_check(&cat(), &zz, &s(0), &a_extension(), true), Err(Error::HypothesisViolated(_))));
    }
}
