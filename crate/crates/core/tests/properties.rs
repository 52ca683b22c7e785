use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cy2lab::exact::ExactComplex;
use cy2lab::heartlab::{hn_filter, jh_blocks, CategoryOracle};
use cy2lab::homtable::{hom_dims_line, vanishing_predicate};
use cy2lab::kcharge::{euler_form, sign_and_p, twist_on_k, CentralCharge, KClass};
use cy2lab::nfcalc::{twist_line_on_line, word_on_k, AutoWord, LineObject, NormalForm};
use cy2lab::pimod::{ext_dims, ExtComplex, random_module, twist_shifted, PiCategory, PiModule, ShiftedModule, SubModule};
use cy2lab::reduction::{reduce_pair, LinePair};
use cy2lab::spectral::{
    d2, e2_page, euler_consistent, hom_dims_via_e3, identity_in_kernel, E2Element, TwoTermObject,
};
use cy2lab::Result;

const P: u32 = 3;

fn module(d0: usize, d1: usize, seed: u64) -> PiModule {
    random_module([d0, d1], P, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn charge(a: (i64, i64), b: (i64, i64)) -> CentralCharge {
    CentralCharge::from_simples(ExactComplex::from_ints(a.0, a.1), ExactComplex::from_ints(b.0, b.1))
}

fn spherical() -> impl Strategy<Value = KClass> {
    (prop_oneof![Just(1i64), Just(-1)], -10i64..=10).prop_map(|(a, b)| KClass::new(a, b))
}

fn class() -> impl Strategy<Value = KClass> {
    (-10i64..=10, -10i64..=10).prop_map(|(a, b)| KClass::new(a, b))
}

/// The module category with subobjects listed in reverse.
struct Reversed(PiCategory);

impl CategoryOracle for Reversed {
    type Obj = PiModule;
    type Sub = SubModule;

    fn subobjects(&self, x: &PiModule) -> Result<Vec<SubModule>> {
        let mut subs = self.0.subobjects(x)?;
        subs.reverse();
        Ok(subs)
    }
    fn sub_object(&self, s: &SubModule) -> PiModule {
        self.0.sub_object(s)
    }
    fn quotient(&self, x: &PiModule, s: &SubModule) -> PiModule {
        self.0.quotient(x, s)
    }
    fn hom_dims(&self, x: &PiModule, y: &PiModule) -> (usize, usize, usize) {
        self.0.hom_dims(x, y)
    }
    fn direct_sum(&self, x: &PiModule, y: &PiModule) -> PiModule {
        self.0.direct_sum(x, y)
    }
    fn zero(&self) -> PiModule {
        self.0.zero()
    }
    fn is_zero(&self, x: &PiModule) -> bool {
        self.0.is_zero(x)
    }
    fn is_isomorphic(&self, x: &PiModule, y: &PiModule) -> bool {
        self.0.is_isomorphic(x, y)
    }
    fn kclass(&self, x: &PiModule) -> KClass {
        self.0.kclass(x)
    }
    fn length(&self, x: &PiModule) -> usize {
        self.0.length(x)
    }
    fn order_key(&self, x: &PiModule) -> Result<Vec<u64>> {
        self.0.order_key(x)
    }
}

proptest! {
    #[test]
    fn euler_form_symmetric_even_diagonal(u in class(), v in class()) {
        prop_assert_eq!(euler_form(u, v), euler_form(v, u));
        prop_assert_eq!(euler_form(u, u) % 2, 0);
    }

    #[test]
    fn twist_on_k_is_an_involution_fixing_points(e in spherical(), f in class()) {
        let tf = twist_on_k(e, f).unwrap();
        prop_assert_eq!(twist_on_k(e, tf).unwrap(), f);
        prop_assert_eq!(twist_on_k(e, KClass::O_X).unwrap(), KClass::O_X);
    }

    #[test]
    fn twist_preserves_p(e in spherical(), f in spherical()) {
        let (_, p) = sign_and_p(e, f).unwrap();
        let (_, p2) = sign_and_p(e, twist_on_k(e, f).unwrap()).unwrap();
        prop_assert_eq!(p, p2);
    }

    #[test]
    fn hom_table_translation_invariant(s in -20i64..=20, t in -20i64..=20, k in -20i64..=20) {
        prop_assert_eq!(hom_dims_line(s, t), hom_dims_line(s + k, t + k));
    }

    #[test]
    fn hom_table_duality_and_euler(s in -20i64..=20, t in -20i64..=20) {
        let h = hom_dims_line(s, t);
        prop_assert_eq!(h.euler(), 2);
        prop_assert_eq!(h.get(2), hom_dims_line(t, s).get(0));
        for i in 0..3 {
            prop_assert_eq!(vanishing_predicate(i, s, t).unwrap(), h.get(i) == 0);
        }
    }

    #[test]
    fn line_twists_match_k_action(t in -8i64..=8, off in -1i64..=1, n in -3i64..=3) {
        let s = t + off;
        let out = twist_line_on_line(t, s, n).unwrap();
        let input = LineObject::new(s, n).class();
        prop_assert_eq!(out.class(), twist_on_k(LineObject::new(t, 0).class(), input).unwrap());
    }

    #[test]
    fn tensor_composite_on_classes(v in -8i64..=8, deg in -12i64..=12, shift in -3i64..=3) {
        let x = LineObject::new(deg, shift);
        let w = AutoWord::tensor_minus_two(v);
        prop_assert_eq!(word_on_k(&w, x.class()), LineObject::new(deg - 2, shift).class());
    }

    #[test]
    fn length_invariant_under_shift_and_tensor(v in -5i64..=5, f0 in 0u64..3, g0 in 0u64..3, f1 in 0u64..3, n in -4i64..=4, k in -4i64..=4) {
        prop_assume!(f0 + g0 + f1 > 0);
        let nf = NormalForm::new(v, [(0, (f0, g0)), (1, (f1, 0))].into_iter().filter(|(_, c)| *c != (0, 0)).collect()).unwrap();
        prop_assert_eq!(nf.shift(n).length(), nf.length());
        prop_assert_eq!(nf.tensor_line(k).0.length(), nf.length());
    }

    #[test]
    fn reduction_reaches_standard_pair(m in -10i64..=10, shift in -5i64..=5, flip in any::<bool>()) {
        let pair = if flip {
            LinePair::new(LineObject::new(m, shift), LineObject::new(m - 1, shift + 1))
        } else {
            LinePair::new(LineObject::new(m, shift), LineObject::new(m + 1, shift - 1))
        };
        let trace = reduce_pair(&pair).unwrap();
        prop_assert!(trace.certify().is_ok());
        prop_assert!(trace.steps.iter().all(|s| s.after.is_concentrated()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn module_duality_and_euler(d in (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3), seed in any::<u64>()) {
        let m = module(d.0, d.1, seed);
        let n = module(d.2, d.3, seed.wrapping_add(1));
        prop_assert!(m.is_nilpotent() && n.is_nilpotent());
        let (a, b, c) = ext_dims(&m, &n);
        prop_assert_eq!(c, ext_dims(&n, &m).0);
        prop_assert_eq!(a as i64 - b as i64 + c as i64, euler_form(m.class(), n.class()));
    }

    #[test]
    fn twist_preserves_graded_homs(d in (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2), seed in any::<u64>(), v in 0usize..2, inverse in any::<bool>()) {
        let s = PiModule::simple(v, P);
        let m = ShiftedModule { module: module(d.0, d.1, seed), shift: 0 };
        let n = ShiftedModule { module: module(d.2, d.3, seed ^ 0x5a5a), shift: 0 };
        let (Some(tm), Some(tn)) = (twist_shifted(&s, &m, inverse).unwrap(), twist_shifted(&s, &n, inverse).unwrap()) else {
            return Ok(());
        };
        prop_assert!(tm.module.is_nilpotent() && tn.module.is_nilpotent());
        prop_assert_eq!(tm.hom_table(&tn), m.hom_table(&n));
    }

    #[test]
    fn hn_independent_of_enumeration_order(d0 in 0usize..=2, d1 in 0usize..=2, seed in any::<u64>(), a in (-3i64..=3, 1i64..=3), b in (-3i64..=3, 1i64..=3)) {
        prop_assume!(d0 + d1 > 0);
        let m = module(d0, d1, seed);
        let z = charge(a, b);
        let cat = PiCategory::new(P);
        let (Ok(fwd), Ok(rev)) = (hn_filter(&cat, &z, &m), hn_filter(&Reversed(cat), &z, &m)) else {
            return Ok(());
        };
        prop_assert_eq!(fwd.phases(), rev.phases());
        for (x, y) in fwd.factors.iter().zip(&rev.factors) {
            prop_assert!(cat.is_isomorphic(&x.object, &y.object));
        }
        for w in fwd.factors.windows(2) {
            prop_assert!(w[0].phase > w[1].phase);
        }
        for (i, x) in fwd.factors.iter().enumerate() {
            for y in &fwd.factors[i + 1..] {
                prop_assert_eq!(ext_dims(&x.object, &y.object).0, 0);
            }
        }
        let total = fwd.factors.iter().fold(KClass::ZERO, |acc, f| acc + f.object.class());
        prop_assert_eq!(total, m.class());
        for f in &fwd.factors {
            let blocks = jh_blocks(&cat, &z, &f.object, &f.phase).unwrap();
            prop_assert!(blocks.certified());
            let sum = blocks.blocks.iter().fold(KClass::ZERO, |acc, b| acc + b.block.class());
            prop_assert_eq!(sum, f.object.class());
        }
    }

    #[test]
    fn spectral_invariants(d in (0usize..=1, 0usize..=1, 0usize..=1, 0usize..=1), seeds in (any::<u64>(), any::<u64>()), pick in (any::<usize>(), any::<usize>())) {
        let mk = |h0: PiModule, h1: PiModule, k: usize| {
            let all = TwoTermObject::all_gluings(&h0, &h1);
            all[k % all.len()].clone()
        };
        let e = mk(module(d.0, d.1, seeds.0), module(d.1, d.0, seeds.0 ^ 1), pick.0);
        let f = mk(module(d.2, d.3, seeds.1), module(d.3, d.2, seeds.1 ^ 1), pick.1);
        prop_assert!(euler_consistent(&e, &f).unwrap());
        let ef = hom_dims_via_e3(&e, &f).unwrap();
        let fe = hom_dims_via_e3(&f, &e).unwrap();
        for n in -1..=3 {
            prop_assert_eq!(ef.get(&n).copied().unwrap_or(0), fe.get(&(2 - n)).copied().unwrap_or(0));
        }
        prop_assert!(e2_page(&e, &f).iter().all(|(&(p, _), &dim)| p <= 2 || dim == 0));
        if !e.is_zero() {
            prop_assert!(identity_in_kernel(&e).unwrap());
        }
        let h = |x: &TwoTermObject, i: i64| if i == 0 { x.h0().clone() } else { x.h1().clone() };
        let mut coeff = seeds.0;
        for q in -1..=1 {
            let mut x = E2Element::zero(&e, &f, 0, q);
            for (i, part) in x.parts.iter_mut() {
                for b in ExtComplex::new(&h(&e, *i), &h(&f, i + q)).basis(0) {
                    *part = part.add(&b.scale((coeff % 3) as u32));
                    coeff /= 3;
                }
            }
            let once = d2(&e, &f, &x).unwrap();
            prop_assert!(d2(&e, &f, &once).unwrap().is_zero());
        }
    }
}
