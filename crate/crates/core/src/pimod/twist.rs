//! Spherical twists by simple modules and realizations of line bundles.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::Serialize;

use super::sub::{hom_basis, quotient_with_projection, restrict};
use super::{ext_dims, ExtComplex, PiModule, ARROWS};
use crate::error::{Error, Result};
use crate::homtable::hom_support_shifted;
use crate::kcharge::{class_of_line_bundle, KClass};
use crate::nfcalc::LineObject;
use crate::linalg::Mat;

/// Cohomology of a twist: modules in degrees -1, 0, 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCohomology {
    pub h_minus1: PiModule,
    pub h0: PiModule,
    pub h1: PiModule,
}

impl TwistCohomology {
    pub fn class(&self) -> KClass {
        self.h0.class() - self.h_minus1.class() - self.h1.class()
    }

    pub fn degrees(&self) -> Vec<(i64, &PiModule)> {
        [(-1, &self.h_minus1), (0, &self.h0), (1, &self.h1)]
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }

    /// `(H, k)` when the object is `H[-k]` for a single module `H`.
    pub fn concentrated(&self) -> Option<(PiModule, i64)> {
        match self.degrees()[..] {
            [(k, m)] => Some((m.clone(), k)),
            _ => None,
        }
    }
}

fn require_simple(s: &PiModule) -> Result<usize> {
    s.is_simple().ok_or_else(|| Error::InvalidModule(format!("twist needs a simple module, got dims {:?}", s.dims())))
}

/// Cohomology of `T_S(M) = Cone(RHom(S, M) (x) S -> M)` for a simple `S`.
///
/// The evaluation map is injective, so `H^{-1} = 0`; `H^1 = S^{dim Ext^2(S, M)}`; and
/// `H^0` is the extension of `S^{dim Ext^1(S, M)}` by `C = coker(ev)` whose class is
/// the image of the basis of `Ext^1(S, M)` in `Ext^1(S, C)`.
pub fn twist_simple(s: &PiModule, m: &PiModule) -> Result<TwistCohomology> {
    let v = require_simple(s)?;
    let p = m.p();
    let homs = hom_basis(s, m);
    let mut image = Mat::zeros(m.dim(v), 0, p);
    for h in &homs {
        image = image.hstack(&h[v]);
    }
    let mut w = [Mat::zeros(m.d0(), 0, p), Mat::zeros(m.d1(), 0, p)];
    w[v] = image.column_space();
    let sub = restrict(m, w);
    let (c, proj) = quotient_with_projection(m, &sub);
    let cx = ExtComplex::new(s, m);
    let ext1 = cx.basis(1);
    let r = ext1.len();
    let dims: [usize; 2] = std::array::from_fn(|u| c.dim(u) + if u == v { r } else { 0 });
    let arrows = std::array::from_fn(|k| {
        let (src, tgt) = ARROWS[k];
        let mut a = Mat::zeros(dims[tgt], dims[src], p);
        a.put(0, 0, c.arrow(k));
        if src == v {
            for (j, psi) in ext1.iter().enumerate() {
                a.put(0, c.dim(src) + j, &proj[tgt].mul(&psi.blocks[k]));
            }
        }
        a
    });
    let h0 = PiModule::new(dims[0], dims[1], p, arrows)?;
    Ok(TwistCohomology { h_minus1: PiModule::zero(p), h0, h1: s.power(cx.dims()[2]) })
}

/// Cohomology of `T_S^{-1}(M) = Cone(M -> RHom(M, S)^* (x) S)[-1]` for a simple `S`.
///
/// `H^{-1} = S^{dim Hom(S, M)}`, `H^1 = 0`, and `H^0` is the extension of
/// `K = ker(M -> Hom(M, S)^* (x) S)` by `S^{dim Ext^1(M, S)}` whose class restricts
/// the basis of `Ext^1(M, S)` to `K`.
pub fn twist_simple_inverse(s: &PiModule, m: &PiModule) -> Result<TwistCohomology> {
    let v = require_simple(s)?;
    let p = m.p();
    let mut funcs = Mat::zeros(0, m.dim(v), p);
    for h in hom_basis(m, s) {
        funcs = funcs.vstack(&h[v]);
    }
    let mut w = [Mat::identity(m.d0(), p), Mat::identity(m.d1(), p)];
    w[v] = funcs.nullspace();
    let k = restrict(m, w.clone());
    let ext1 = ExtComplex::new(m, s).basis(1);
    let r = ext1.len();
    let dims: [usize; 2] = std::array::from_fn(|u| k.module.dim(u) + if u == v { r } else { 0 });
    let arrows = std::array::from_fn(|a| {
        let (src, tgt) = ARROWS[a];
        let off_t = if tgt == v { r } else { 0 };
        let off_s = if src == v { r } else { 0 };
        let mut x = Mat::zeros(dims[tgt], dims[src], p);
        x.put(off_t, off_s, k.module.arrow(a));
        if tgt == v {
            for (j, psi) in ext1.iter().enumerate() {
                x.put(j, off_s, &psi.blocks[a].mul(&w[src]));
            }
        }
        x
    });
    let h0 = PiModule::new(dims[0], dims[1], p, arrows)?;
    let h_minus1 = s.power(hom_basis(s, m).len());
    Ok(TwistCohomology { h_minus1, h0, h1: PiModule::zero(p) })
}

/// `module[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftedModule {
    pub module: PiModule,
    pub shift: i64,
}

impl ShiftedModule {
    pub fn class(&self) -> KClass {
        if self.shift.rem_euclid(2) == 0 {
            self.module.class()
        } else {
            -self.module.class()
        }
    }

    /// Nonzero `dim Hom^i(self, other)`.
    pub fn hom_table(&self, other: &ShiftedModule) -> BTreeMap<i64, u64> {
        let (a, b, c) = ext_dims(&self.module, &other.module);
        let base = self.shift - other.shift;
        [a, b, c]
            .into_iter()
            .enumerate()
            .filter(|(_, d)| *d > 0)
            .map(|(j, d)| (j as i64 + base, d as u64))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Realization {
    pub t: i64,
    pub object: ShiftedModule,
    /// Twists applied to a simple module, innermost first.
    pub path: Vec<String>,
    pub self_ext: (usize, usize, usize),
    /// Graded Hom tables against `O_Z = S_1` and `O_Z(-1)[1] = S_0`, both directions.
    pub hom_tables: BTreeMap<String, BTreeMap<i64, u64>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RealizationOutcome {
    Found(Realization),
    Unsupported { t: i64, depth_bound: usize, dim_bound: usize },
}

impl RealizationOutcome {
    pub fn found(&self) -> Option<&Realization> {
        match self {
            RealizationOutcome::Found(r) => Some(r),
            RealizationOutcome::Unsupported { .. } => None,
        }
    }
}

/// Hom tables of `O(t)[shift]` against the two references, from the closed form.
fn expected_tables(t: i64, shift: i64) -> BTreeMap<String, BTreeMap<i64, u64>> {
    BTreeMap::from([
        ("to O_Z".to_string(), hom_support_shifted(t, shift, 0, 0)),
        ("from O_Z".to_string(), hom_support_shifted(0, 0, t, shift)),
        ("to O_Z(-1)[1]".to_string(), hom_support_shifted(t, shift, -1, 1)),
        ("from O_Z(-1)[1]".to_string(), hom_support_shifted(-1, 1, t, shift)),
    ])
}

fn actual_tables(x: &ShiftedModule, p: u32) -> BTreeMap<String, BTreeMap<i64, u64>> {
    let oz = ShiftedModule { module: PiModule::simple(1, p), shift: 0 };
    let om = ShiftedModule { module: PiModule::simple(0, p), shift: 0 };
    BTreeMap::from([
        ("to O_Z".to_string(), x.hom_table(&oz)),
        ("from O_Z".to_string(), oz.hom_table(x)),
        ("to O_Z(-1)[1]".to_string(), x.hom_table(&om)),
        ("from O_Z(-1)[1]".to_string(), om.hom_table(x)),
    ])
}

/// Searches modules reachable from the simples by at most `depth_bound` twists and
/// inverse twists by simples (keeping only results concentrated in one degree and
/// of total dimension at most `dim_bound`) for a shift of a spherical module whose
/// class is `[O_Z(t)]` and whose Hom tables against `S_1` and `S_0` agree with those
/// of `O_Z(t)` against `O_Z` and `O_Z(-1)[1]`.
pub fn realize_line_bundle(t: i64, p: u32, depth_bound: usize, dim_bound: usize) -> RealizationOutcome {
    let target = class_of_line_bundle(t, 0);
    let expected = expected_tables(t, 0);
    let simples = [PiModule::simple(0, p), PiModule::simple(1, p)];
    let mut queue: VecDeque<(PiModule, Vec<String>)> =
        VecDeque::from([(simples[1].clone(), vec!["S_1".to_string()]), (simples[0].clone(), vec!["S_0".to_string()])]);
    let mut seen: HashSet<Vec<u32>> = queue.iter().map(|(m, _)| m.encode()).collect();
    while let Some((m, path)) = queue.pop_front() {
        let class = m.class();
        let parity = if class == target {
            Some(0)
        } else if class == -target {
            Some(1)
        } else {
            None
        };
        if let Some(parity) = parity {
            if ext_dims(&m, &m) == (1, 0, 1) {
                for shift in (-4..=4).filter(|a: &i64| a.rem_euclid(2) == parity) {
                    let object = ShiftedModule { module: m.clone(), shift };
                    let tables = actual_tables(&object, p);
                    if tables == expected {
                        return RealizationOutcome::Found(Realization {
                            t,
                            object,
                            path,
                            self_ext: (1, 0, 1),
                            hom_tables: tables,
                        });
                    }
                }
            }
        }
        if path.len() > depth_bound {
            continue;
        }
        for (v, s) in simples.iter().enumerate() {
            for inverse in [false, true] {
                let out = if inverse { twist_simple_inverse(s, &m) } else { twist_simple(s, &m) };
                let Ok(out) = out else { continue };
                let Some((h, _)) = out.concentrated() else { continue };
                if h.total_dim() > dim_bound || !seen.insert(h.encode()) {
                    continue;
                }
                let mut next = path.clone();
                next.push(format!("T{}_S{v}", if inverse { "^-1" } else { "" }));
                queue.push_back((h, next));
            }
        }
    }
    RealizationOutcome::Unsupported { t, depth_bound, dim_bound }
}

/// `T_S(X)` or `T_S^{-1}(X)` for a shifted module, when the result is again
/// concentrated in one degree.
pub fn twist_shifted(s: &PiModule, x: &ShiftedModule, inverse: bool) -> Result<Option<ShiftedModule>> {
    let out = if inverse { twist_simple_inverse(s, &x.module)? } else { twist_simple(s, &x.module)? };
    Ok(out.concentrated().map(|(module, k)| ShiftedModule { module, shift: x.shift - k }))
}

/// The line bundle `O(s)[m]` whose class and graded Hom tables against `S_1` and
/// `S_0` agree with those of `x`, if `x` is spherical and `|m| <= max_shift`.
pub fn identify_line(x: &ShiftedModule, max_shift: i64) -> Option<LineObject> {
    if ext_dims(&x.module, &x.module) != (1, 0, 1) {
        return None;
    }
    let c = x.class();
    if c.a.abs() != 1 {
        return None;
    }
    let s = c.b * c.a;
    let parity = if c.a == 1 { 0 } else { 1 };
    let tables = actual_tables(x, x.module.p());
    (-max_shift..=max_shift)
        .filter(|m: &i64| m.rem_euclid(2) == parity)
        .find(|m| expected_tables(s, *m) == tables)
        .map(|m| LineObject { deg: s, shift: m })
}
