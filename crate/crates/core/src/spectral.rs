//! The E2 page of the cohomology spectral sequence for two-term objects, its
//! differential d2, and the resulting Hom dimensions.
//!
//! A two-term object `E` has cohomology `H^0(E)` and `H^1(E)` in the standard heart and
//! is determined by its connecting class `e(E) in Ext^2(H^1, H^0)`. For two such objects
//! `E_2^{p,q} = sum_i Hom^p(H^i(E), H^{i+q}(F))` with `p in {0, 1, 2}` and `|q| <= 1`,
//! and the sequence degenerates at `E_3`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::kcharge::{euler_form, KClass};
use crate::linalg::Mat;
use crate::pimod::{block_shapes, compose, ExtCocycle, ExtComplex, PiModule};

/// An object with cohomology `h0` in degree 0 and `h1` in degree 1, glued by
/// `e in Ext^2(h1, h0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoTermObject {
    #[serde(rename = "H0")]
    h0: PiModule,
    #[serde(rename = "H1")]
    h1: PiModule,
    #[serde(serialize_with = "ser_gluing")]
    e: ExtCocycle,
}

fn ser_gluing<S: serde::Serializer>(e: &ExtCocycle, s: S) -> std::result::Result<S::Ok, S::Error> {
    let blocks: Vec<Vec<Vec<u32>>> = e.blocks.iter().map(Mat::to_rows).collect();
    blocks.serialize(s)
}

impl TwoTermObject {
    pub fn new(h0: PiModule, h1: PiModule, e: ExtCocycle) -> Result<Self> {
        if h0.p() != h1.p() {
            return Err(Error::InvalidModule("cohomology modules over different fields".into()));
        }
        if e.degree != 2 {
            return Err(Error::InvalidModule(format!("connecting class must have degree 2, got {}", e.degree)));
        }
        let shapes: Vec<_> = e.blocks.iter().map(|b| (b.rows(), b.cols())).collect();
        if shapes != block_shapes(&h1, &h0, 2) {
            return Err(Error::InvalidModule("connecting class has the wrong block shapes".into()));
        }
        Ok(Self { h0, h1, e })
    }

    /// `h0 + h1[-1]`.
    pub fn split(h0: PiModule, h1: PiModule) -> Self {
        let e = ExtCocycle::zero(&h1, &h0, 2);
        Self { h0, h1, e }
    }

    /// A module in degree 0.
    pub fn module(m: PiModule) -> Self {
        let p = m.p();
        Self::split(m, PiModule::zero(p))
    }

    /// One object for each element of `Ext^2(h1, h0)`, in the coordinates of the chosen basis.
    pub fn all_gluings(h0: &PiModule, h1: &PiModule) -> Vec<Self> {
        let basis = ExtComplex::new(h1, h0).basis(2);
        let p = h0.p() as u64;
        let count = p.pow(basis.len() as u32);
        (0..count)
            .map(|mut code| {
                let mut e = ExtCocycle::zero(h1, h0, 2);
                for b in &basis {
                    let c = (code % p) as u32;
                    code /= p;
                    e = e.add(&b.scale(c));
                }
                Self { h0: h0.clone(), h1: h1.clone(), e }
            })
            .collect()
    }

    pub fn h0(&self) -> &PiModule {
        &self.h0
    }

    pub fn h1(&self) -> &PiModule {
        &self.h1
    }

    pub fn e(&self) -> &ExtCocycle {
        &self.e
    }

    pub fn p(&self) -> u32 {
        self.h0.p()
    }

    pub fn class(&self) -> KClass {
        self.h0.class() - self.h1.class()
    }

    pub fn is_zero(&self) -> bool {
        self.h0.is_zero() && self.h1.is_zero()
    }

    fn cohomology(&self, i: i64) -> Option<&PiModule> {
        match i {
            0 => Some(&self.h0),
            1 => Some(&self.h1),
            _ => None,
        }
    }

    /// The connecting class out of `H^i`, when `H^{i-1}` exists.
    fn connecting(&self, i: i64) -> Option<&ExtCocycle> {
        (i == 1).then_some(&self.e)
    }
}

#[derive(Deserialize)]
struct TwoTermJson {
    #[serde(rename = "H0")]
    h0: PiModule,
    #[serde(rename = "H1")]
    h1: PiModule,
    #[serde(default)]
    e: Option<Vec<Vec<Vec<i64>>>>,
}

impl<'de> Deserialize<'de> for TwoTermObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TwoTermJson::deserialize(d)?;
        let Some(blocks) = raw.e else {
            return Ok(Self::split(raw.h0, raw.h1));
        };
        let p = raw.h0.p();
        let shapes = block_shapes(&raw.h1, &raw.h0, 2);
        if blocks.len() != shapes.len() {
            return Err(serde::de::Error::custom("e needs one block per vertex"));
        }
        let mut mats = Vec::new();
        for (rows, (r, c)) in blocks.iter().zip(shapes) {
            let ok = rows.len() == r && rows.iter().all(|row| row.len() == c) || (r == 0 || c == 0) && rows.iter().all(Vec::is_empty);
            if !ok {
                return Err(serde::de::Error::custom(format!("e block must be {r}x{c}")));
            }
            mats.push(Mat::from_rows(r, c, p, rows));
        }
        Self::new(raw.h0, raw.h1, ExtCocycle { degree: 2, blocks: mats }).map_err(serde::de::Error::custom)
    }
}

/// An element of `E_2^{p,q}(E, F)`: one cocycle `f_i: H^i(E) -> H^{i+q}(F)` of degree
/// `p` for each `i` where both ends exist.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Element {
    pub p: u8,
    pub q: i64,
    pub parts: BTreeMap<i64, ExtCocycle>,
}

impl E2Element {
    pub fn zero(e: &TwoTermObject, f: &TwoTermObject, p: u8, q: i64) -> Self {
        let parts = if p > 2 {
            BTreeMap::new()
        } else {
            components(e, f, q)
                .into_iter()
                .map(|i| (i, ExtCocycle::zero(&e.h_at(i), &f.h_at(i + q), p)))
                .collect()
        };
        Self { p, q, parts }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(ExtCocycle::is_zero)
    }
}

impl TwoTermObject {
    fn h_at(&self, i: i64) -> PiModule {
        self.cohomology(i).cloned().expect("degree in range")
    }
}

/// Indices `i` with both `H^i(E)` and `H^{i+q}(F)` present.
fn components(e: &TwoTermObject, f: &TwoTermObject, q: i64) -> Vec<i64> {
    (0..2).filter(|i| e.cohomology(*i).is_some() && f.cohomology(i + q).is_some()).collect()
}

/// `d_2^{p,q}(sum f_i) = sum_i ((-1)^{p+q} f_{i-1} . e_i(E) - e_{i+q}(F) . f_i)`.
///
/// The target `E_2^{p+2,q-1}` vanishes unless `p = 0`; then the zero element is returned.
pub fn d2(e: &TwoTermObject, f: &TwoTermObject, x: &E2Element) -> Result<E2Element> {
    let (p, q) = (x.p, x.q);
    let mut out = E2Element::zero(e, f, p + 2, q - 1);
    if p + 2 > 2 {
        return Ok(out);
    }
    let field = e.p();
    let sign = if (p as i64 + q).rem_euclid(2) == 0 { 1 } else { field - 1 };
    for (i, slot) in out.parts.iter_mut() {
        let i = *i;
        if let (Some(prev), Some(conn)) = (x.parts.get(&(i - 1)), e.connecting(i)) {
            *slot = slot.add(&compose(prev, conn)?.scale(sign));
        }
        if let (Some(cur), Some(conn)) = (x.parts.get(&i), f.connecting(i + q)) {
            *slot = slot.add(&compose(conn, cur)?.scale(field - 1));
        }
    }
    Ok(out)
}

/// Dimensions of `E_2^{p,q}(E, F)`, including zeros for `p in {0, 1, 2}`, `|q| <= 1`.
pub fn e2_page(e: &TwoTermObject, f: &TwoTermObject) -> BTreeMap<(u8, i64), usize> {
    let mut page = BTreeMap::new();
    for q in -1..=1 {
        let mut dims = [0usize; 3];
        for i in components(e, f, q) {
            let d = ExtComplex::new(&e.h_at(i), &f.h_at(i + q)).dims();
            for p in 0..3 {
                dims[p] += d[p];
            }
        }
        for p in 0..3u8 {
            page.insert((p, q), dims[p as usize]);
        }
    }
    page
}

/// Rank of `d_2^{0,q}: E_2^{0,q} -> E_2^{2,q-1}`.
pub fn d2_rank(e: &TwoTermObject, f: &TwoTermObject, q: i64) -> Result<usize> {
    let field = e.p();
    let targets: Vec<(i64, ExtComplex)> = components(e, f, q - 1)
        .into_iter()
        .map(|i| (i, ExtComplex::new(&e.h_at(i), &f.h_at(i + q - 1))))
        .collect();
    let rows: usize = targets.iter().map(|(_, c)| c.dims()[2]).sum();
    let mut mat = Mat::zeros(rows, 0, field);
    for i in components(e, f, q) {
        for b in ExtComplex::new(&e.h_at(i), &f.h_at(i + q)).basis(0) {
            let mut x = E2Element::zero(e, f, 0, q);
            x.parts.insert(i, b);
            let y = d2(e, f, &x)?;
            let coords: Vec<u32> = targets.iter().flat_map(|(j, c)| c.class_coords(&y.parts[j])).collect();
            mat = mat.hstack(&Mat::col_vec(field, &coords));
        }
    }
    Ok(mat.rank())
}

/// The `E_2` and `E_3` pages and the Hom dimensions they compute.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E3Table {
    #[serde(serialize_with = "ser_page")]
    pub e2: BTreeMap<(u8, i64), usize>,
    /// `q -> rank d_2^{0,q}`.
    pub d2_ranks: BTreeMap<i64, usize>,
    #[serde(serialize_with = "ser_page")]
    pub e3: BTreeMap<(u8, i64), usize>,
    /// `n -> dim Hom^n(E, F)` for `n in -1..=3`.
    pub hom: BTreeMap<i64, usize>,
}

fn ser_page<S: serde::Serializer>(page: &BTreeMap<(u8, i64), usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let keyed: BTreeMap<String, usize> = page.iter().map(|((p, q), d)| (format!("{p},{q}"), *d)).collect();
    keyed.serialize(s)
}

pub fn e3_table(e: &TwoTermObject, f: &TwoTermObject) -> Result<E3Table> {
    if e.p() != f.p() {
        return Err(Error::InvalidModule("objects over different fields".into()));
    }
    let e2 = e2_page(e, f);
    let mut d2_ranks = BTreeMap::new();
    for q in -1..=1 {
        d2_ranks.insert(q, d2_rank(e, f, q)?);
    }
    let rank = |q: i64| d2_ranks.get(&q).copied().unwrap_or(0);
    let e3: BTreeMap<(u8, i64), usize> = e2
        .iter()
        .map(|(&(p, q), &d)| {
            let d3 = match p {
                0 => d - rank(q),
                2 => d - rank(q + 1),
                _ => d,
            };
            ((p, q), d3)
        })
        .collect();
    let mut hom: BTreeMap<i64, usize> = (-1..=3).map(|n| (n, 0)).collect();
    for (&(p, q), &d) in &e3 {
        *hom.entry(p as i64 + q).or_default() += d;
    }
    Ok(E3Table { e2, d2_ranks, e3, hom })
}

/// `n -> dim Hom^n(E, F)` from the `E_3` page.
pub fn hom_dims_via_e3(e: &TwoTermObject, f: &TwoTermObject) -> Result<BTreeMap<i64, usize>> {
    Ok(e3_table(e, f)?.hom)
}

/// Total self-Hom dimension equals 2.
pub fn sphericality_test(e: &TwoTermObject) -> Result<bool> {
    Ok(hom_dims_via_e3(e, e)?.values().sum::<usize>() == 2)
}

/// `(id_{H^0}, id_{H^1})` lies in the kernel of `d_2^{0,0}(E, E)`.
pub fn identity_in_kernel(e: &TwoTermObject) -> Result<bool> {
    let mut x = E2Element::zero(e, e, 0, 0);
    for (i, part) in x.parts.iter_mut() {
        *part = ExtCocycle::identity(&e.h_at(*i));
    }
    let y = d2(e, e, &x)?;
    let cx = ExtComplex::new(e.h1(), e.h0());
    Ok(y.parts.values().all(|c| cx.is_coboundary(c) || c.is_zero()))
}

/// Alternating sum of the Hom table against the Euler form of the classes.
pub fn euler_consistent(e: &TwoTermObject, f: &TwoTermObject) -> Result<bool> {
    let hom = hom_dims_via_e3(e, f)?;
    let alt: i64 = hom.iter().map(|(n, d)| if n.rem_euclid(2) == 0 { *d as i64 } else { -(*d as i64) }).sum();
    Ok(alt == euler_form(e.class(), f.class()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubquotientReport {
    pub q: i64,
    pub hom_dim: usize,
    pub kernel: usize,
    pub cokernel: usize,
    /// `dim E_2^{1,q}`, counted when `E = F`.
    pub middle: Option<usize>,
    pub holds: bool,
}

/// `dim Hom^{1+q}(E, F) >= dim Ker d_2^{0,q+1} + dim Coker d_2^{0,q}`, plus
/// `dim E_2^{1,q}` when `E = F`.
pub fn subquotient_inequality_check(e: &TwoTermObject, f: &TwoTermObject, q: i64) -> Result<SubquotientReport> {
    Ok(subquotient_from_table(&e3_table(e, f)?, e == f, q))
}

/// [`subquotient_inequality_check`] on a precomputed table; `same` says whether `E = F`.
pub fn subquotient_from_table(t: &E3Table, same: bool, q: i64) -> SubquotientReport {
    let page = |p: u8, q: i64| t.e2.get(&(p, q)).copied().unwrap_or(0);
    let rank = |q: i64| t.d2_ranks.get(&q).copied().unwrap_or(0);
    let kernel = page(0, q + 1) - rank(q + 1);
    let cokernel = page(2, q - 1) - rank(q);
    let middle = same.then(|| page(1, q));
    let hom_dim = t.hom.get(&(1 + q)).copied().unwrap_or(0);
    let holds = hom_dim >= kernel + cokernel + middle.unwrap_or(0);
    SubquotientReport { q, hom_dim, kernel, cokernel, middle, holds }
}
