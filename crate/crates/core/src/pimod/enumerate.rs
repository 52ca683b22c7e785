//! Canonical forms, isomorphism classes at small dimension, and random modules.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::Rng;

use super::{PiModule, ARROWS};
use crate::error::{Error, Result};
use crate::linalg::{all_matrices, Mat};

/// Orbits larger than this are not enumerated.
const MAX_GROUP_ORDER: u64 = 2_000_000;

fn gl_order(n: usize, p: u32) -> u64 {
    let q = p as u64;
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

fn primitive_root(p: u32) -> u32 {
    (1..p)
        .find(|&g| {
            let mut x = 1u64;
            (1..p - 1).all(|_| {
                x = x * g as u64 % p as u64;
                x != 1
            })
        })
        .unwrap_or(1)
}

/// Generators of `GL_n(F_p)` with their inverses.
fn gl_generators(n: usize, p: u32) -> Vec<(Mat, Mat)> {
    let mut out = Vec::new();
    let w = primitive_root(p);
    for i in 0..n {
        let mut d = Mat::identity(n, p);
        d.set(i, i, w);
        if w != 1 {
            out.push((d.clone(), d.inverse().expect("diagonal unit")));
        }
        for j in 0..n {
            if i != j {
                let mut e = Mat::identity(n, p);
                e.set(i, j, 1);
                out.push((e.clone(), e.inverse().expect("transvection")));
            }
        }
    }
    out
}

/// Generators `(g, g^{-1})` of `GL(d0) x GL(d1)`.
fn group_generators(dims: [usize; 2], p: u32) -> Vec<([Mat; 2], [Mat; 2])> {
    let id = [Mat::identity(dims[0], p), Mat::identity(dims[1], p)];
    let mut out = Vec::new();
    for v in 0..2 {
        for (g, gi) in gl_generators(dims[v], p) {
            let mut a = id.clone();
            let mut b = id.clone();
            a[v] = g;
            b[v] = gi;
            out.push((a, b));
        }
    }
    out
}

fn orbit(m: &PiModule, gens: &[([Mat; 2], [Mat; 2])]) -> Vec<PiModule> {
    let mut seen = HashSet::from([m.encode()]);
    let mut queue = VecDeque::from([m.clone()]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for (g, gi) in gens {
            let y = x.transform(g, gi);
            if seen.insert(y.encode()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

fn check_group(dims: [usize; 2], p: u32) -> Result<()> {
    let order = gl_order(dims[0], p).saturating_mul(gl_order(dims[1], p));
    if order > MAX_GROUP_ORDER {
        return Err(Error::TooLarge(format!("base-change group of order {order} for dims {dims:?}")));
    }
    Ok(())
}

/// Lexicographically smallest encoding in the base-change orbit: equal keys iff
/// isomorphic modules.
pub fn canonical_key(m: &PiModule) -> Result<Vec<u32>> {
    check_group(m.dims(), m.p())?;
    let gens = group_generators(m.dims(), m.p());
    Ok(orbit(m, &gens).iter().map(PiModule::encode).min().expect("orbit contains m"))
}

/// Matrix of the linear map `(X, Y) -> (F(X, Y), G(X, Y))` built column by column.
fn linear_system(unknowns: &[(usize, usize)], p: u32, f: impl Fn(&[Mat]) -> Vec<Mat>) -> Mat {
    let n: usize = unknowns.iter().map(|(r, c)| r * c).sum();
    let split = |flat: &[u32]| -> Vec<Mat> {
        let mut off = 0;
        unknowns
            .iter()
            .map(|&(r, c)| {
                let m = Mat::from_vec(r, c, p, flat[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect()
    };
    let mut cols = Vec::new();
    let mut unit = vec![0; n];
    for j in 0..n {
        unit[j] = 1;
        let img: Vec<u32> = f(&split(&unit)).iter().flat_map(|m| m.data().to_vec()).collect();
        cols.push(img);
        unit[j] = 0;
    }
    let rows = cols.first().map_or(0, Vec::len);
    let mut out = Mat::zeros(rows, n, p);
    for (j, c) in cols.iter().enumerate() {
        for (i, x) in c.iter().enumerate() {
            out.set(i, j, *x);
        }
    }
    out
}

/// Basis (columns, flattened `B1, B2`) of the `B` solving both relations for fixed `A`.
fn b_solutions(dims: [usize; 2], a: &[Mat; 2], p: u32) -> Mat {
    let shape = (dims[0], dims[1]);
    linear_system(&[shape, shape], p, |b| {
        vec![a[0].mul(&b[0]).add(&a[1].mul(&b[1])), b[0].mul(&a[0]).add(&b[1].mul(&a[1]))]
    })
    .nullspace()
}

/// Basis of the `A` solving both relations for fixed `B`.
fn a_solutions(dims: [usize; 2], b: &[Mat; 2], p: u32) -> Mat {
    let shape = (dims[1], dims[0]);
    linear_system(&[shape, shape], p, |a| {
        vec![a[0].mul(&b[0]).add(&a[1].mul(&b[1])), b[0].mul(&a[0]).add(&b[1].mul(&a[1]))]
    })
    .nullspace()
}

fn combine(basis: &Mat, coeffs: &[u32]) -> Vec<u32> {
    let p = basis.p();
    (0..basis.rows())
        .map(|i| {
            coeffs.iter().enumerate().fold(0u64, |acc, (j, c)| (acc + *c as u64 * basis.get(i, j) as u64) % p as u64)
                as u32
        })
        .collect()
}

fn assemble(dims: [usize; 2], p: u32, a: [Mat; 2], b_flat: &[u32]) -> PiModule {
    let n = dims[0] * dims[1];
    let b1 = Mat::from_vec(dims[0], dims[1], p, b_flat[..n].to_vec());
    let b2 = Mat::from_vec(dims[0], dims[1], p, b_flat[n..].to_vec());
    let [a1, a2] = a;
    PiModule::from_parts_unchecked(dims, p, [a1, a2, b1, b2])
}

/// Every nilpotent module with the given dimension vector (not up to isomorphism).
fn all_modules(dims: [usize; 2], p: u32) -> Vec<PiModule> {
    let mut out = Vec::new();
    let a_shape = (dims[1], dims[0]);
    let a_list: Vec<Mat> = all_matrices(a_shape.0, a_shape.1, p).collect();
    for a1 in &a_list {
        for a2 in &a_list {
            let basis = b_solutions(dims, &[a1.clone(), a2.clone()], p);
            let k = basis.cols() as u32;
            for mut code in 0..(p as u64).pow(k) {
                let coeffs: Vec<u32> = (0..k)
                    .map(|_| {
                        let c = (code % p as u64) as u32;
                        code /= p as u64;
                        c
                    })
                    .collect();
                let m = assemble(dims, p, [a1.clone(), a2.clone()], &combine(&basis, &coeffs));
                if m.is_nilpotent() {
                    out.push(m);
                }
            }
        }
    }
    out
}

/// Representatives of the isomorphism classes with the given dimension vector, each
/// in canonical form, sorted by encoding.
pub fn iso_classes(dims: [usize; 2], p: u32) -> Result<Vec<PiModule>> {
    check_group(dims, p)?;
    let count = (p as u64).checked_pow((4 * dims[0] * dims[1]) as u32);
    if count.is_none_or(|c| c > 50_000_000) {
        return Err(Error::TooLarge(format!("module enumeration at dims {dims:?}")));
    }
    let gens = group_generators(dims, p);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut reps = Vec::new();
    for m in all_modules(dims, p) {
        if seen.contains(&m.encode()) {
            continue;
        }
        let orb = orbit(&m, &gens);
        let rep = orb.iter().min_by_key(|x| x.encode()).expect("nonempty orbit").clone();
        seen.extend(orb.iter().map(PiModule::encode));
        reps.push(rep);
    }
    reps.sort_by_key(PiModule::encode);
    Ok(reps)
}

/// All isomorphism classes of nonzero modules with dimension vector at most `max`.
#[derive(Clone, Debug)]
pub struct IsoClassCatalog {
    pub p: u32,
    pub classes: Vec<PiModule>,
    index: HashMap<Vec<u32>, usize>,
}

impl IsoClassCatalog {
    pub fn new(max: [usize; 2], p: u32) -> Result<Self> {
        let mut classes = Vec::new();
        for d0 in 0..=max[0] {
            for d1 in 0..=max[1] {
                if d0 + d1 > 0 {
                    classes.extend(iso_classes([d0, d1], p)?);
                }
            }
        }
        let index = classes.iter().enumerate().map(|(i, m)| (m.encode(), i)).collect();
        Ok(Self { p, classes, index })
    }

    /// Index of the class of `m`, if it lies in the catalog.
    pub fn find(&self, m: &PiModule) -> Option<usize> {
        let key = canonical_key(m).ok()?;
        self.index.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn sparse_random<R: Rng>(rows: usize, cols: usize, p: u32, rng: &mut R) -> Mat {
    let data = (0..rows * cols).map(|_| if rng.random_bool(0.5) { rng.random_range(1..p) } else { 0 }).collect();
    Mat::from_vec(rows, cols, p, data)
}

/// A random nilpotent module: one pair of arrows is sparse random, the other a
/// random solution of the relations; falls back to zero for the second pair.
pub fn random_module<R: Rng>(dims: [usize; 2], p: u32, rng: &mut R) -> PiModule {
    let n = dims[0] * dims[1];
    for _ in 0..20 {
        let a_first = rng.random_bool(0.5);
        let (fixed_shape, other_shape) =
            if a_first { ((dims[1], dims[0]), (dims[0], dims[1])) } else { ((dims[0], dims[1]), (dims[1], dims[0])) };
        let fixed = [
            sparse_random(fixed_shape.0, fixed_shape.1, p, rng),
            sparse_random(fixed_shape.0, fixed_shape.1, p, rng),
        ];
        let basis = if a_first { b_solutions(dims, &fixed, p) } else { a_solutions(dims, &fixed, p) };
        let coeffs: Vec<u32> = (0..basis.cols()).map(|_| rng.random_range(0..p)).collect();
        let flat = combine(&basis, &coeffs);
        let other = [
            Mat::from_vec(other_shape.0, other_shape.1, p, flat[..n].to_vec()),
            Mat::from_vec(other_shape.0, other_shape.1, p, flat[n..].to_vec()),
        ];
        let [f1, f2] = fixed;
        let [o1, o2] = other;
        let arrows = if a_first { [f1, f2, o1, o2] } else { [o1, o2, f1, f2] };
        let m = PiModule::from_parts_unchecked(dims, p, arrows);
        if m.is_nilpotent() {
            return m;
        }
    }
    let arrows = std::array::from_fn(|k| {
        let (s, t) = ARROWS[k];
        if k < 2 {
            sparse_random(dims[t], dims[s], p, rng)
        } else {
            Mat::zeros(dims[t], dims[s], p)
        }
    });
    PiModule::from_parts_unchecked(dims, p, arrows)
}
