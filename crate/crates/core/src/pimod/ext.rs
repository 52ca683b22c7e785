//! The three-term complex computing `Ext^*(M, N)`, cocycle bases, and Yoneda products.
//!
//! `C^0 = C^2 = Hom(M_0, N_0) + Hom(M_1, N_1)` and `C^1 = sum over arrows of
//! Hom(M_s, N_t)`, with
//! `d^0(phi)_alpha = phi_t m_alpha - n_alpha phi_s` and
//! `d^1(psi)_v = sum over alpha with target v of psi_alpha m_alpha* + n_alpha psi_alpha*`.

use serde::Serialize;

use super::{dual_arrow, PiModule, ARROWS};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// An element of `C^k(M, N)`, stored blockwise: two vertex blocks for `k = 0, 2`
/// and four arrow blocks (`A1, A2, B1, B2`) for `k = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtCocycle {
    pub degree: u8,
    #[serde(serialize_with = "ser_blocks")]
    pub blocks: Vec<Mat>,
}

fn ser_blocks<S: serde::Serializer>(b: &[Mat], s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Vec<u32>>> = b.iter().map(Mat::to_rows).collect();
    rows.serialize(s)
}

/// Block shapes `(rows, cols)` of `C^k(M, N)`.
pub fn block_shapes(m: &PiModule, n: &PiModule, degree: u8) -> Vec<(usize, usize)> {
    match degree {
        0 | 2 => (0..2).map(|v| (n.dim(v), m.dim(v))).collect(),
        1 => ARROWS.iter().map(|&(s, t)| (n.dim(t), m.dim(s))).collect(),
        _ => Vec::new(),
    }
}

impl ExtCocycle {
    pub fn zero(m: &PiModule, n: &PiModule, degree: u8) -> Self {
        let p = m.p();
        let blocks = block_shapes(m, n, degree).into_iter().map(|(r, c)| Mat::zeros(r, c, p)).collect();
        Self { degree, blocks }
    }

    /// The identity of `M` as a degree-0 cocycle.
    pub fn identity(m: &PiModule) -> Self {
        Self { degree: 0, blocks: vec![Mat::identity(m.d0(), m.p()), Mat::identity(m.d1(), m.p())] }
    }

    pub fn flat(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data().iter().copied()).collect()
    }

    pub fn from_flat(shapes: &[(usize, usize)], degree: u8, p: u32, flat: &[u32]) -> Self {
        let mut off = 0;
        let blocks = shapes
            .iter()
            .map(|&(r, c)| {
                let b = Mat::from_vec(r, c, p, flat[off..off + r * c].to_vec());
                off += r * c;
                b
            })
            .collect();
        Self { degree, blocks }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { degree: self.degree, blocks: self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, c: u32) -> Self {
        Self { degree: self.degree, blocks: self.blocks.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }
}

fn d0_apply(m: &PiModule, n: &PiModule, phi: &ExtCocycle) -> ExtCocycle {
    let blocks = ARROWS
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| phi.blocks[t].mul(m.arrow(k)).sub(&n.arrow(k).mul(&phi.blocks[s])))
        .collect();
    ExtCocycle { degree: 1, blocks }
}

fn d1_apply(m: &PiModule, n: &PiModule, psi: &ExtCocycle) -> ExtCocycle {
    let p = m.p();
    let mut blocks = vec![Mat::zeros(n.d0(), m.d0(), p), Mat::zeros(n.d1(), m.d1(), p)];
    for (k, &(_, t)) in ARROWS.iter().enumerate() {
        let kd = dual_arrow(k);
        let term = psi.blocks[k].mul(m.arrow(kd)).add(&n.arrow(k).mul(&psi.blocks[kd]));
        blocks[t] = blocks[t].add(&term);
    }
    ExtCocycle { degree: 2, blocks }
}

/// Matrix of a linear map `C^k -> C^{k+1}` built from its values on unit vectors.
fn matrix_of(
    src: &[(usize, usize)],
    dst_dim: usize,
    degree: u8,
    p: u32,
    f: impl Fn(&ExtCocycle) -> ExtCocycle,
) -> Mat {
    let n: usize = src.iter().map(|(r, c)| r * c).sum();
    let mut out = Mat::zeros(dst_dim, n, p);
    let mut unit = vec![0; n];
    for j in 0..n {
        unit[j] = 1;
        let img = f(&ExtCocycle::from_flat(src, degree, p, &unit)).flat();
        for (i, x) in img.into_iter().enumerate() {
            out.set(i, j, x);
        }
        unit[j] = 0;
    }
    out
}

/// Columns of `span` extended by the columns of `candidates` that are independent
/// modulo it; returns the chosen candidate columns.
fn complement(span: &Mat, candidates: &Mat) -> Vec<Vec<u32>> {
    let mut acc = span.clone();
    let mut rank = acc.rank();
    let mut chosen = Vec::new();
    for j in 0..candidates.cols() {
        let col = candidates.column(j);
        let next = acc.hstack(&col);
        let r = next.rank();
        if r > rank {
            acc = next;
            rank = r;
            chosen.push(col.data().to_vec());
        }
    }
    chosen
}

/// The complex `C^0 -> C^1 -> C^2` for a pair of modules, with chosen cocycle
/// representatives of a basis of each `Ext^k`.
#[derive(Clone, Debug)]
pub struct ExtComplex {
    pub m: PiModule,
    pub n: PiModule,
    pub d0: Mat,
    pub d1: Mat,
    bases: [Vec<Vec<u32>>; 3],
}

impl ExtComplex {
    pub fn new(m: &PiModule, n: &PiModule) -> Self {
        assert_eq!(m.p(), n.p(), "modules over different fields");
        let p = m.p();
        let s0 = block_shapes(m, n, 0);
        let s1 = block_shapes(m, n, 1);
        let n0: usize = s0.iter().map(|(r, c)| r * c).sum();
        let n1: usize = s1.iter().map(|(r, c)| r * c).sum();
        let d0 = matrix_of(&s0, n1, 0, p, |phi| d0_apply(m, n, phi));
        let d1 = matrix_of(&s1, n0, 1, p, |psi| d1_apply(m, n, psi));
        let z0 = d0.nullspace();
        let b0 = Mat::zeros(n0, 0, p);
        let basis0 = complement(&b0, &z0);
        let basis1 = complement(&d0.column_space(), &d1.nullspace());
        let basis2 = complement(&d1.column_space(), &Mat::identity(n0, p));
        Self { m: m.clone(), n: n.clone(), d0, d1, bases: [basis0, basis1, basis2] }
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.bases[0].len(), self.bases[1].len(), self.bases[2].len()]
    }

    pub fn shapes(&self, degree: u8) -> Vec<(usize, usize)> {
        block_shapes(&self.m, &self.n, degree)
    }

    /// Cocycle representatives of a basis of `Ext^degree(M, N)`.
    pub fn basis(&self, degree: u8) -> Vec<ExtCocycle> {
        let shapes = self.shapes(degree);
        self.bases[degree as usize]
            .iter()
            .map(|v| ExtCocycle::from_flat(&shapes, degree, self.m.p(), v))
            .collect()
    }

    pub fn coboundary_span(&self, degree: u8) -> Mat {
        let p = self.m.p();
        match degree {
            0 => Mat::zeros(self.d0.cols(), 0, p),
            1 => self.d0.column_space(),
            _ => self.d1.column_space(),
        }
    }

    pub fn is_cocycle(&self, x: &ExtCocycle) -> bool {
        let v = Mat::col_vec(self.m.p(), &x.flat());
        match x.degree {
            0 => self.d0.mul(&v).is_zero(),
            1 => self.d1.mul(&v).is_zero(),
            _ => true,
        }
    }

    /// Coordinates of the class of a cocycle in the chosen basis.
    pub fn class_coords(&self, x: &ExtCocycle) -> Vec<u32> {
        let p = self.m.p();
        let k = x.degree as usize;
        let dim = x.flat().len();
        let mut basis = Mat::zeros(dim, 0, p);
        for b in &self.bases[k] {
            basis = basis.hstack(&Mat::col_vec(p, b));
        }
        let sys = basis.hstack(&self.coboundary_span(x.degree));
        let sol = sys.solve(&Mat::col_vec(p, &x.flat())).expect("argument is a cocycle");
        (0..self.bases[k].len()).map(|i| sol.get(i, 0)).collect()
    }

    pub fn is_coboundary(&self, x: &ExtCocycle) -> bool {
        self.class_coords(x).iter().all(|c| *c == 0)
    }
}

/// `(dim Hom, dim Ext^1, dim Ext^2)` from `M` to `N`.
pub fn ext_dims(m: &PiModule, n: &PiModule) -> (usize, usize, usize) {
    let [a, b, c] = ExtComplex::new(m, n).dims();
    (a, b, c)
}

/// Yoneda product `x . y` of `x in C^p(B, C)` and `y in C^q(A, B)`.
pub fn compose(x: &ExtCocycle, y: &ExtCocycle) -> Result<ExtCocycle> {
    let (p, q) = (x.degree, y.degree);
    if p + q > 2 {
        return Err(Error::DegreeOverflow(p, q));
    }
    let blocks = match (p, q) {
        (0, 0) | (0, 2) | (2, 0) => (0..2).map(|v| x.blocks[v].mul(&y.blocks[v])).collect(),
        (0, 1) => ARROWS.iter().enumerate().map(|(k, &(_, t))| x.blocks[t].mul(&y.blocks[k])).collect(),
        (1, 0) => ARROWS.iter().enumerate().map(|(k, &(s, _))| x.blocks[k].mul(&y.blocks[s])).collect(),
        (1, 1) => {
            let mut out: Vec<Option<Mat>> = vec![None, None];
            for (k, &(_, t)) in ARROWS.iter().enumerate() {
                let term = x.blocks[k].mul(&y.blocks[dual_arrow(k)]);
                out[t] = Some(match out[t].take() {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
            out.into_iter().map(|b| b.expect("both vertices are targets")).collect()
        }
        _ => unreachable!(),
    };
    Ok(ExtCocycle { degree: p + q, blocks })
}
