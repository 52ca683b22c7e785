//! Submodules, quotients and isomorphism testing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{ExtComplex, PiModule, ARROWS};
use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, Mat};

/// Largest vertex dimension for which subobjects are enumerated.
pub const MAX_SUBOBJECT_DIM: usize = 4;

/// A submodule given by column bases `w[v]` of the subspaces at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubModule {
    pub w: [Mat; 2],
    pub module: PiModule,
}

impl SubModule {
    pub fn dims(&self) -> [usize; 2] {
        self.module.dims()
    }
}

fn contains(span: &Mat, rank: usize, vecs: &Mat) -> bool {
    vecs.cols() == 0 || span.hstack(vecs).rank() == rank
}

/// All submodules of `M`, ordered by total dimension, then dimension vector, then
/// the RREF bases.
pub fn subobjects(m: &PiModule) -> Result<Vec<SubModule>> {
    if m.d0() > MAX_SUBOBJECT_DIM || m.d1() > MAX_SUBOBJECT_DIM {
        return Err(Error::TooLarge(format!(
            "subobject enumeration needs vertex dimensions <= {MAX_SUBOBJECT_DIM}, got {:?}",
            m.dims()
        )));
    }
    let p = m.p();
    let spaces: [Vec<Mat>; 2] = [
        all_subspaces(m.d0(), p).into_iter().map(|r| r.transpose()).collect(),
        all_subspaces(m.d1(), p).into_iter().map(|r| r.transpose()).collect(),
    ];
    let mut out = Vec::new();
    for w0 in &spaces[0] {
        // images of W0 under A1, A2 must land in W1
        let a_img = m.arrow(0).mul(w0).hstack(&m.arrow(1).mul(w0));
        for w1 in &spaces[1] {
            let r1 = w1.cols();
            if !contains(w1, r1, &a_img) {
                continue;
            }
            let b_img = m.arrow(2).mul(w1).hstack(&m.arrow(3).mul(w1));
            if !contains(w0, w0.cols(), &b_img) {
                continue;
            }
            out.push(restrict(m, [w0.clone(), w1.clone()]));
        }
    }
    out.sort_by(|a, b| {
        let key = |s: &SubModule| (s.module.total_dim(), s.dims(), s.w[0].transpose().data().to_vec(), s.w[1].transpose().data().to_vec());
        key(a).cmp(&key(b))
    });
    Ok(out)
}

/// The submodule spanned by invariant column bases.
pub fn restrict(m: &PiModule, w: [Mat; 2]) -> SubModule {
    let arrows = std::array::from_fn(|k| {
        let (s, t) = ARROWS[k];
        w[t].solve(&m.arrow(k).mul(&w[s])).expect("subspace is invariant")
    });
    let module = PiModule::from_parts_unchecked([w[0].cols(), w[1].cols()], m.p(), arrows);
    SubModule { w, module }
}

/// Standard basis vectors completing the column basis `w` to a basis.
fn complement_basis(w: &Mat) -> Mat {
    let n = w.rows();
    let mut acc = w.clone();
    let mut rank = w.rank();
    let mut out = Mat::zeros(n, 0, w.p());
    for j in 0..n {
        let mut e = Mat::zeros(n, 1, w.p());
        e.set(j, 0, 1);
        let next = acc.hstack(&e);
        if next.rank() > rank {
            rank += 1;
            acc = next;
            out = out.hstack(&e);
        }
    }
    out
}

/// `M / U` with the quotient basis given by a complement of standard vectors.
pub fn quotient(m: &PiModule, u: &SubModule) -> PiModule {
    quotient_with_projection(m, u).0
}

/// `M / U` together with the projections `M_v -> (M / U)_v`.
pub fn quotient_with_projection(m: &PiModule, u: &SubModule) -> (PiModule, [Mat; 2]) {
    let c = [complement_basis(&u.w[0]), complement_basis(&u.w[1])];
    let proj: [Mat; 2] = std::array::from_fn(|v| {
        let inv = u.w[v].hstack(&c[v]).inverse().expect("basis of the whole space");
        inv.block(u.w[v].cols(), 0, c[v].cols(), m.dim(v))
    });
    let arrows = std::array::from_fn(|k| {
        let (s, t) = ARROWS[k];
        proj[t].mul(&m.arrow(k)).mul(&c[s])
    });
    (PiModule::from_parts_unchecked([c[0].cols(), c[1].cols()], m.p(), arrows), proj)
}

/// Basis of `Hom(M, N)` as pairs of vertex maps.
pub fn hom_basis(m: &PiModule, n: &PiModule) -> Vec<[Mat; 2]> {
    ExtComplex::new(m, n)
        .basis(0)
        .into_iter()
        .map(|c| [c.blocks[0].clone(), c.blocks[1].clone()])
        .collect()
}

const EXHAUSTIVE_HOM_LIMIT: u64 = 20_000;
const RANDOM_HOM_SAMPLES: usize = 4_000;

/// Searches `Hom(M, N)` for an isomorphism: exhaustively when the space has at
/// most 20000 elements, otherwise by seeded random sampling.
pub fn is_isomorphic(m: &PiModule, n: &PiModule) -> bool {
    if m.dims() != n.dims() || m.p() != n.p() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let basis = hom_basis(m, n);
    if basis.len() != hom_basis(m, m).len() || basis.len() != hom_basis(n, n).len() {
        return false;
    }
    let p = m.p();
    let invertible = |coeffs: &[u32]| {
        let mut f = [Mat::zeros(n.d0(), m.d0(), p), Mat::zeros(n.d1(), m.d1(), p)];
        for (c, b) in coeffs.iter().zip(&basis) {
            if *c != 0 {
                f = [f[0].add(&b[0].scale(*c)), f[1].add(&b[1].scale(*c))];
            }
        }
        f[0].is_invertible() && f[1].is_invertible()
    };
    let h = basis.len() as u32;
    let total = (p as u64).checked_pow(h);
    match total {
        Some(total) if total <= EXHAUSTIVE_HOM_LIMIT => (0..total).any(|mut code| {
            let coeffs: Vec<u32> = (0..h)
                .map(|_| {
                    let c = (code % p as u64) as u32;
                    code /= p as u64;
                    c
                })
                .collect();
            invertible(&coeffs)
        }),
        _ => {
            use rand::Rng;
            let mut rng = ChaCha8Rng::seed_from_u64(0x150);
            (0..RANDOM_HOM_SAMPLES).any(|_| {
                let coeffs: Vec<u32> = (0..h).map(|_| rng.random_range(0..p)).collect();
                invertible(&coeffs)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn subobjects_of_small_modules() {
        assert_eq!(subobjects(&s0()).unwrap().len(), 2);
        let subs = subobjects(&ext11()).unwrap();
        let dims: Vec<_> = subs.iter().map(|s| s.dims()).collect();
        assert_eq!(dims, vec![[0, 0], [0, 1], [1, 1]]);
        assert_eq!(subobjects(&s0().direct_sum(&s1())).unwrap().len(), 4);
        assert!(matches!(subobjects(&s0().power(5)), Err(Error::TooLarge(_))));
    }

    #[test]
    fn quotient_of_extension() {
        let m = ext11();
        let subs = subobjects(&m).unwrap();
        let q = quotient(&m, &subs[1]);
        assert!(is_isomorphic(&q, &s0()));
        assert!(quotient(&m, &subs[2]).is_zero());
        assert!(is_isomorphic(&quotient(&m, &subs[0]), &m));
    }

    #[test]
    fn isomorphism_tests() {
        let m = ext11();
        let g = [Mat::from_rows(1, 1, P, &[vec![2]]), Mat::from_rows(1, 1, P, &[vec![1]])];
        let gi = [g[0].inverse().unwrap(), g[1].inverse().unwrap()];
        assert!(is_isomorphic(&m, &m.transform(&g, &gi)));
        assert!(!is_isomorphic(&m, &s0().direct_sum(&s1())));
        assert!(is_isomorphic(&s0().direct_sum(&s1()), &s0().direct_sum(&s1())));
        let other = PiModule::from_signed(1, 1, P, [&[vec![0]], &[vec![0]], &[vec![1]], &[vec![0]]]).unwrap();
        assert!(!is_isomorphic(&m, &other));
    }
}
