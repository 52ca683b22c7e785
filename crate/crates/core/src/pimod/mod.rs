//! Nilpotent representations of the doubled Kronecker quiver with preprojective
//! relations over `F_p`.
//!
//! Vertices are 0 and 1; arrows `A1, A2: 0 -> 1` and `B1, B2: 1 -> 0`. A module
//! stores `A_i` as `d1 x d0` and `B_i` as `d0 x d1` matrices and satisfies
//! `A1 B1 + A2 B2 = 0` and `B1 A1 + B2 A2 = 0`.

mod enumerate;
mod ext;
mod oracle;
mod sub;
mod twist;

pub use enumerate::{canonical_key, iso_classes, random_module, IsoClassCatalog};
pub use oracle::PiCategory;
pub use ext::{block_shapes, compose, ext_dims, ExtCocycle, ExtComplex};
pub use sub::{
    hom_basis, is_isomorphic, quotient, quotient_with_projection, subobjects, SubModule, MAX_SUBOBJECT_DIM,
};
pub use twist::{
    identify_line, realize_line_bundle, twist_shifted, twist_simple, twist_simple_inverse, Realization, RealizationOutcome,
    ShiftedModule, TwistCohomology,
};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kcharge::KClass;
use crate::linalg::{is_prime, Mat};

pub const DEFAULT_FIELD_ORDER: u32 = 3;

/// `(source, target)` of `A1, A2, B1, B2`.
pub const ARROWS: [(usize, usize); 4] = [(0, 1), (0, 1), (1, 0), (1, 0)];
pub const ARROW_NAMES: [&str; 4] = ["A1", "A2", "B1", "B2"];

/// The arrow paired with `alpha` in the preprojective relation.
pub const fn dual_arrow(alpha: usize) -> usize {
    (alpha + 2) % 4
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiModule {
    dims: [usize; 2],
    p: u32,
    arrows: [Mat; 4],
}

impl PiModule {
    /// Checks shapes, the preprojective relations and nilpotency.
    pub fn new(d0: usize, d1: usize, p: u32, arrows: [Mat; 4]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidModule(format!("field order {p} is not prime")));
        }
        let dims = [d0, d1];
        for (k, m) in arrows.iter().enumerate() {
            let (s, t) = ARROWS[k];
            if (m.rows(), m.cols()) != (dims[t], dims[s]) || m.p() != p {
                return Err(Error::InvalidModule(format!(
                    "{} must be {}x{} over F_{p}",
                    ARROW_NAMES[k], dims[t], dims[s]
                )));
            }
        }
        let m = Self { dims, p, arrows };
        m.check_relations()?;
        if !m.is_nilpotent() {
            return Err(Error::InvalidModule("module is not nilpotent".into()));
        }
        Ok(m)
    }

    pub fn zero(p: u32) -> Self {
        Self::new(0, 0, p, std::array::from_fn(|_| Mat::zeros(0, 0, p))).expect("zero module")
    }

    /// The simple module at vertex `v`.
    pub fn simple(v: usize, p: u32) -> Self {
        let dims = if v == 0 { [1, 0] } else { [0, 1] };
        Self::zeros(dims, p)
    }

    /// All arrows zero.
    pub fn zeros(dims: [usize; 2], p: u32) -> Self {
        let arrows = std::array::from_fn(|k| {
            let (s, t) = ARROWS[k];
            Mat::zeros(dims[t], dims[s], p)
        });
        Self { dims, p, arrows }
    }

    pub fn from_signed(d0: usize, d1: usize, p: u32, mats: [&[Vec<i64>]; 4]) -> Result<Self> {
        let dims = [d0, d1];
        let arrows = std::array::from_fn(|k| {
            let (s, t) = ARROWS[k];
            Mat::from_rows(dims[t], dims[s], p, mats[k])
        });
        Self::new(d0, d1, p, arrows)
    }

    pub fn d0(&self) -> usize {
        self.dims[0]
    }

    pub fn d1(&self) -> usize {
        self.dims[1]
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims[0] + self.dims[1]
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn arrow(&self, k: usize) -> &Mat {
        &self.arrows[k]
    }

    pub fn arrows(&self) -> &[Mat; 4] {
        &self.arrows
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn is_simple(&self) -> Option<usize> {
        match self.dims {
            [1, 0] => Some(0),
            [0, 1] => Some(1),
            _ => None,
        }
    }

    /// Class in `K` under `[S_1] = (1, 0)`, `[S_0] = (-1, 1)`.
    pub fn class(&self) -> KClass {
        KClass::from_dims(self.dims[0], self.dims[1])
    }

    fn check_relations(&self) -> Result<()> {
        let [a1, a2, b1, b2] = &self.arrows;
        if !a1.mul(b1).add(&a2.mul(b2)).is_zero() {
            return Err(Error::InvalidModule("A1 B1 + A2 B2 != 0".into()));
        }
        if !b1.mul(a1).add(&b2.mul(a2)).is_zero() {
            return Err(Error::InvalidModule("B1 A1 + B2 A2 != 0".into()));
        }
        Ok(())
    }

    /// The radical series `U_{k+1} = sum of arrow images of U_k` reaches zero.
    pub fn is_nilpotent(&self) -> bool {
        let p = self.p;
        let mut w = [Mat::identity(self.dims[0], p), Mat::identity(self.dims[1], p)];
        let mut last = self.total_dim() + 1;
        loop {
            let size = w[0].cols() + w[1].cols();
            if size == 0 {
                return true;
            }
            if size >= last {
                return false;
            }
            last = size;
            let mut next = [Mat::zeros(self.dims[0], 0, p), Mat::zeros(self.dims[1], 0, p)];
            for (k, m) in self.arrows.iter().enumerate() {
                let (s, t) = ARROWS[k];
                next[t] = next[t].hstack(&m.mul(&w[s]));
            }
            w = [next[0].column_space(), next[1].column_space()];
        }
    }

    pub fn direct_sum(&self, o: &PiModule) -> PiModule {
        assert_eq!(self.p, o.p);
        let dims = [self.dims[0] + o.dims[0], self.dims[1] + o.dims[1]];
        let arrows = std::array::from_fn(|k| {
            let (s, t) = ARROWS[k];
            let mut m = Mat::zeros(dims[t], dims[s], self.p);
            m.put(0, 0, &self.arrows[k]);
            m.put(self.dims[t], self.dims[s], &o.arrows[k]);
            m
        });
        PiModule { dims, p: self.p, arrows }
    }

    pub fn power(&self, n: usize) -> PiModule {
        (0..n).fold(PiModule::zero(self.p), |acc, _| acc.direct_sum(self))
    }

    /// `g . M` for `g = (g0, g1)`: arrows `alpha -> g_t alpha g_s^{-1}`.
    pub fn transform(&self, g: &[Mat; 2], g_inv: &[Mat; 2]) -> PiModule {
        let arrows = std::array::from_fn(|k| {
            let (s, t) = ARROWS[k];
            g[t].mul(&self.arrows[k]).mul(&g_inv[s])
        });
        PiModule { dims: self.dims, p: self.p, arrows }
    }

    /// Flat encoding `[d0, d1, entries of A1, A2, B1, B2]`.
    pub fn encode(&self) -> Vec<u32> {
        let mut out = vec![self.dims[0] as u32, self.dims[1] as u32];
        for m in &self.arrows {
            out.extend_from_slice(m.data());
        }
        out
    }

    pub(crate) fn from_parts_unchecked(dims: [usize; 2], p: u32, arrows: [Mat; 4]) -> Self {
        Self { dims, p, arrows }
    }
}

#[derive(Serialize, Deserialize)]
struct PiModuleJson {
    d: [usize; 2],
    #[serde(rename = "A1")]
    a1: Vec<Vec<i64>>,
    #[serde(rename = "A2")]
    a2: Vec<Vec<i64>>,
    #[serde(rename = "B1")]
    b1: Vec<Vec<i64>>,
    #[serde(rename = "B2")]
    b2: Vec<Vec<i64>>,
    #[serde(default = "default_p")]
    p: u32,
}

fn default_p() -> u32 {
    DEFAULT_FIELD_ORDER
}

impl Serialize for PiModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = |k: usize| -> Vec<Vec<i64>> {
            self.arrows[k].to_rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()
        };
        PiModuleJson { d: self.dims, a1: rows(0), a2: rows(1), b1: rows(2), b2: rows(3), p: self.p }
            .serialize(s)
    }
}

fn matrix_from_json(name: &str, rows: usize, cols: usize, p: u32, raw: &[Vec<i64>]) -> Result<Mat> {
    let empty = rows == 0 || cols == 0;
    let shape_ok = if empty {
        raw.iter().all(|r| r.is_empty()) && (raw.is_empty() || raw.len() == rows)
    } else {
        raw.len() == rows && raw.iter().all(|r| r.len() == cols)
    };
    if !shape_ok {
        return Err(Error::InvalidModule(format!("{name} must be {rows}x{cols}")));
    }
    Ok(Mat::from_rows(rows, cols, p, raw))
}

impl<'de> Deserialize<'de> for PiModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PiModuleJson::deserialize(d)?;
        let build = || -> Result<PiModule> {
            if !is_prime(raw.p) {
                return Err(Error::InvalidModule(format!("field order {} is not prime", raw.p)));
            }
            let [d0, d1] = raw.d;
            let dims = raw.d;
            let mats = [&raw.a1, &raw.a2, &raw.b1, &raw.b2];
            let mut arrows = Vec::with_capacity(4);
            for k in 0..4 {
                let (s, t) = ARROWS[k];
                arrows.push(matrix_from_json(ARROW_NAMES[k], dims[t], dims[s], raw.p, mats[k])?);
            }
            let arrows: [Mat; 4] = arrows.try_into().expect("four arrows");
            PiModule::new(d0, d1, raw.p, arrows)
        };
        build().map_err(serde::de::Error::custom)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn relations_enforced() {
        // A1 B1 = 1 != 0
        let r = PiModule::from_signed(1, 1, P, [&[vec![1]], &[vec![0]], &[vec![1]], &[vec![0]]]);
        assert!(matches!(r, Err(Error::InvalidModule(_))));
        // A1 = B2 = 1, A2 = -1, B1 = 1: relations hold, A1 B1 is a nonzero cycle
        let r = PiModule::from_signed(1, 1, P, [&[vec![1]], &[vec![-1]], &[vec![1]], &[vec![1]]]);
        assert!(matches!(r, Err(Error::InvalidModule(m)) if m.contains("nilpotent")));
    }

    #[test]
    fn nilpotency_of_small_modules() {
        assert!(ext11().is_nilpotent());
        assert!(s0().direct_sum(&s1()).is_nilpotent());
        assert!(PiModule::zero(P).is_nilpotent());
    }

    #[test]
    fn classes_follow_dictionary() {
        assert_eq!(s1().class(), KClass::O_Z);
        assert_eq!(s0().class(), KClass::new(-1, 1));
        assert_eq!(ext11().class(), KClass::O_X);
    }

    #[test]
    fn json_roundtrip() {
        let m = ext11();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"d":[1,1],"A1":[[1]],"A2":[[0]],"B1":[[0]],"B2":[[0]],"p":3}"#);
        assert_eq!(serde_json::from_str::<PiModule>(&s).unwrap(), m);
        let s0_json = r#"{"d":[1,0],"A1":[],"A2":[],"B1":[[]],"B2":[[]]}"#;
        assert_eq!(serde_json::from_str::<PiModule>(s0_json).unwrap(), s0());
        assert!(serde_json::from_str::<PiModule>(r#"{"d":[1,1],"A1":[[1,1]],"A2":[[0]],"B1":[[0]],"B2":[[0]]}"#).is_err());
    }
}
