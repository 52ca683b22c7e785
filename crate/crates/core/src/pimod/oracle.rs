//! The module category as a [`CategoryOracle`].

use super::sub::{quotient, subobjects};
use super::{canonical_key, ext_dims, is_isomorphic, twist_simple_inverse, PiModule, SubModule};
use crate::error::Result;
use crate::heartlab::{CategoryOracle, TwistOracle};
use crate::kcharge::KClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PiCategory {
    pub p: u32,
}

impl PiCategory {
    pub fn new(p: u32) -> Self {
        Self { p }
    }
}

impl CategoryOracle for PiCategory {
    type Obj = PiModule;
    type Sub = SubModule;

    fn subobjects(&self, x: &PiModule) -> Result<Vec<SubModule>> {
        subobjects(x)
    }

    fn sub_object(&self, s: &SubModule) -> PiModule {
        s.module.clone()
    }

    fn quotient(&self, x: &PiModule, s: &SubModule) -> PiModule {
        quotient(x, s)
    }

    fn hom_dims(&self, x: &PiModule, y: &PiModule) -> (usize, usize, usize) {
        ext_dims(x, y)
    }

    fn direct_sum(&self, x: &PiModule, y: &PiModule) -> PiModule {
        x.direct_sum(y)
    }

    fn zero(&self) -> PiModule {
        PiModule::zero(self.p)
    }

    fn is_zero(&self, x: &PiModule) -> bool {
        x.is_zero()
    }

    fn is_isomorphic(&self, x: &PiModule, y: &PiModule) -> bool {
        is_isomorphic(x, y)
    }

    fn kclass(&self, x: &PiModule) -> KClass {
        x.class()
    }

    fn length(&self, x: &PiModule) -> usize {
        x.total_dim()
    }

    /// Dimension vector, then the canonical encoding.
    fn order_key(&self, x: &PiModule) -> Result<Vec<u64>> {
        let mut key = vec![x.d0() as u64, x.d1() as u64];
        key.extend(canonical_key(x)?.into_iter().map(u64::from));
        Ok(key)
    }
}

impl TwistOracle for PiCategory {
    fn inverse_twist(&self, e: &PiModule, f: &PiModule) -> Result<[PiModule; 3]> {
        let t = twist_simple_inverse(e, f)?;
        Ok([t.h_minus1, t.h0, t.h1])
    }
}
