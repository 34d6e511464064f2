use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{KInvariant, PhiModel, PostnikovData, StageSimplex};
use crate::error::{Error, Result};
use crate::simplicial::{Cochain, CoeffElem, CoeffGroup, FinSimplicialSet};

/// k₃ for S³: the mod 2 cup-1 square of the degree-3 component, a
/// representative of Sq².
///
/// On a labelling c of the 3-faces of Δ⁵ the value is
/// c(0345)c(0123) + c(0145)c(1234) + c(0125)c(2345) mod 2.
pub struct SteenrodSquareK3;

const PAIRS: [(u32, u32); 3] = [
    (0b111001, 0b001111),
    (0b110011, 0b011110),
    (0b100111, 0b111100),
];

impl KInvariant for SteenrodSquareK3 {
    fn top_value(&self, s: &StageSimplex) -> Result<CoeffElem> {
        if s.m != 5 || s.comps.len() != 1 || s.comps[0].n != 3 {
            return Err(Error::DimensionMismatch("k₃ needs a 5-simplex of P₃".into()));
        }
        let c = &s.comps[0];
        let mut acc = BigInt::zero();
        for (a, b) in PAIRS {
            if let (Some(x), Some(y)) = (c.get_ref(a), c.get_ref(b)) {
                acc += &x[0] * &y[0];
            }
        }
        Ok(vec![acc.mod_floor(&BigInt::from(2))])
    }
}

/// Postnikov data of S³ through stage 4, with φ on the minimal S³.
pub fn sphere3_data() -> PostnikovData {
    let model = FinSimplicialSet::minimal_sphere(3).expect("valid model");
    let z = CoeffGroup::integers();
    let z2 = CoeffGroup::cyclic(2);
    let fundamental = Cochain::from_values(3, z.clone(), [(0, vec![BigInt::one()])]).expect("valid cochain");
    PostnikovData {
        name: "S^3".into(),
        d: 3,
        top_stage: 4,
        groups: vec![z, z2.clone()],
        k: vec![Arc::new(SteenrodSquareK3)],
        phi: Some(PhiModel { model, components: vec![fundamental, Cochain::zero(4, z2)] }),
    }
}
