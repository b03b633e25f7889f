//! Invariants of `𝔩 = 𝔪 ⊕ 𝔞` in a highest-weight module.
//!
//! A vector is `𝔞`-invariant and invariant under the torus of `𝔪` exactly
//! when it has weight 0. A weight-0 vector killed by the raising operators of
//! the black nodes is a highest-weight vector of weight 0 for the semisimple
//! part of `𝔪`, so it spans a trivial module.

use serde::Serialize;

use crate::exactla::{kernel, Subspace};
use crate::hwmodule::{HWModule, ZeroSlice};
use crate::rootsystem::Weight;
use crate::satake::SatakeDiagram;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LInvariants {
    pub form: String,
    pub lambda: Weight,
    /// Subspace of the zero-weight space, in its basis coordinates.
    pub space: Subspace,
    pub dim: usize,
}

impl LInvariants {
    /// The invariants as a subspace of the whole module.
    pub fn embed(&self, m: &HWModule) -> Subspace {
        let start = m.weight_block(&Weight::zero(m.rank())).map_or(0, |r| r.start);
        Subspace::span(m.dim(), self.space.basis().iter().map(|b| b.shifted(start)))
    }
}

pub fn l_invariants(slice: &ZeroSlice, sd: &SatakeDiagram) -> Result<LInvariants> {
    if slice.cartan_type != sd.cartan_type() {
        return Err(Error::Internal(format!("{} module used for {}", slice.cartan_type, sd.name())));
    }
    let mut space = Subspace::full(slice.dim0());
    for &j in sd.black() {
        if space.is_zero() {
            break;
        }
        space = space.intersect(&kernel(slice.raising(j)))?;
    }
    Ok(LInvariants { form: sd.name().to_string(), lambda: slice.lambda.clone(), dim: space.dim(), space })
}

pub fn nonzero(slice: &ZeroSlice, sd: &SatakeDiagram) -> Result<bool> {
    Ok(l_invariants(slice, sd)?.dim > 0)
}

/// Whether every vector of `space` (a subspace of the module) is killed by
/// both `e_j` and `f_j` for all black `j`.
pub fn killed_by_black(m: &HWModule, sd: &SatakeDiagram, space: &Subspace) -> bool {
    sd.black().iter().all(|&j| {
        space.basis().iter().all(|b| m.gen_e(j).mul_vec(b).is_zero() && m.gen_f(j).mul_vec(b).is_zero())
    })
}
