use serde::Serialize;

use super::HWModule;
use crate::exactla::{exp_nilpotent, SparseMat};
use crate::rootsystem::WeylWord;
use crate::Result;

/// A matrix on `V_λ` lifting a Weyl group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TitsRep {
    pub word: WeylWord,
    pub matrix: SparseMat,
}

/// `n_i = exp(e_i) exp(-f_i) exp(e_i)` on the whole module.
pub fn simple_tits(m: &HWModule, i: usize) -> Result<SparseMat> {
    let ee = exp_nilpotent(m.gen_e(i))?;
    let ef = exp_nilpotent(&m.gen_f(i).neg())?;
    Ok(ee.mul(&ef).mul(&ee))
}

/// Product of the `n_i` along the word, leftmost factor acting last.
pub fn tits_representative(m: &HWModule, w: &WeylWord) -> Result<TitsRep> {
    let mut cache: Vec<Option<SparseMat>> = vec![None; m.rank() + 1];
    let mut matrix = SparseMat::identity(m.dim());
    for &i in w.letters() {
        if cache[i].is_none() {
            cache[i] = Some(simple_tits(m, i)?);
        }
        matrix = matrix.mul(cache[i].as_ref().unwrap());
    }
    Ok(TitsRep { word: w.clone(), matrix })
}
