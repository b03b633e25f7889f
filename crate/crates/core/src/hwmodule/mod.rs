//! Irreducible highest-weight modules over exact rationals.

mod construct;
mod freudenthal;
mod tits;

use std::collections::HashMap;
use std::ops::Range;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::exactla::{Rat, SparseMat, SparseVec, Subspace};
use crate::rootsystem::{CartanType, RootSystem, Weight, WeylWord};
use crate::{Error, Result};

use construct::{construct, Extent};
pub use freudenthal::{weight_system, DominantMultiplicities, WeightSystem};
pub use tits::{simple_tits, tits_representative, TitsRep};

/// Default bound on module dimensions.
pub const DEFAULT_DIM_CAP: u64 = 20000;

/// Weyl dimension of `lambda`, rejected when above `cap`.
pub fn checked_dim(rs: &RootSystem, lambda: &Weight, cap: u64) -> Result<BigUint> {
    let dim = rs.weyl_dim(lambda)?;
    if dim > BigUint::from(cap) {
        return Err(Error::SizeCap { required: dim, cap });
    }
    Ok(dim)
}

/// The module `V_λ` with its Chevalley generators as sparse matrices on a
/// weight basis.
#[derive(Clone, Debug)]
pub struct HWModule {
    cartan_type: CartanType,
    lambda: Weight,
    dim: usize,
    blocks: Vec<(Weight, Range<usize>)>,
    block_of: HashMap<Weight, usize>,
    gen_e: Vec<SparseMat>,
    gen_f: Vec<SparseMat>,
    gen_h: Vec<SparseMat>,
}

impl HWModule {
    pub fn build(rs: &RootSystem, lambda: &Weight, cap: u64) -> Result<Self> {
        checked_dim(rs, lambda, cap)?;
        let dm = DominantMultiplicities::new(rs, lambda)?;
        let c = construct(rs, &dm, Extent::Full)?;
        let n = rs.rank();

        let mut blocks = Vec::with_capacity(c.spaces.len());
        let mut start = 0;
        for s in &c.spaces {
            blocks.push((s.weight.clone(), start..start + s.dim));
            start += s.dim;
        }
        let dim = start;
        let block_of: HashMap<Weight, usize> = blocks.iter().enumerate().map(|(k, (w, _))| (w.clone(), k)).collect();

        let mut gen_e = Vec::with_capacity(n);
        let mut gen_f = Vec::with_capacity(n);
        let mut gen_h = Vec::with_capacity(n);
        let alphas: Vec<Weight> = (0..n).map(|i| rs.root_to_weight(&rs.positive_roots()[i])).collect();
        for i in 0..n {
            let mut te = Vec::new();
            let mut tf = Vec::new();
            for (k, s) in c.spaces.iter().enumerate() {
                let src = blocks[k].1.start;
                let Some(&up) = block_of.get(&s.weight.add(&alphas[i])) else { continue };
                let dst = blocks[up].1.start;
                if let Some(e) = &s.e[i] {
                    te.extend(e.entries().map(|(r, col, v)| (dst + r, src + col, v.clone())));
                }
                if let Some(f) = &s.f[i] {
                    tf.extend(f.entries().map(|(r, col, v)| (src + r, dst + col, v.clone())));
                }
            }
            gen_e.push(SparseMat::from_triplets(dim, dim, te));
            gen_f.push(SparseMat::from_triplets(dim, dim, tf));
            let th = blocks.iter().flat_map(|(w, range)| {
                let h = w.coords()[i];
                range.clone().filter(move |_| h != 0).map(move |k| (k, k, Rat::from_int(h)))
            });
            gen_h.push(SparseMat::from_triplets(dim, dim, th.collect::<Vec<_>>()));
        }
        Ok(HWModule { cartan_type: rs.cartan_type(), lambda: lambda.clone(), dim, blocks, block_of, gen_e, gen_f, gen_h })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.gen_e.len()
    }

    /// Weight blocks in basis order.
    pub fn blocks(&self) -> &[(Weight, Range<usize>)] {
        &self.blocks
    }

    /// `(weight, index within the weight space)` for every basis vector.
    pub fn basis_labels(&self) -> Vec<(Weight, usize)> {
        self.blocks.iter().flat_map(|(w, r)| (0..r.len()).map(move |k| (w.clone(), k))).collect()
    }

    pub fn weight_block(&self, mu: &Weight) -> Option<Range<usize>> {
        self.block_of.get(mu).map(|&k| self.blocks[k].1.clone())
    }

    /// Raising operator `e_i`, `i` in `1..=rank`.
    pub fn gen_e(&self, i: usize) -> &SparseMat {
        &self.gen_e[i - 1]
    }

    pub fn gen_f(&self, i: usize) -> &SparseMat {
        &self.gen_f[i - 1]
    }

    pub fn gen_h(&self, i: usize) -> &SparseMat {
        &self.gen_h[i - 1]
    }

    pub fn zero_weight_space(&self) -> Subspace {
        let range = self.weight_block(&Weight::zero(self.rank())).unwrap_or(0..0);
        Subspace::coordinate(self.dim, &range.collect::<Vec<_>>())
    }

    /// Checks the defining relations `[h_i, e_j] = a_ij e_j`,
    /// `[h_i, f_j] = -a_ij f_j` and `[e_i, f_j] = δ_ij h_i` exactly.
    pub fn check_relations(&self, rs: &RootSystem) -> Result<()> {
        let n = self.rank();
        let a = rs.cartan_matrix();
        let comm = |x: &SparseMat, y: &SparseMat| x.mul(y).sub(&y.mul(x));
        for i in 0..n {
            for j in 0..n {
                let aij = Rat::from_int(a[i][j]);
                if comm(&self.gen_h[i], &self.gen_e[j]) != self.gen_e[j].scale(&aij) {
                    return Err(Error::Internal(format!("[h{}, e{}] relation fails", i + 1, j + 1)));
                }
                if comm(&self.gen_h[i], &self.gen_f[j]) != self.gen_f[j].scale(&-aij) {
                    return Err(Error::Internal(format!("[h{}, f{}] relation fails", i + 1, j + 1)));
                }
                let expected = if i == j { self.gen_h[i].clone() } else { SparseMat::zeros(self.dim, self.dim) };
                if comm(&self.gen_e[i], &self.gen_f[j]) != expected {
                    return Err(Error::Internal(format!("[e{}, f{}] relation fails", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// Whether `m` sends each weight block `μ` into the block `w(μ)`.
    pub fn permutes_blocks(&self, rs: &RootSystem, m: &SparseMat, w: &WeylWord) -> bool {
        let t = m.transpose();
        self.blocks.iter().all(|(mu, range)| {
            let Some(target) = self.weight_block(&rs.apply_word(w, mu)) else { return false };
            range.clone().all(|c| t.row(c).entries().iter().all(|(r, _)| target.contains(r)))
        })
    }

    /// The data of the zero-weight space used by the classification.
    pub fn zero_slice(&self, rs: &RootSystem) -> ZeroSlice {
        let n = self.rank();
        let zero = Weight::zero(n);
        let z = self.weight_block(&zero).unwrap_or(0..0);
        let z_idx: Vec<usize> = z.clone().collect();
        let mut e0 = Vec::with_capacity(n);
        let mut f0 = Vec::with_capacity(n);
        let mut strings = Vec::with_capacity(n);
        for i in 1..=n {
            let alpha = rs.root_to_weight(&rs.positive_roots()[i - 1]);
            let up: Vec<usize> = self.weight_block(&alpha).unwrap_or(0..0).collect();
            e0.push(self.gen_e(i).select(&up, &z_idx));
            f0.push(self.gen_f(i).select(&z_idx, &up));
            let mut k = 0;
            while !z_idx.is_empty() && self.weight_block(&alpha.scaled(k + 1)).is_some() {
                k += 1;
            }
            strings.push(k as u32);
        }
        ZeroSlice { cartan_type: self.cartan_type, lambda: self.lambda.clone(), dim0: z_idx.len(), e0, f0, strings }
    }
}

/// The zero-weight space of `V_λ` with the blocks `e_i: V_0 → V_{α_i}` and
/// `f_i: V_{α_i} → V_0`, and the length of each simple root string through 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSlice {
    pub cartan_type: CartanType,
    pub lambda: Weight,
    pub dim0: usize,
    pub e0: Vec<SparseMat>,
    pub f0: Vec<SparseMat>,
    /// Largest `k` with `k α_i` a weight.
    pub strings: Vec<u32>,
}

impl ZeroSlice {
    /// Builds only the weight spaces between 0 and `λ`.
    pub fn build(rs: &RootSystem, lambda: &Weight, cap: u64) -> Result<Self> {
        checked_dim(rs, lambda, cap)?;
        let n = rs.rank();
        if !rs.in_root_lattice(lambda) {
            return Ok(ZeroSlice {
                cartan_type: rs.cartan_type(),
                lambda: lambda.clone(),
                dim0: 0,
                e0: vec![SparseMat::zeros(0, 0); n],
                f0: vec![SparseMat::zeros(0, 0); n],
                strings: vec![0; n],
            });
        }
        let dm = DominantMultiplicities::new(rs, lambda)?;
        let c = construct(rs, &dm, Extent::AboveZero)?;
        let zero = Weight::zero(n);
        let z = &c.spaces[c.index[&zero]];
        let mut e0 = Vec::with_capacity(n);
        let mut f0 = Vec::with_capacity(n);
        let mut strings = Vec::with_capacity(n);
        for i in 0..n {
            e0.push(z.e[i].clone().unwrap_or_else(|| SparseMat::zeros(0, z.dim)));
            f0.push(z.f[i].clone().unwrap_or_else(|| SparseMat::zeros(z.dim, 0)));
            let alpha = rs.root_to_weight(&rs.positive_roots()[i]);
            let mut k = 0;
            while dm.mult(rs, &alpha.scaled(k + 1)) > 0 {
                k += 1;
            }
            strings.push(k as u32);
        }
        Ok(ZeroSlice { cartan_type: rs.cartan_type(), lambda: lambda.clone(), dim0: z.dim, e0, f0, strings })
    }

    pub fn dim0(&self) -> usize {
        self.dim0
    }

    /// `e_i` restricted to the zero-weight space, `i` in `1..=rank`.
    pub fn raising(&self, i: usize) -> &SparseMat {
        &self.e0[i - 1]
    }

    /// `f_i e_i` on the zero-weight space.
    pub fn casimir(&self, i: usize) -> SparseMat {
        if self.dim0 == 0 || self.e0[i - 1].nrows() == 0 {
            return SparseMat::zeros(self.dim0, self.dim0);
        }
        self.f0[i - 1].mul(&self.e0[i - 1])
    }

    /// The Tits lift `n_i = exp(e_i) exp(-f_i) exp(e_i)` on the zero-weight
    /// space.
    ///
    /// On the zero-weight line of an irreducible `sl_2`-summand of dimension
    /// `2m+1`, `f_i e_i` acts by `m(m+1)` and `n_i` by `(-1)^m`, so `n_i` is a
    /// polynomial in `f_i e_i` obtained by Lagrange interpolation.
    pub fn reflection(&self, i: usize) -> SparseMat {
        let t = self.casimir(i);
        let m = self.strings[i - 1] as i64;
        let nodes: Vec<Rat> = (0..=m).map(|k| Rat::from_int(k * (k + 1))).collect();
        let mut coeffs = vec![Rat::ZERO; nodes.len()];
        for (k, xk) in nodes.iter().enumerate() {
            // (-1)^k Π_{l≠k} (x - x_l) / (x_k - x_l)
            let mut poly = vec![Rat::ONE];
            let mut denom = Rat::ONE;
            for (l, xl) in nodes.iter().enumerate() {
                if l == k {
                    continue;
                }
                let mut next = vec![Rat::ZERO; poly.len() + 1];
                for (d, c) in poly.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= &(c * xl);
                }
                poly = next;
                denom *= &(xk - xl);
            }
            let scale = if k % 2 == 0 { denom.recip() } else { -denom.recip() };
            for (c, p) in coeffs.iter_mut().zip(&poly) {
                *c += &(p * &scale);
            }
        }
        let id = SparseMat::identity(self.dim0);
        let mut acc = id.scale(coeffs.last().unwrap());
        for c in coeffs.iter().rev().skip(1) {
            acc = t.mul(&acc).axpy(c, &id);
        }
        acc
    }

    /// Matrix of the Tits lift of `w` on the zero-weight space.
    pub fn word_matrix(&self, w: &WeylWord) -> SparseMat {
        let refl = self.reflections(w);
        w.letters().iter().fold(SparseMat::identity(self.dim0), |acc, i| acc.mul(&refl[i]))
    }

    /// Applies the Tits lift of `w` to each vector.
    pub fn apply_word(&self, w: &WeylWord, vectors: &[SparseVec]) -> Vec<SparseVec> {
        let refl = self.reflections(w);
        vectors
            .iter()
            .map(|v| w.letters().iter().rev().fold(v.clone(), |acc, i| refl[i].mul_vec(&acc)))
            .collect()
    }

    fn reflections(&self, w: &WeylWord) -> HashMap<usize, SparseMat> {
        let mut out = HashMap::new();
        for &i in w.letters() {
            out.entry(i).or_insert_with(|| self.reflection(i));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::exp_nilpotent;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn defining_sl2_module() {
        let a1 = rs("A1");
        let m = HWModule::build(&a1, &Weight(vec![1]), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.gen_e(1), &SparseMat::from_i64(&[vec![0, 1], vec![0, 0]]));
        assert_eq!(m.gen_f(1), &SparseMat::from_i64(&[vec![0, 0], vec![1, 0]]));
        assert_eq!(m.gen_h(1), &SparseMat::from_i64(&[vec![1, 0], vec![0, -1]]));
        assert_eq!(m.zero_weight_space().dim(), 0);
    }

    #[test]
    fn relations_hold() {
        for (t, l) in [("G2", vec![1, 0]), ("G2", vec![0, 1]), ("B3", vec![1, 0, 1]), ("A3", vec![1, 1, 0]), ("C3", vec![0, 1, 0])] {
            let r = rs(t);
            let l = Weight(l);
            let m = HWModule::build(&r, &l, DEFAULT_DIM_CAP).unwrap();
            assert_eq!(BigUint::from(m.dim()), r.weyl_dim(&l).unwrap());
            m.check_relations(&r).unwrap();
        }
    }

    #[test]
    fn size_cap_reports_dimension() {
        let r = rs("E8");
        let err = HWModule::build(&r, &Weight::fundamental(8, 1), 1000).unwrap_err();
        assert_eq!(err, Error::SizeCap { required: BigUint::from(3875u32), cap: 1000 });
    }

    #[test]
    fn zero_slice_agrees_with_full_module() {
        for (t, l) in [("G2", vec![0, 1]), ("G2", vec![2, 0]), ("B3", vec![0, 1, 0]), ("B2", vec![1, 2]), ("D4", vec![0, 1, 0, 0])] {
            let r = rs(t);
            let l = Weight(l);
            let full = HWModule::build(&r, &l, DEFAULT_DIM_CAP).unwrap().zero_slice(&r);
            let slice = ZeroSlice::build(&r, &l, DEFAULT_DIM_CAP).unwrap();
            assert_eq!(full, slice, "{t} {l}");
        }
    }

    #[test]
    fn casimir_reflection_matches_exponentials() {
        for (t, l) in [("A1", vec![4]), ("G2", vec![0, 1]), ("G2", vec![2, 0]), ("B3", vec![2, 0, 0]), ("C3", vec![2, 0, 0])] {
            let r = rs(t);
            let l = Weight(l);
            let m = HWModule::build(&r, &l, DEFAULT_DIM_CAP).unwrap();
            let slice = m.zero_slice(&r);
            let z: Vec<usize> = m.weight_block(&Weight::zero(r.rank())).unwrap().collect();
            for i in 1..=r.rank() {
                let ee = exp_nilpotent(m.gen_e(i)).unwrap();
                let ef = exp_nilpotent(&m.gen_f(i).neg()).unwrap();
                let n = ee.mul(&ef).mul(&ee);
                assert_eq!(n.select(&z, &z), slice.reflection(i), "{t} {l} s{i}");
            }
        }
    }

    #[test]
    fn adjoint_a1_reflection_is_minus_one() {
        let r = rs("A1");
        let s = ZeroSlice::build(&r, &Weight(vec![2]), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(s.reflection(1), SparseMat::scalar(1, &Rat::from_int(-1)));
    }

    #[test]
    fn outside_root_lattice_has_no_zero_weight() {
        let r = rs("B4");
        let s = ZeroSlice::build(&r, &Weight::fundamental(4, 4), DEFAULT_DIM_CAP).unwrap();
        assert_eq!(s.dim0(), 0);
    }
}
