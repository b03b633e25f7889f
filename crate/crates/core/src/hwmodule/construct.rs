//! Weight-space-by-weight-space construction of an irreducible module.
//!
//! For a weight `μ` below the highest weight, `V_μ` embeds into
//! `⊕_i V_{μ+α_i}` via `v ↦ (e_i v)_i`. The vectors `f_j b`, with `b` running
//! over bases of the `V_{μ+α_j}`, span `V_μ`, and their images under the
//! embedding are computable from data at higher weights:
//!
//! `e_i f_j b = f_j e_i b + δ_ij <μ+α_j, α_i^∨> b`.
//!
//! The first linearly independent such vectors form the basis of `V_μ`.
//! Dependencies detected this way are exactly those coming from the radical
//! of the contravariant form, since the embedding is injective on the
//! irreducible quotient.

use std::collections::{HashMap, VecDeque};

use crate::exactla::{Accumulator, Rat, SparseMat, SparseVec};
use crate::rootsystem::{RootSystem, Weight};
use crate::{Error, Result};

use super::freudenthal::DominantMultiplicities;

#[derive(Clone, Debug)]
pub(crate) struct WeightSpace {
    pub weight: Weight,
    pub dim: usize,
    /// `e[i]: V_μ → V_{μ+α_i}`, when `μ+α_i` is in the constructed set.
    pub e: Vec<Option<SparseMat>>,
    /// `f[i]: V_{μ+α_i} → V_μ`, when `μ+α_i` is in the constructed set.
    pub f: Vec<Option<SparseMat>>,
}

/// Weight spaces ordered from the highest weight down, with their raising
/// and lowering blocks.
#[derive(Clone, Debug)]
pub(crate) struct Construction {
    pub spaces: Vec<WeightSpace>,
    pub index: HashMap<Weight, usize>,
}

/// Which weights to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Extent {
    /// Every weight of the module.
    Full,
    /// Weights lying between 0 and the highest weight.
    AboveZero,
}

fn collect_weights(rs: &RootSystem, dm: &DominantMultiplicities, extent: Extent) -> Vec<(Weight, usize)> {
    let n = rs.rank();
    let alphas: Vec<Weight> = (0..n).map(|i| rs.root_to_weight(&rs.positive_roots()[i])).collect();
    let (start, up) = match extent {
        Extent::Full => (dm.lambda().clone(), false),
        Extent::AboveZero => (Weight::zero(n), true),
    };
    if dm.mult(rs, &start) == 0 {
        return Vec::new();
    }
    let mut seen: HashMap<Weight, usize> = HashMap::new();
    seen.insert(start.clone(), dm.mult(rs, &start) as usize);
    let mut queue = VecDeque::from([start]);
    while let Some(mu) = queue.pop_front() {
        for a in &alphas {
            let nu = if up { mu.add(a) } else { mu.sub(a) };
            if seen.contains_key(&nu) {
                continue;
            }
            let m = dm.mult(rs, &nu);
            if m > 0 {
                seen.insert(nu.clone(), m as usize);
                queue.push_back(nu);
            }
        }
    }
    // Order by depth below lambda; the pairing with ρ^∨ is the height.
    let lambda_height = height(rs, dm.lambda());
    let mut out: Vec<(Weight, usize)> = seen.into_iter().collect();
    out.sort_by(|(a, _), (b, _)| {
        let da = &lambda_height - &height(rs, a);
        let db = &lambda_height - &height(rs, b);
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}

fn height(rs: &RootSystem, w: &Weight) -> Rat {
    rs.weight_to_root(w).into_iter().sum()
}

/// Echelon rows with the combination of basis vectors each row represents.
struct Tracker {
    rows: Vec<(SparseVec, SparseVec)>,
    pivot_row: HashMap<usize, usize>,
    basis_len: usize,
}

impl Tracker {
    fn new() -> Self {
        Tracker { rows: Vec::new(), pivot_row: HashMap::new(), basis_len: 0 }
    }

    /// Reduces `v`; returns its remainder and the combination of basis
    /// vectors accounted for so far.
    fn reduce(&self, v: SparseVec, acc: &mut Accumulator) -> (SparseVec, SparseVec) {
        let mut rem = v;
        while let Some((lead, x)) = rem.leading() {
            let Some(&r) = self.pivot_row.get(&lead) else { break };
            let (row, coeff) = &self.rows[r];
            let t = x / row.leading().unwrap().1;
            rem = rem.axpy(&-t.clone(), row);
            acc.add_scaled(&t, coeff);
        }
        (rem, acc.drain())
    }

    /// Coordinates of `v` in the current basis, adding `v` as a new basis
    /// vector if it is independent and `allow_new` holds.
    fn express(&mut self, v: SparseVec, allow_new: bool, acc: &mut Accumulator) -> Option<SparseVec> {
        let (rem, comb) = self.reduce(v, acc);
        if rem.is_zero() {
            return Some(comb);
        }
        if !allow_new {
            return None;
        }
        let k = self.basis_len;
        self.basis_len += 1;
        let coeff = SparseVec::unit(k).sub(&comb);
        let lead = rem.leading().unwrap().0;
        self.pivot_row.insert(lead, self.rows.len());
        self.rows.push((rem, coeff));
        Some(SparseVec::unit(k))
    }
}

pub(crate) fn construct(rs: &RootSystem, dm: &DominantMultiplicities, extent: Extent) -> Result<Construction> {
    let n = rs.rank();
    let cartan = rs.cartan_matrix();
    let alphas: Vec<Weight> = (0..n).map(|i| rs.root_to_weight(&rs.positive_roots()[i])).collect();
    let weights = collect_weights(rs, dm, extent);
    let lambda = dm.lambda();

    let mut spaces: Vec<WeightSpace> = Vec::with_capacity(weights.len());
    let mut index: HashMap<Weight, usize> = HashMap::with_capacity(weights.len());

    for (mu, mult) in weights {
        let up: Vec<Option<usize>> = alphas.iter().map(|a| index.get(&mu.add(a)).copied()).collect();
        if &mu == lambda {
            index.insert(mu.clone(), spaces.len());
            spaces.push(WeightSpace { weight: mu, dim: 1, e: vec![None; n], f: vec![None; n] });
            continue;
        }
        let dims: Vec<usize> = up.iter().map(|u| u.map_or(0, |k| spaces[k].dim)).collect();
        let mut offsets = vec![0; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + dims[i];
        }

        // Embedded images of f_j b, grouped by j.
        let mut candidates: Vec<(usize, Vec<SparseVec>)> = Vec::new();
        for j in 0..n {
            let Some(uj) = up[j] else { continue };
            let dj = dims[j];
            let mut cols: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dj];
            for i in 0..n {
                let Some(ui) = up[i] else { continue };
                // f_j e_i on V_{μ+α_j}, through V_{μ+α_i+α_j}
                if let (Some(e_i), Some(f_j)) = (spaces[uj].e[i].as_ref(), spaces[ui].f[j].as_ref()) {
                    for (r, c, v) in f_j.mul(e_i).entries() {
                        cols[c].push((offsets[i] + r, v.clone()));
                    }
                }
                if i == j {
                    let h = mu.coords()[i] + cartan[i][j];
                    if h != 0 {
                        for (b, col) in cols.iter_mut().enumerate() {
                            col.push((offsets[i] + b, Rat::from_int(h)));
                        }
                    }
                }
            }
            candidates.push((j, cols.into_iter().map(SparseVec::from_pairs).collect()));
        }

        let mut tracker = Tracker::new();
        let mut f_cols: Vec<Option<Vec<SparseVec>>> = vec![None; n];
        let mut basis_images: Vec<SparseVec> = Vec::with_capacity(mult);
        let mut acc_coeff = Accumulator::new(mult.max(1));
        for (j, cols) in candidates {
            let mut coords = Vec::with_capacity(cols.len());
            for v in cols {
                let allow = tracker.basis_len < mult;
                let before = tracker.basis_len;
                let c = tracker.express(v.clone(), allow, &mut acc_coeff).ok_or_else(|| {
                    Error::Internal(format!("weight space {mu} exceeds its multiplicity {mult}"))
                })?;
                if tracker.basis_len > before {
                    basis_images.push(v);
                }
                coords.push(c);
            }
            f_cols[j] = Some(coords);
        }
        if tracker.basis_len != mult {
            return Err(Error::Internal(format!(
                "weight space {mu} has dimension {} instead of {mult}",
                tracker.basis_len
            )));
        }

        let mut e = vec![None; n];
        let mut f = vec![None; n];
        for i in 0..n {
            if up[i].is_none() {
                continue;
            }
            let block: Vec<SparseVec> = basis_images
                .iter()
                .map(|v| {
                    SparseVec::from_sorted(
                        v.entries()
                            .iter()
                            .filter(|(k, _)| *k >= offsets[i] && *k < offsets[i + 1])
                            .map(|(k, x)| (k - offsets[i], x.clone()))
                            .collect(),
                    )
                })
                .collect();
            e[i] = Some(SparseMat::from_columns(dims[i], &block));
            f[i] = Some(SparseMat::from_columns(mult, f_cols[i].as_ref().unwrap()));
        }
        index.insert(mu.clone(), spaces.len());
        spaces.push(WeightSpace { weight: mu, dim: mult, e, f });
    }
    Ok(Construction { spaces, index })
}
