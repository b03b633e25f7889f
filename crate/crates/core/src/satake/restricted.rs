use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::SatakeDiagram;
use crate::exactla::{Rat, SparseMat};
use crate::rootsystem::{CartanType, DescentOrder, RootSystem, Weight, WeylWord};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedRoot {
    /// Coordinates in the restricted simple roots.
    pub coords: Vec<i64>,
    pub multiplicity: usize,
}

/// The restricted root system of a real form together with the restriction
/// maps on roots and weights.
#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    form: String,
    black: Vec<usize>,
    orbits: Vec<Vec<usize>>,
    theta: Vec<Vec<i64>>,
    gram: Vec<Vec<Rat>>,
    reduced: RootSystem,
    positive: Vec<RestrictedRoot>,
    non_reduced: bool,
    weight_map: SparseMat,
}

fn apply_word_to_root(rs: &RootSystem, w: &WeylWord, beta: &[i64]) -> Vec<i64> {
    w.letters().iter().rev().fold(beta.to_vec(), |acc, &i| rs.reflect_root(&acc, i))
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

impl RestrictedRootSystem {
    pub(crate) fn new(sd: &SatakeDiagram, rs: &RootSystem) -> Result<Self> {
        let fail = |reason: String| Error::Catalog { form: sd.name().to_string(), reason };
        let n = rs.rank();
        let black = sd.black().to_vec();
        let w_black = rs.longest_word(&black);

        let theta: Vec<Vec<i64>> = (0..n)
            .map(|j| {
                if sd.is_black(j + 1) {
                    unit(n, j)
                } else {
                    let img = apply_word_to_root(rs, &w_black, &unit(n, sd.involution()[j] - 1));
                    img.into_iter().map(|c| -c).collect()
                }
            })
            .collect();
        let apply_theta = |beta: &[i64]| -> Vec<i64> {
            let mut out = vec![0; n];
            for (j, &b) in beta.iter().enumerate() {
                for (o, t) in out.iter_mut().zip(&theta[j]) {
                    *o += b * t;
                }
            }
            out
        };

        for j in 0..n {
            if apply_theta(&theta[j]) != unit(n, j) {
                return Err(fail(format!("diagram involution does not square to 1 at node {}", j + 1)));
            }
            for k in 0..n {
                if rs.pair_roots(&theta[j], &theta[k]) != rs.pair_roots(&unit(n, j), &unit(n, k)) {
                    return Err(fail("diagram involution is not an isometry".into()));
                }
            }
        }

        let black_positive = rs.parabolic_positive_roots(&black);
        let black_set: HashSet<&Vec<i64>> = black_positive.iter().collect();
        for beta in rs.positive_roots() {
            if !black_set.contains(beta) && apply_theta(beta).iter().any(|&c| c > 0) {
                return Err(fail(format!("positive system not compatible with the involution at root {beta:?}")));
            }
        }

        let orbits = sd.white_orbits();
        let m = orbits.len();
        if m == 0 {
            return Err(fail("no white nodes".into()));
        }

        // (R x, R y) = ((x, y) - (x, θ y)) / 2 for the orthogonal projection R.
        let gram: Vec<Vec<Rat>> = orbits
            .iter()
            .map(|o| {
                orbits
                    .iter()
                    .map(|p| {
                        let x = unit(n, o[0] - 1);
                        let y = unit(n, p[0] - 1);
                        Rat::new(rs.pair_roots(&x, &y) - rs.pair_roots(&x, &theta[p[0] - 1]), 2)
                    })
                    .collect()
            })
            .collect();
        for o in orbits.iter().filter(|o| o.len() == 2) {
            let diff: Vec<i64> = (0..n).map(|k| unit(n, o[0] - 1)[k] - unit(n, o[1] - 1)[k]).collect();
            if apply_theta(&diff) != diff {
                return Err(fail(format!("arrow {}:{} pairs nodes with different restrictions", o[0], o[1])));
            }
        }

        let mut cartan = vec![vec![0i64; m]; m];
        for o in 0..m {
            for p in 0..m {
                let c = &(&Rat::from_int(2) * &gram[o][p]) / &gram[o][o];
                cartan[o][p] = c.to_i64().filter(|_| c.is_integer()).ok_or_else(|| {
                    fail(format!("restricted Cartan entry {c} is not an integer"))
                })?;
            }
        }
        let reduced = RootSystem::from_cartan_matrix(cartan).map_err(|e| fail(e.to_string()))?;

        let mut counts: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        let mut zero = 0;
        for beta in rs.positive_roots() {
            let c: Vec<i64> = orbits.iter().map(|o| o.iter().map(|&i| beta[i - 1]).sum()).collect();
            if c.iter().all(|&x| x == 0) {
                zero += 1;
            } else {
                *counts.entry(c).or_default() += 1;
            }
        }
        if zero != black_positive.len() {
            return Err(fail("roots restricting to zero are not the black roots".into()));
        }
        let reduced_roots: HashSet<&Vec<i64>> = reduced.positive_roots().iter().collect();
        let mut non_reduced = false;
        for c in counts.keys() {
            if reduced_roots.contains(c) {
                continue;
            }
            let half: Option<Vec<i64>> = c.iter().map(|&x| (x % 2 == 0).then_some(x / 2)).collect();
            match half {
                Some(h) if reduced_roots.contains(&h) => non_reduced = true,
                _ => return Err(fail(format!("restriction {c:?} is not a restricted root"))),
            }
        }
        if reduced_roots.iter().any(|r| !counts.contains_key(*r)) {
            return Err(fail("restricted roots do not fill the reduced system".into()));
        }

        if let Some(sig) = sd.signature() {
            let got = 2 * m as i64 - n as i64 - 2 * black_positive.len() as i64;
            if got != sig {
                return Err(fail(format!("signature {got} differs from recorded {sig}")));
            }
        }

        let mut positive: Vec<RestrictedRoot> =
            counts.into_iter().map(|(coords, multiplicity)| RestrictedRoot { coords, multiplicity }).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.coords.iter().sum();
            let hb: i64 = b.coords.iter().sum();
            ha.cmp(&hb).then_with(|| b.coords.cmp(&a.coords))
        });

        let d = rs.half_lengths();
        let theta_ref = &theta;
        let triplets = orbits.iter().enumerate().flat_map(|(oi, o)| {
            let rep = o[0] - 1;
            let gram_oo = gram[oi][oi].clone();
            (0..n).filter_map(move |j| {
                let r_j = Rat::new(unit(n, rep)[j] - theta_ref[rep][j], 2);
                let v = &(&r_j * &Rat::from_int(2 * d[j])) / &gram_oo;
                (!v.is_zero()).then_some((oi, j, v))
            })
        });
        let weight_map = SparseMat::from_triplets(m, n, triplets.collect::<Vec<_>>());

        Ok(RestrictedRootSystem {
            form: sd.name().to_string(),
            black,
            orbits,
            theta,
            gram,
            reduced,
            positive,
            non_reduced,
            weight_map,
        })
    }

    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    /// White orbits; restricted simple root `k` is the image of orbit `k`.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn positive_roots(&self) -> &[RestrictedRoot] {
        &self.positive
    }

    pub fn multiplicity(&self, coords: &[i64]) -> usize {
        self.positive.iter().find(|r| r.coords == coords).map_or(0, |r| r.multiplicity)
    }

    pub fn is_non_reduced(&self) -> bool {
        self.non_reduced
    }

    /// The reduced root system used for all restricted Weyl group purposes.
    pub fn reduced_system(&self) -> &RootSystem {
        &self.reduced
    }

    pub fn reduced_type(&self) -> CartanType {
        self.reduced.cartan_type()
    }

    /// Type label, `BCn` for non-reduced systems.
    pub fn type_label(&self) -> String {
        if self.non_reduced {
            format!("BC{}", self.rank())
        } else {
            self.reduced_type().to_string()
        }
    }

    /// Inner products of the restricted simple roots.
    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    /// The involution of the root lattice attached to the diagram, as the
    /// images of the simple roots.
    pub fn theta(&self) -> &[Vec<i64>] {
        &self.theta
    }

    /// Linear map from fundamental-weight coordinates to restricted weight
    /// coordinates `<λ̄, ᾱ_k^∨>`.
    pub fn weight_map(&self) -> &SparseMat {
        &self.weight_map
    }

    pub fn restrict_weight(&self, w: &Weight) -> Vec<Rat> {
        let v = crate::exactla::SparseVec::from_dense(&w.coords().iter().map(|&c| Rat::from_int(c)).collect::<Vec<_>>());
        self.weight_map.mul_vec(&v).to_dense(self.rank())
    }

    /// Restricted-simple-root coordinates of the restriction of a root.
    pub fn restrict_root(&self, beta: &[i64]) -> Vec<i64> {
        self.orbits.iter().map(|o| o.iter().map(|&i| beta[i - 1]).sum()).collect()
    }

    /// Matrix of the restricted simple reflection `k` (0-based) on
    /// restricted weight coordinates.
    pub fn reflection_matrix(&self, k: usize) -> SparseMat {
        let m = self.rank();
        let c = self.reduced.cartan_matrix();
        SparseMat::from_triplets(
            m,
            m,
            (0..m).flat_map(|row| {
                let mut v = vec![];
                if row != k {
                    v.push((row, row, Rat::ONE));
                }
                let entry = if row == k { 1 - c[row][k] } else { -c[row][k] };
                if entry != 0 {
                    v.push((row, k, Rat::from_int(entry)));
                }
                v
            }),
        )
    }

    /// Matrix of a restricted Weyl word (1-based letters) on restricted
    /// weight coordinates.
    pub fn word_matrix(&self, w: &WeylWord) -> SparseMat {
        w.letters()
            .iter()
            .fold(SparseMat::identity(self.rank()), |acc, &k| acc.mul(&self.reflection_matrix(k - 1)))
    }

    fn fail(&self, reason: String) -> Error {
        Error::Catalog { form: self.form.clone(), reason }
    }

    /// Word in the full Weyl group lifting the restricted simple reflection
    /// for orbit `k` (0-based): the longest element of the black nodes plus
    /// the orbit, times the longest element of the black nodes.
    pub fn lift_reflection(&self, rs: &RootSystem, k: usize, order: DescentOrder) -> Result<WeylWord> {
        let mut subset = self.black.clone();
        subset.extend(&self.orbits[k]);
        subset.sort_unstable();
        let w = rs.longest_word_with(&subset, order).concat(&rs.longest_word_with(&self.black, order));
        let lhs = self.weight_map.mul(&rs.word_matrix(&w));
        let rhs = self.reflection_matrix(k).mul(&self.weight_map);
        if lhs != rhs {
            return Err(self.fail(format!("lift of restricted reflection {} does not commute with restriction", k + 1)));
        }
        Ok(w)
    }

    pub fn w0_lift(&self, rs: &RootSystem, restricted: DescentOrder, lifts: DescentOrder) -> Result<RestrictedW0Lift> {
        let all: Vec<usize> = (1..=self.rank()).collect();
        let restricted_word = self.reduced.longest_word_with(&all, restricted);
        let letter_lifts: Vec<WeylWord> = (0..self.rank())
            .map(|k| self.lift_reflection(rs, k, lifts))
            .collect::<Result<_>>()?;
        let full_word = restricted_word
            .letters()
            .iter()
            .fold(WeylWord::empty(), |acc, &k| acc.concat(&letter_lifts[k - 1]));

        let induced = self.weight_map.mul(&rs.word_matrix(&full_word));
        let expected = self.word_matrix(&restricted_word).mul(&self.weight_map);
        if induced != expected {
            return Err(self.fail("lift of the longest restricted element is inconsistent".into()));
        }
        for j in 0..rs.rank() {
            if induced.column(j).entries().iter().any(|(_, v)| v.signum() > 0) {
                return Err(self.fail(format!("lifted longest element keeps ϖ{} partly dominant", j + 1)));
            }
        }
        Ok(RestrictedW0Lift { restricted_word, letter_lifts, full_word })
    }
}

/// A word in the full Weyl group inducing the longest restricted element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedW0Lift {
    pub restricted_word: WeylWord,
    /// Lift of each restricted simple reflection, by restricted index.
    pub letter_lifts: Vec<WeylWord>,
    pub full_word: WeylWord,
}

impl RestrictedW0Lift {
    /// A reduced word for the same Weyl group element as `full_word`.
    pub fn reduced_word(&self, rs: &RootSystem, order: DescentOrder) -> WeylWord {
        rs.reduced_word(&self.full_word, order)
    }
}
