//! Complex simple root systems with Bourbaki numbering, weights and Weyl words.
//!
//! Conventions used throughout the crate:
//!
//! * the Cartan matrix is `a[i][j] = <α_i^∨, α_j>`, so `α_j` has fundamental
//!   weight coordinates given by column `j`;
//! * roots are integer vectors in the simple-root basis;
//! * weights are integer vectors in the fundamental-weight basis;
//! * the invariant form is normalised with `(α_i, α_i) = 2 d_i`, `d_i = 1` on
//!   short simple roots, so every pairing used below is an integer.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exactla::{Rat, SparseMat};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidCartanType(format!("{family:?}{rank}")))
        }
    }

    /// Number of positive roots, by the classical closed forms.
    pub fn num_positive_roots(&self) -> usize {
        let r = self.rank;
        match self.family {
            Family::A => r * (r + 1) / 2,
            Family::B | Family::C => r * r,
            Family::D => r * (r - 1),
            Family::E => [36, 63, 120][r - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Half squared lengths of the simple roots (short roots have 1).
    fn half_lengths(&self) -> Vec<i64> {
        let r = self.rank;
        match self.family {
            Family::A | Family::D | Family::E => vec![1; r],
            Family::B => (1..=r).map(|i| if i < r { 2 } else { 1 }).collect(),
            Family::C => (1..=r).map(|i| if i < r { 1 } else { 2 }).collect(),
            Family::F => vec![2, 2, 1, 1],
            Family::G => vec![1, 3],
        }
    }

    /// Dynkin diagram edges, 1-based, Bourbaki numbering.
    fn edges(&self) -> Vec<(usize, usize)> {
        let r = self.rank;
        let chain = |n: usize| (1..n).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => chain(r),
            Family::D => {
                let mut e = chain(r - 1);
                e.push((r - 2, r));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3), (2, 4)];
                e.extend((3..r).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let d = self.half_lengths();
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            let (i, j) = (i - 1, j - 1);
            let m = d[i].max(d[j]);
            a[i][j] = -m / d[i];
            a[j][i] = -m / d[j];
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidCartanType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().ok_or_else(bad)?.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `ϖ_i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = std::num::ParseIntError;

    /// Parses comma-separated coordinates, e.g. `1,0,2`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        s.split(',').map(|x| x.trim().parse()).collect::<std::result::Result<_, _>>().map(Weight)
    }
}

/// A product of simple reflections; letters are 1-based, the leftmost
/// letter acts last.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn empty() -> Self {
        WeylWord(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        WeylWord(v)
    }

    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// Which descent is taken first when building reduced words greedily.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DescentOrder {
    #[default]
    Lowest,
    Highest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    half_lengths: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
    inverse_cartan: Vec<Vec<Rat>>,
}

impl RootSystem {
    pub fn new(t: CartanType) -> Result<Self> {
        let t = CartanType::new(t.family, t.rank)?;
        Self::from_parts(t, t.cartan_matrix(), t.half_lengths())
    }

    /// Builds the root system of an arbitrary connected Cartan matrix and
    /// identifies its type. Numbering follows the matrix, not Bourbaki.
    pub fn from_cartan_matrix(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let d = symmetrizer(&cartan)?;
        let n = cartan.len();
        let provisional = CartanType { family: Family::A, rank: n };
        let rs = Self::from_parts(provisional, cartan, d)?;
        let t = rs.identify_type()?;
        Ok(RootSystem { cartan_type: t, ..rs })
    }

    fn from_parts(cartan_type: CartanType, cartan: Vec<Vec<i64>>, half_lengths: Vec<i64>) -> Result<Self> {
        let n = cartan.len();
        let inverse_cartan = invert_integer_matrix(&cartan)
            .ok_or_else(|| Error::InvalidCartanType(format!("singular Cartan matrix {cartan:?}")))?;
        let mut rs = RootSystem { cartan_type, cartan, half_lengths, positive_roots: Vec::new(), inverse_cartan };
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        seen.extend(queue.iter().cloned());
        let mut roots = queue.clone();
        let limit = 1000;
        while let Some(beta) = queue.pop() {
            for i in 0..n {
                let gamma = rs.reflect_root(&beta, i + 1);
                if gamma.iter().all(|&c| c >= 0) && !seen.contains(&gamma) {
                    if roots.len() >= limit {
                        return Err(Error::InvalidCartanType("root system is not finite".into()));
                    }
                    seen.insert(gamma.clone());
                    roots.push(gamma.clone());
                    queue.push(gamma);
                }
            }
        }
        roots.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        rs.positive_roots = roots;
        Ok(rs)
    }

    fn identify_type(&self) -> Result<CartanType> {
        let n = self.rank();
        let np = self.positive_roots.len();
        let dmax = *self.half_lengths.iter().max().unwrap();
        let short = self.half_lengths.iter().filter(|&&d| d < dmax).count();
        let family = if np == n * (n + 1) / 2 && short == 0 {
            Family::A
        } else if np == n * n && (n == 2 || short == 1) {
            Family::B
        } else if np == n * n && short == n - 1 {
            Family::C
        } else if n >= 4 && np == n * (n - 1) && short == 0 {
            Family::D
        } else if short == 0 && [(6, 36), (7, 63), (8, 120)].contains(&(n, np)) {
            Family::E
        } else if n == 4 && np == 24 {
            Family::F
        } else if n == 2 && np == 6 {
            Family::G
        } else {
            return Err(Error::InvalidCartanType(format!("unrecognised Cartan matrix {:?}", self.cartan)));
        };
        CartanType::new(family, n)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Half squared lengths `d_i` of the simple roots.
    pub fn half_lengths(&self) -> &[i64] {
        &self.half_lengths
    }

    /// Positive roots in simple-root coordinates, sorted by height; the
    /// simple roots come first, in order.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Fundamental-weight coordinates of a root-lattice vector.
    pub fn root_to_weight(&self, beta: &[i64]) -> Weight {
        Weight(
            self.cartan
                .iter()
                .map(|row| row.iter().zip(beta).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root(&self, w: &Weight) -> Vec<Rat> {
        self.inverse_cartan
            .iter()
            .map(|row| row.iter().zip(&w.0).map(|(a, &c)| a * &Rat::from_int(c)).sum())
            .collect()
    }

    pub fn inverse_cartan(&self) -> &[Vec<Rat>] {
        &self.inverse_cartan
    }

    pub fn in_root_lattice(&self, w: &Weight) -> bool {
        self.weight_to_root(w).iter().all(Rat::is_integer)
    }

    /// `(μ, β)` for a weight `μ` and a root-lattice vector `β`.
    pub fn pair_weight_root(&self, mu: &Weight, beta: &[i64]) -> i64 {
        beta.iter().zip(&self.half_lengths).zip(&mu.0).map(|((b, d), m)| b * d * m).sum()
    }

    /// `(β, γ)` for two root-lattice vectors.
    pub fn pair_roots(&self, beta: &[i64], gamma: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                s += beta[i] * gamma[j] * self.half_lengths[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// `(μ, ν)` for two weights, exactly.
    pub fn pair_weights(&self, mu: &Weight, nu: &Weight) -> Rat {
        let nu_root = self.weight_to_root(nu);
        nu_root
            .iter()
            .zip(&self.half_lengths)
            .zip(&mu.0)
            .map(|((x, d), m)| x * &Rat::from_int(d * m))
            .sum()
    }

    /// Simple reflection `s_i` (1-based) on a weight.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i - 1];
        if c == 0 {
            return w.clone();
        }
        Weight(w.0.iter().enumerate().map(|(k, x)| x - c * self.cartan[k][i - 1]).collect())
    }

    /// Simple reflection `s_i` (1-based) on a root-lattice vector.
    pub fn reflect_root(&self, beta: &[i64], i: usize) -> Vec<i64> {
        let pairing: i64 = self.cartan[i - 1].iter().zip(beta).map(|(a, b)| a * b).sum();
        let mut out = beta.to_vec();
        out[i - 1] -= pairing;
        out
    }

    fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: w.rank() });
        }
        Ok(())
    }

    /// Applies the Weyl element `w` to a weight (rightmost letter first).
    pub fn apply_word(&self, w: &WeylWord, v: &Weight) -> Weight {
        w.0.iter().rev().fold(v.clone(), |acc, &i| self.reflect(&acc, i))
    }

    /// Matrix of the Weyl element `w` on fundamental-weight coordinates.
    pub fn word_matrix(&self, w: &WeylWord) -> SparseMat {
        let n = self.rank();
        let cols: Vec<_> = (1..=n)
            .map(|i| {
                let img = self.apply_word(w, &Weight::fundamental(n, i));
                crate::exactla::SparseVec::from_dense(&img.0.iter().map(|&c| Rat::from_int(c)).collect::<Vec<_>>())
            })
            .collect();
        SparseMat::from_columns(n, &cols)
    }

    /// Reduced word for the longest element of the parabolic subgroup
    /// generated by `subset` (1-based indices).
    pub fn longest_word(&self, subset: &[usize]) -> WeylWord {
        self.longest_word_with(subset, DescentOrder::Lowest)
    }

    pub fn longest_word_with(&self, subset: &[usize], order: DescentOrder) -> WeylWord {
        let mut v = Weight::zero(self.rank());
        for &i in subset {
            v.0[i - 1] = 1;
        }
        let mut applied = Vec::new();
        loop {
            let cands = subset.iter().copied().filter(|&j| v.0[j - 1] > 0);
            let next = match order {
                DescentOrder::Lowest => cands.min(),
                DescentOrder::Highest => cands.max(),
            };
            let Some(j) = next else { break };
            v = self.reflect(&v, j);
            applied.push(j);
        }
        applied.reverse();
        WeylWord(applied)
    }

    /// A reduced word for the Weyl element represented by `w`.
    pub fn reduced_word(&self, w: &WeylWord, order: DescentOrder) -> WeylWord {
        let mut v = self.apply_word(w, &self.rho());
        let mut letters = Vec::new();
        loop {
            let mut cands = (1..=self.rank()).filter(|&j| v.0[j - 1] < 0);
            let next = match order {
                DescentOrder::Lowest => cands.next(),
                DescentOrder::Highest => cands.next_back(),
            };
            let Some(j) = next else { break };
            v = self.reflect(&v, j);
            letters.push(j);
        }
        WeylWord(letters)
    }

    /// Dominant Weyl conjugate of a weight.
    pub fn dominant_conjugate(&self, w: &Weight) -> Weight {
        let mut v = w.clone();
        while let Some(j) = v.0.iter().position(|&c| c < 0) {
            v = self.reflect(&v, j + 1);
        }
        v
    }

    /// Dimension of the irreducible module with highest weight `lambda`.
    pub fn weyl_dim(&self, lambda: &Weight) -> Result<BigUint> {
        self.check_rank(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let rho = self.rho();
        let shifted = lambda.add(&rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for alpha in &self.positive_roots {
            num *= BigInt::from(self.pair_weight_root(&shifted, alpha));
            den *= BigInt::from(self.pair_weight_root(&rho, alpha));
        }
        debug_assert!((&num % &den) == BigInt::from(0));
        let q = num / den;
        debug_assert!(!q.is_negative());
        Ok(q.to_biguint().expect("positive dimension"))
    }

    /// Sub-root-system spanned by the simple roots in `subset`, as a list of
    /// its positive roots.
    pub fn parabolic_positive_roots(&self, subset: &[usize]) -> Vec<Vec<i64>> {
        self.positive_roots
            .iter()
            .filter(|beta| beta.iter().enumerate().all(|(k, &c)| c == 0 || subset.contains(&(k + 1))))
            .cloned()
            .collect()
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let bad = || Error::InvalidCartanType(format!("Cartan matrix {a:?} is not symmetrizable and connected"));
    let mut d: Vec<Option<Rat>> = vec![None; n];
    if n == 0 {
        return Err(bad());
    }
    d[0] = Some(Rat::ONE);
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i == j || a[i][j] == 0 {
                continue;
            }
            if a[j][i] == 0 {
                return Err(bad());
            }
            // d_i a_ij = d_j a_ji
            let dj = d[i].as_ref().unwrap() * &Rat::new(a[i][j], a[j][i]);
            match &d[j] {
                None => {
                    d[j] = Some(dj);
                    stack.push(j);
                }
                Some(x) if *x != dj => return Err(bad()),
                _ => {}
            }
        }
    }
    let d: Vec<Rat> = d.into_iter().collect::<Option<_>>().ok_or_else(bad)?;
    let min = d.iter().min().unwrap().clone();
    let scaled: Vec<Rat> = d.iter().map(|x| x / &min).collect();
    // Lengths ratios are 1, 2 or 3, so the scaled values are integers.
    scaled.iter().map(|x| x.to_i64().ok_or_else(bad)).collect()
}

fn invert_integer_matrix(a: &[Vec<i64>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_int(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}
