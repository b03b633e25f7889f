use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigUint;

use crate::rootsystem::{RootSystem, Weight};
use crate::{Error, Result};

/// Multiplicities of the dominant weights of an irreducible module.
#[derive(Clone, Debug)]
pub struct DominantMultiplicities {
    lambda: Weight,
    mults: HashMap<Weight, u64>,
}

impl DominantMultiplicities {
    /// Freudenthal's recursion, top-down by depth below `lambda`.
    pub fn new(rs: &RootSystem, lambda: &Weight) -> Result<Self> {
        if lambda.rank() != rs.rank() {
            return Err(Error::RankMismatch { expected: rs.rank(), got: lambda.rank() });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        let roots: Vec<(Vec<i64>, Weight)> =
            rs.positive_roots().iter().map(|a| (a.clone(), rs.root_to_weight(a))).collect();

        // Dominant weights below lambda are connected to it by subtracting
        // positive roots without leaving the dominant chamber.
        let n = rs.rank();
        let mut depth: HashMap<Weight, Vec<i64>> = HashMap::new();
        depth.insert(lambda.clone(), vec![0; n]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            let d = depth[&mu].clone();
            for (a, aw) in &roots {
                let nu = mu.sub(aw);
                if nu.is_dominant() && !depth.contains_key(&nu) {
                    depth.insert(nu.clone(), d.iter().zip(a).map(|(x, y)| x + y).collect());
                    queue.push_back(nu);
                }
            }
        }
        let mut order: Vec<(Weight, Vec<i64>)> = depth.into_iter().collect();
        order.sort_by(|(w1, d1), (w2, d2)| {
            let h1: i64 = d1.iter().sum();
            let h2: i64 = d2.iter().sum();
            h1.cmp(&h2).then_with(|| w2.cmp(w1))
        });

        let rho = rs.rho();
        let lr = lambda.add(&rho);
        let mut mults: HashMap<Weight, u64> = HashMap::with_capacity(order.len());
        mults.insert(lambda.clone(), 1);
        for (mu, beta) in order.into_iter().skip(1) {
            // |λ+ρ|² - |μ+ρ|² = 2(λ+ρ, β) - (β, β) with β = λ - μ
            let denom = 2 * rs.pair_weight_root(&lr, &beta) - rs.pair_roots(&beta, &beta);
            let mut num: i128 = 0;
            for (a, aw) in &roots {
                let mut nu = mu.add(aw);
                loop {
                    let m = mults.get(&rs.dominant_conjugate(&nu)).copied().unwrap_or(0);
                    if m == 0 {
                        break;
                    }
                    num += m as i128 * rs.pair_weight_root(&nu, a) as i128;
                    nu = nu.add(aw);
                }
            }
            let num = 2 * num;
            if denom <= 0 || num % denom as i128 != 0 {
                return Err(Error::Internal(format!("Freudenthal recursion failed at {mu}")));
            }
            let m = (num / denom as i128) as u64;
            if m > 0 {
                mults.insert(mu, m);
            }
        }
        Ok(DominantMultiplicities { lambda: lambda.clone(), mults })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    /// Multiplicity of an arbitrary weight.
    pub fn mult(&self, rs: &RootSystem, mu: &Weight) -> u64 {
        self.mults.get(&rs.dominant_conjugate(mu)).copied().unwrap_or(0)
    }

    /// Dominant weights with their multiplicities, sorted.
    pub fn dominant(&self) -> BTreeMap<Weight, u64> {
        self.mults.iter().map(|(w, m)| (w.clone(), *m)).collect()
    }
}

/// All weights of an irreducible module with their multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    pub lambda: Weight,
    pub entries: BTreeMap<Weight, u64>,
}

impl WeightSystem {
    pub fn total(&self) -> BigUint {
        self.entries.values().map(|&m| BigUint::from(m)).sum()
    }

    pub fn mult(&self, mu: &Weight) -> u64 {
        self.entries.get(mu).copied().unwrap_or(0)
    }
}

pub fn weight_system(rs: &RootSystem, lambda: &Weight) -> Result<WeightSystem> {
    let dm = DominantMultiplicities::new(rs, lambda)?;
    let mut entries = BTreeMap::new();
    for (dom, m) in dm.dominant() {
        let mut queue = vec![dom.clone()];
        entries.insert(dom, m);
        while let Some(w) = queue.pop() {
            for i in 1..=rs.rank() {
                if w.coords()[i - 1] > 0 {
                    let v = rs.reflect(&w, i);
                    if !entries.contains_key(&v) {
                        entries.insert(v.clone(), m);
                        queue.push(v);
                    }
                }
            }
        }
    }
    Ok(WeightSystem { lambda: lambda.clone(), entries })
}
