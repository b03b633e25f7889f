//! Satake diagrams of real forms, their restricted root systems and lifts of
//! restricted Weyl group elements to the full Weyl group.

pub mod catalog;
mod restricted;

use std::fmt;

use crate::rootsystem::{CartanType, DescentOrder, RootSystem, WeylWord};
use crate::{Error, Result};

pub use restricted::{RestrictedRootSystem, RestrictedW0Lift};

/// A real form, given by black nodes and an involution of the white nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeDiagram {
    name: String,
    cartan_type: CartanType,
    black: Vec<usize>,
    involution: Vec<usize>,
    signature: Option<i64>,
}

impl SatakeDiagram {
    /// Builds a diagram from black nodes and arrow pairs (all 1-based).
    pub fn new(name: &str, cartan_type: CartanType, black: &[usize], arrows: &[(usize, usize)]) -> Result<Self> {
        let r = cartan_type.rank;
        let bad = |reason: String| Error::Catalog { form: name.to_string(), reason };
        let mut black = black.to_vec();
        black.sort_unstable();
        black.dedup();
        if black.iter().any(|&b| b == 0 || b > r) {
            return Err(bad(format!("black node out of range 1..{r}")));
        }
        let mut involution: Vec<usize> = (1..=r).collect();
        for &(a, b) in arrows {
            if a == 0 || b == 0 || a > r || b > r || a == b {
                return Err(bad(format!("bad arrow {a}:{b}")));
            }
            if black.contains(&a) || black.contains(&b) {
                return Err(bad(format!("arrow {a}:{b} touches a black node")));
            }
            if involution[a - 1] != a || involution[b - 1] != b {
                return Err(bad(format!("node in arrow {a}:{b} already paired")));
            }
            involution[a - 1] = b;
            involution[b - 1] = a;
        }
        Ok(SatakeDiagram { name: name.to_string(), cartan_type, black, involution, signature: None })
    }

    /// The split real form of a complex type.
    pub fn split(t: CartanType) -> Self {
        SatakeDiagram {
            name: format!("split {t}"),
            cartan_type: t,
            black: Vec::new(),
            involution: (1..=t.rank).collect(),
            signature: None,
        }
    }

    pub(crate) fn with_signature(mut self, signature: i64) -> Self {
        self.signature = Some(signature);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn is_black(&self, i: usize) -> bool {
        self.black.binary_search(&i).is_ok()
    }

    /// The node involution, as the image of each node (identity on black).
    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        (1..=self.rank()).filter(|&i| self.involution[i - 1] > i).map(|i| (i, self.involution[i - 1])).collect()
    }

    /// White nodes grouped into involution orbits, ordered by smallest node.
    pub fn white_orbits(&self) -> Vec<Vec<usize>> {
        (1..=self.rank())
            .filter(|&i| !self.is_black(i) && self.involution[i - 1] >= i)
            .map(|i| {
                let j = self.involution[i - 1];
                if j == i {
                    vec![i]
                } else {
                    vec![i, j]
                }
            })
            .collect()
    }

    pub fn real_rank(&self) -> usize {
        self.white_orbits().len()
    }

    pub fn is_split(&self) -> bool {
        self.black.is_empty() && self.involution.iter().enumerate().all(|(k, &j)| j == k + 1)
    }

    /// Expected value of `dim p - dim k`, when the catalog records it.
    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    pub fn root_system(&self) -> RootSystem {
        RootSystem::new(self.cartan_type).expect("diagram types are valid")
    }

    pub fn restricted_roots(&self) -> Result<RestrictedRootSystem> {
        RestrictedRootSystem::new(self, &self.root_system())
    }

    /// Lift of the restricted simple reflection for white orbit `i`
    /// (0-based into `white_orbits`).
    pub fn lift_reflection(&self, i: usize) -> Result<WeylWord> {
        let rs = self.root_system();
        self.restricted_roots()?.lift_reflection(&rs, i, DescentOrder::Lowest)
    }

    pub fn restricted_w0_lift(&self) -> Result<RestrictedW0Lift> {
        self.restricted_w0_lift_with(DescentOrder::Lowest, DescentOrder::Lowest)
    }

    /// As `restricted_w0_lift`, with explicit choices of reduced words for the
    /// restricted longest element and for each lifted letter.
    pub fn restricted_w0_lift_with(&self, restricted: DescentOrder, lifts: DescentOrder) -> Result<RestrictedW0Lift> {
        let rs = self.root_system();
        self.restricted_roots()?.w0_lift(&rs, restricted, lifts)
    }
}

impl fmt::Display for SatakeDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::catalog::lookup;
    use super::*;
    use crate::exactla::Rat;
    use crate::rootsystem::Weight;

    /// Positive roots of B_r in the orthonormal basis, projected to the first
    /// `p` coordinates; nonzero images with positive first nonzero entry.
    fn b_projection(r: usize, p: usize) -> BTreeMap<Vec<i64>, usize> {
        let mut roots = Vec::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            roots.push(e);
            for j in i + 1..r {
                for s in [1, -1] {
                    let mut v = vec![0; r];
                    v[i] = 1;
                    v[j] = s;
                    roots.push(v);
                }
            }
        }
        let mut out = BTreeMap::new();
        for v in roots {
            let img: Vec<i64> = v[..p].to_vec();
            if img.iter().any(|&x| x != 0) {
                let img = if img.iter().find(|&&x| x != 0).unwrap() < &0 {
                    img.iter().map(|x| -x).collect()
                } else {
                    img
                };
                *out.entry(img).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn split_form_matches_complex_data() {
        let sd = lookup("so(3,4)").unwrap();
        assert!(sd.is_split());
        assert_eq!(sd.cartan_type().to_string(), "B3");
        let rr = sd.restricted_roots().unwrap();
        assert_eq!(rr.reduced_type().to_string(), "B3");
        assert!(rr.positive_roots().iter().all(|r| r.multiplicity == 1));
        let lift = sd.restricted_w0_lift().unwrap();
        let rs = sd.root_system();
        assert_eq!(lift.restricted_word, rs.longest_word(&[1, 2, 3]));
        assert_eq!(lift.full_word, lift.restricted_word);
        for i in 0..3 {
            assert_eq!(sd.lift_reflection(i).unwrap(), WeylWord(vec![i + 1]));
        }
        let w = Weight(vec![2, 0, 5]);
        let restricted: Vec<i64> = rr.restrict_weight(&w).iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(restricted, vec![2, 0, 5]);
    }

    #[test]
    fn so_2_7_restricted_system() {
        let sd = lookup("so(2,7)").unwrap();
        assert_eq!(sd.black(), &[3, 4]);
        let rr = sd.restricted_roots().unwrap();
        assert_eq!(rr.type_label(), "B2");
        // restricted simple roots are e1 - e2 and e2
        let ours: BTreeMap<Vec<i64>, usize> = rr
            .positive_roots()
            .iter()
            .map(|r| (vec![r.coords[0], r.coords[1] - r.coords[0]], r.multiplicity))
            .collect();
        assert_eq!(ours, b_projection(4, 2));
        let lift = sd.restricted_w0_lift().unwrap();
        assert_eq!(lift.restricted_word.len(), 4);
        assert_eq!(
            lift.letter_lifts[0],
            sd.root_system().longest_word(&[1, 3, 4]).concat(&sd.root_system().longest_word(&[3, 4]))
        );
    }

    #[test]
    fn restriction_of_weights_for_so_2_7() {
        let sd = lookup("so(2,7)").unwrap();
        let rr = sd.restricted_roots().unwrap();
        assert_eq!(crate::exactla::rank(rr.weight_map()), 2);
        let r1 = rr.restrict_weight(&Weight::fundamental(4, 1));
        let r2 = rr.restrict_weight(&Weight::fundamental(4, 2));
        assert_eq!(r1, vec![Rat::ONE, Rat::ZERO]);
        assert_eq!(r2, vec![Rat::ZERO, Rat::from_int(2)]);
        assert!(rr.restrict_weight(&Weight::zero(4)).iter().all(Rat::is_zero));
    }

    #[test]
    fn so_star_10_is_bc2() {
        let sd = lookup("so*(10)").unwrap();
        assert_eq!(sd.black(), &[1, 3]);
        assert_eq!(sd.arrows(), vec![(4, 5)]);
        let rr = sd.restricted_roots().unwrap();
        assert!(rr.is_non_reduced());
        assert_eq!(rr.type_label(), "BC2");
        let mut mults: Vec<usize> = rr.positive_roots().iter().map(|r| r.multiplicity).collect();
        mults.sort_unstable();
        assert_eq!(mults, vec![1, 1, 4, 4, 4, 4]);
    }

    #[test]
    fn split_g2_lift_is_longest_word() {
        let sd = lookup("G").unwrap();
        let lift = sd.restricted_w0_lift().unwrap();
        assert_eq!(lift.restricted_word.len(), 6);
        assert_eq!(lift.full_word.len(), 6);
    }

    #[test]
    fn every_entry_satisfies_restriction_invariants() {
        for sd in catalog::entries().unwrap() {
            let rs = sd.root_system();
            let rr = sd.restricted_roots().unwrap();
            let zero = rs.positive_roots().iter().filter(|b| rr.restrict_root(b).iter().all(|&c| c == 0)).count();
            assert_eq!(zero, rs.parabolic_positive_roots(sd.black()).len(), "{sd}");
            let total: usize = rr.positive_roots().iter().map(|r| r.multiplicity).sum();
            assert_eq!(total + zero, rs.num_positive_roots(), "{sd}");
            for order in [DescentOrder::Lowest, DescentOrder::Highest] {
                let lift = sd.restricted_w0_lift_with(order, order).unwrap();
                let twice = lift.full_word.concat(&lift.full_word);
                let m = rs.word_matrix(&twice);
                assert_eq!(rr.weight_map().mul(&m), *rr.weight_map(), "{sd}");
            }
        }
    }

    #[test]
    fn exceptional_restricted_types() {
        let expect = [
            ("EI", "E6"),
            ("EII", "F4"),
            ("EIII", "BC2"),
            ("EIV", "A2"),
            ("EV", "E7"),
            ("EVI", "F4"),
            ("EVII", "C3"),
            ("EVIII", "E8"),
            ("EIX", "F4"),
            ("FI", "F4"),
            ("FII", "BC1"),
            ("G", "G2"),
        ];
        for (name, label) in expect {
            assert_eq!(lookup(name).unwrap().restricted_roots().unwrap().type_label(), label, "{name}");
        }
    }
}
