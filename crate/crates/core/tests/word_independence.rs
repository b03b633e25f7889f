use proptest::prelude::*;

use satake_w0::cache::SliceCache;
use satake_w0::rootsystem::{DescentOrder, Weight};
use satake_w0::satake::catalog::lookup;
use satake_w0::w0action::{classify_slice, lift_word, WordChoice};

fn order() -> impl Strategy<Value = DescentOrder> {
    prop_oneof![Just(DescentOrder::Lowest), Just(DescentOrder::Highest)]
}

fn choice() -> impl Strategy<Value = WordChoice> {
    (order(), order(), order()).prop_map(|(restricted, lifts, reduction)| WordChoice { restricted, lifts, reduction })
}

const FORMS: [&str; 9] = ["G", "FI", "so(1,4)", "so(2,5)", "so(3,4)", "so(2,6)", "so(1,7)", "so*(8)", "so*(10)"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The restriction to V^L does not depend on how the lift is written.
    #[test]
    fn verdict_and_matrix_are_word_independent(
        f in 0..FORMS.len(),
        coords in proptest::collection::vec(0i64..=2, 5),
        a in choice(),
        b in choice(),
    ) {
        let sd = lookup(FORMS[f]).unwrap();
        let rs = sd.root_system();
        let mut l: Vec<i64> = coords[..sd.rank()].to_vec();
        // keep FI modules small
        if FORMS[f] == "FI" {
            l = l.iter().map(|&c| c.min(1)).collect();
            l[1] = 0;
            l[2] = 0;
        }
        let l = Weight(l);
        let Ok(slice) = SliceCache::disabled().get(&rs, &l, 4000) else { return Ok(()) };
        let dim = rs.weyl_dim(&l).unwrap();
        let x = classify_slice(&slice, &sd, dim.clone(), a).unwrap();
        let y = classify_slice(&slice, &sd, dim, b).unwrap();
        prop_assert_eq!(x.verdict, y.verdict);
        prop_assert_eq!(&x.matrix, &y.matrix);
        prop_assert_eq!(&x.certificate, &y.certificate);
    }
}

#[test]
fn word_choices_differ_but_agree_on_the_restricted_lattice() {
    let mut distinct = 0;
    for f in FORMS {
        let sd = lookup(f).unwrap();
        let rr = sd.restricted_roots().unwrap();
        let rs = sd.root_system();
        let a = lift_word(&sd, WordChoice::default()).unwrap();
        let b = lift_word(&sd, WordChoice::alternative()).unwrap();
        if a != b {
            distinct += 1;
        }
        for i in 1..=rs.rank() {
            let w = Weight::fundamental(rs.rank(), i);
            assert_eq!(rr.restrict_weight(&rs.apply_word(&a, &w)), rr.restrict_weight(&rs.apply_word(&b, &w)), "{f} w{i}");
        }
    }
    assert!(distinct >= 7, "{distinct}");
}
