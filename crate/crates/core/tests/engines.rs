use choosekit::checker::{backtrack_coloring, decide_choosable, independent_transversal, transversal_coloring, Budget, Verdict};
use choosekit::model::{Color, ColorSystem, ListInstance, RegimePoint};
use choosekit::oracle;
use proptest::prelude::*;

fn arb_list(universe: usize, k: usize) -> impl Strategy<Value = Vec<Color>> {
    proptest::sample::subsequence((0..universe as Color).collect::<Vec<_>>(), k)
}

fn arb_instance(max_colors: usize) -> impl Strategy<Value = ListInstance> {
    (2..=max_colors, 1usize..=3, 1usize..=3, 1usize..=4, 1usize..=4).prop_flat_map(|(u, ka, kb, na, nb)| {
        let (ka, kb) = (ka.min(u), kb.min(u));
        (
            proptest::collection::vec(arb_list(u, ka), na),
            proptest::collection::vec(arb_list(u, kb), nb),
        )
            .prop_map(move |(a, b)| ListInstance::complete(u, ka, kb, a, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn engines_agree(inst in arb_instance(10)) {
        let bt = backtrack_coloring(&inst, Budget::unlimited()).unwrap();
        let tr = transversal_coloring(&inst, Budget::unlimited()).unwrap();
        prop_assert_eq!(bt.colorable(), tr.colorable());
        for c in [&bt.coloring, &tr.coloring].into_iter().flatten() {
            prop_assert!(c.is_proper_for(&inst));
        }
        if inst.a_count() + inst.b_count() <= 6 {
            prop_assert_eq!(oracle::coloring_by_product(&inst).is_some(), bt.colorable());
        }
    }

    #[test]
    fn transversal_matches_subset_enumeration(inst in arb_instance(12)) {
        let sys = ColorSystem::from_instance(&inst).unwrap();
        let fast = independent_transversal(&sys).unwrap();
        let slow = oracle::transversal_by_subsets(&sys);
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(i) = fast {
            for e in &sys.edges {
                prop_assert!(!e.iter().all(|c| i.contains(c)));
            }
            for f in &sys.family {
                prop_assert!(f.iter().any(|c| i.contains(c)));
            }
        }
    }
}

fn pt(da: u64, db: u64, ka: u64, kb: u64) -> RegimePoint {
    RegimePoint::new(da, db, ka, kb).unwrap()
}

/// The exhaustive decision restricts colors to those covered by A-lists;
/// the unreduced enumeration over a fixed small universe must agree.
#[test]
fn decide_matches_unreduced_enumeration() {
    for ka in 1..=2 {
        for kb in 1..=2 {
            for da in 1..=3 {
                for db in 1..=3 {
                    let p = pt(da, db, ka, kb);
                    let universe = ((ka * db) as usize).min(5);
                    let slow = oracle::choosable_over_universe(p, universe);
                    let fast = decide_choosable(p, Budget::DEFAULT).unwrap();
                    match fast.verdict {
                        Verdict::Choosable => assert!(slow, "{p}: unreduced enumeration found a witness"),
                        Verdict::Unchoosable(w) => {
                            assert!(backtrack_coloring(&w, Budget::unlimited()).unwrap().coloring.is_none());
                            if (ka * db) as usize <= 5 {
                                assert!(!slow, "{p}: witness missed by unreduced enumeration");
                            }
                        }
                        Verdict::Exhausted => panic!("{p} exhausted"),
                    }
                }
            }
        }
    }
}

#[test]
fn witnesses_are_rejected_and_round_trip() {
    for p in [pt(2, 4, 2, 2), pt(3, 3, 2, 1), pt(2, 1, 2, 1), pt(3, 5, 2, 2), pt(4, 2, 1, 2)] {
        let d = decide_choosable(p, Budget::DEFAULT).unwrap();
        let w = d.verdict.witness().unwrap_or_else(|| panic!("{p} should be unchoosable"));
        assert_eq!(w.regime_point(), Some(p));
        assert!(w.validate().is_empty());
        let back = ListInstance::from_json(&w.to_json()).unwrap();
        assert_eq!(&back, w);
        assert!(transversal_coloring(&back, Budget::unlimited()).unwrap().coloring.is_none());
    }
}

#[test]
fn decisions_are_monotone() {
    for (ka, kb) in [(2, 1), (2, 2), (3, 1)] {
        let unch = |da, db| !matches!(decide_choosable(pt(da, db, ka, kb), Budget::DEFAULT).unwrap().verdict, Verdict::Choosable);
        for da in 1..=3 {
            for db in 1..=4 {
                if unch(da, db) {
                    assert!(unch(da + 1, db) && unch(da, db + 1), "({da},{db}) k=({ka},{kb})");
                }
            }
        }
    }
}
