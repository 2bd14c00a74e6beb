use proptest::prelude::*;

use binmat::constructs::{cone, cone_unlabeled, gpc_across_pg, target_from_bits, TargetString};
use binmat::format::{from_json, to_json};
use binmat::gf2::rank_of;
use binmat::isomorph::{are_isomorphic, canonical_form, transform};
use binmat::minors::{has_induced_minor, induced_minor_forms};
use binmat::{BinaryMatroid, ElementSet, Gf2Point};

fn matroid(max_rank: usize) -> impl Strategy<Value = BinaryMatroid> {
    (1..=max_rank).prop_flat_map(|r| {
        prop::collection::vec(any::<bool>(), (1 << r) - 1).prop_map(move |keep| {
            let pts = (0..keep.len()).filter(|&i| keep[i]).map(|i| Gf2Point(i as u32 + 1)).collect();
            BinaryMatroid::new(r, pts).unwrap()
        })
    })
}

/// A matroid with an invertible map of its ambient space.
fn matroid_and_map(max_rank: usize) -> impl Strategy<Value = (BinaryMatroid, Vec<Gf2Point>)> {
    matroid(max_rank).prop_flat_map(|m| {
        let r = m.ambient_rank();
        let cols = prop::collection::vec(1u32..1 << r, r)
            .prop_filter("invertible", |c| rank_of(&c.iter().map(|&v| Gf2Point(v)).collect::<Vec<_>>()) == c.len());
        (Just(m), cols.prop_map(|c| c.into_iter().map(Gf2Point).collect()))
    })
}

fn subset(n: usize) -> impl Strategy<Value = ElementSet> {
    any::<u64>().prop_map(move |b| ElementSet(b & ElementSet::full(n).bits()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_is_a_linear_invariant((m, map) in matroid_and_map(6)) {
        let image = transform(&m, &map).unwrap();
        prop_assert_eq!(canonical_form(&m), canonical_form(&image));
        prop_assert!(are_isomorphic(&m, &image));
    }

    #[test]
    fn canonical_form_separates_sizes_and_ranks(a in matroid(5), b in matroid(5)) {
        if canonical_form(&a) == canonical_form(&b) {
            prop_assert_eq!(a.len(), b.len());
            prop_assert_eq!(a.rank(), b.rank());
            prop_assert_eq!(a.flat_profile(), b.flat_profile());
        }
    }

    #[test]
    fn rank_is_submodular_and_closure_is_a_closure(m in matroid(5), x in subset(31), y in subset(31)) {
        let (x, y) = (x.intersection(m.ground_set()), y.intersection(m.ground_set()));
        prop_assert!(m.rank_of_set(x.union(y)) + m.rank_of_set(x.intersection(y)) <= m.rank_of_set(x) + m.rank_of_set(y));
        let cl = m.closure(x).unwrap().elements;
        prop_assert!(x.is_subset(cl));
        prop_assert_eq!(m.closure(cl).unwrap().elements, cl);
        prop_assert_eq!(m.rank_of_set(cl), m.rank_of_set(x));
        prop_assert!(m.is_flat(cl));
    }

    #[test]
    fn double_dual_is_the_matroid(m in matroid(5)) {
        let back = m.dual().dual().to_simple();
        prop_assert!(back.is_some());
        prop_assert!(are_isomorphic(&back.unwrap(), &m));
        prop_assert_eq!(m.dual().rank(), m.len() - m.rank());
    }

    #[test]
    fn interchange_round_trip(m in matroid(6)) {
        prop_assert_eq!(from_json(&to_json(&m)).unwrap(), m);
    }

    #[test]
    fn coning_sizes(m in matroid(4), tipped in any::<bool>()) {
        let a = cone_unlabeled(&m, tipped);
        prop_assert_eq!(a.len(), 2 * m.len() + usize::from(tipped));
        prop_assert_eq!(a.rank(), m.rank() + usize::from(tipped || !m.is_empty()));
        let labelled = cone(&m, tipped);
        prop_assert_eq!(labelled.tip.is_some(), tipped);
        prop_assert!(are_isomorphic(&labelled.matroid.without_labels(), &a));
    }

    #[test]
    fn hyperplanes_and_contractions_are_induced_minors(m in matroid(5)) {
        let forms = induced_minor_forms(&m);
        for h in m.hyperplanes() {
            let restricted = m.restrict_to(h).unwrap();
            prop_assert!(forms.contains(&canonical_form(&restricted)));
        }
        for e in 0..m.len() {
            let (c, _) = m.contract_simplify(ElementSet::singleton(e)).unwrap();
            prop_assert!(has_induced_minor(&m, &c).is_some());
        }
    }

    #[test]
    fn gpc_counts(a in matroid(3), b in matroid(3)) {
        // glue along a shared point, or take the direct sum when either side is empty
        let glue: Vec<(usize, usize)> = if a.is_empty() || b.is_empty() { vec![] } else { vec![(0, 0)] };
        let g = gpc_across_pg(&a, &b, &glue).unwrap();
        prop_assert_eq!(g.matroid.len(), a.len() + b.len() - glue.len());
        prop_assert_eq!(g.matroid.rank(), a.rank() + b.rank() - glue.len());
    }

    #[test]
    fn target_size_law(n in 0u32..128) {
        let Ok(s) = TargetString::from_size(n) else {
            prop_assert!(n > 64);
            return Ok(());
        };
        prop_assert_eq!(s.value(), u64::from(n));
        prop_assert_eq!(target_from_bits(&s).len(), n as usize);
    }
}
