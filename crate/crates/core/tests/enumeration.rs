mod common;

use std::collections::HashSet;

use binmat::constructs::affine;
use binmat::isomorph::{are_isomorphic, canonical_form};
use binmat::verify::{enumerate_by_size, enumerate_matroids, EnumerationScope, Filter};
use binmat::BinaryMatroid;

fn counts_by_size(classes: &[BinaryMatroid], n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n + 1];
    for m in classes {
        out[m.len()] += 1;
    }
    out
}

#[test]
fn rank_two_has_four_classes() {
    let classes = enumerate_matroids(&EnumerationScope::new(2)).unwrap();
    assert_eq!(classes.len(), 4);
}

#[test]
fn ranks_three_and_four_match_burnside() {
    for r in [3, 4] {
        let classes = enumerate_matroids(&EnumerationScope::new(r)).unwrap();
        let n = (1 << r) - 1;
        assert_eq!(counts_by_size(&classes, n), common::burnside_by_size(r), "rank {r}");
    }
}

#[test]
fn rank_five_prefix_matches_burnside() {
    let orbits = common::burnside_by_size(5);
    let scope = EnumerationScope::new(5).with_max_elements(12);
    let classes = enumerate_matroids(&scope).unwrap();
    assert_eq!(counts_by_size(&classes, 12), orbits[..=12].to_vec());
    assert_eq!(classes.len(), 299);
}

#[test]
fn enumeration_is_duplicate_free() {
    let classes = enumerate_matroids(&EnumerationScope::new(4)).unwrap();
    let forms: HashSet<_> = classes.iter().map(canonical_form).collect();
    assert_eq!(forms.len(), classes.len());
    for (i, a) in classes.iter().enumerate().step_by(5) {
        for b in &classes[i + 1..] {
            assert!(!are_isomorphic(a, b));
        }
    }
}

#[test]
fn exactly_one_ag32() {
    let classes = enumerate_matroids(&EnumerationScope::new(4)).unwrap();
    let ag = affine(4);
    assert_eq!(classes.iter().filter(|m| are_isomorphic(m, &ag)).count(), 1);
}

#[test]
fn by_size_agrees_with_rank_scopes() {
    // classes on at most 7 elements have rank at most 7; those of rank <= 4
    // must be exactly the rank-4 classes on at most 7 elements
    let small: Vec<BinaryMatroid> = enumerate_by_size(7).unwrap().into_iter().filter(|m| m.rank() <= 4).collect();
    let scope = EnumerationScope::new(4).with_max_elements(7);
    assert_eq!(small.len(), enumerate_matroids(&scope).unwrap().len());
}

#[test]
fn filters_select_subsets() {
    let all = enumerate_matroids(&EnumerationScope::new(4)).unwrap();
    for f in [Filter::Connected, Filter::ThreeConnected, Filter::TriangleFree] {
        let some = enumerate_matroids(&EnumerationScope::new(4).with_filters(&[f])).unwrap();
        let expected = all
            .iter()
            .filter(|m| match f {
                Filter::Connected => m.is_connected(),
                Filter::ThreeConnected => m.connectivity().three_connected,
                Filter::TriangleFree => m.is_triangle_free(),
                Filter::TopRank => unreachable!(),
            })
            .count();
        assert_eq!(some.len(), expected, "{f}");
    }
}

#[test]
fn out_of_bounds_scopes_are_rejected() {
    assert!(enumerate_matroids(&EnumerationScope::new(6)).is_err());
    assert!(enumerate_matroids(&EnumerationScope::new(5).with_max_elements(17)).is_err());
}

#[test]
fn corank_one_classes_are_a_circuit_plus_coloops() {
    // n elements of rank n - 1: one circuit of size 3..=n, the rest coloops
    let classes = enumerate_by_size(9).unwrap();
    for n in 3..=9 {
        let count = classes.iter().filter(|m| m.len() == n && m.rank() == n - 1).count();
        assert_eq!(count, n - 2, "n = {n}");
    }
}
