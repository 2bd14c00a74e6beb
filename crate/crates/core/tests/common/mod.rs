//! Oracles shared by the integration tests. None of them calls the
//! enumeration or the flat-interval search they are used to check.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use binmat::gf2::Gf2Point;
use binmat::isomorph::{canonical_form, CanonicalForm};
use binmat::BinaryMatroid;

/// Number of `GL(r,2)`-orbits on `k`-subsets of `PG(r-1,2)` for every `k`,
/// by Burnside's lemma: each group element fixes `prod (1 + x^len)` subsets
/// over its cycles on points. Group elements are grouped by cycle type.
pub fn burnside_by_size(r: usize) -> Vec<u64> {
    let n = (1usize << r) - 1;
    let mut types: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut cols = Vec::with_capacity(r);
    let mut order = 0u64;
    visit_bases(r, &mut cols, &mut |cols| {
        order += 1;
        let mut img = vec![0u32; n + 1];
        for v in 1..=n {
            let low = v.trailing_zeros() as usize;
            img[v] = img[v & (v - 1)] ^ cols[low];
        }
        let mut seen = vec![false; n + 1];
        let mut lens = vec![0u8; n + 1];
        for v in 1..=n {
            if seen[v] {
                continue;
            }
            let mut len = 0;
            let mut w = v;
            while !seen[w] {
                seen[w] = true;
                w = img[w] as usize;
                len += 1;
            }
            lens[len] += 1;
        }
        *types.entry(lens).or_default() += 1;
    });
    let mut total = vec![0u64; n + 1];
    for (lens, count) in &types {
        let mut poly = vec![0u64; n + 1];
        poly[0] = 1;
        for (len, &mult) in lens.iter().enumerate() {
            for _ in 0..mult {
                for k in (len..=n).rev() {
                    poly[k] += poly[k - len];
                }
            }
        }
        for k in 0..=n {
            total[k] += poly[k] * count;
        }
    }
    total.iter().map(|t| {
        assert_eq!(t % order, 0);
        t / order
    }).collect()
}

fn visit_bases(r: usize, cols: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if cols.len() == r {
        f(cols);
        return;
    }
    let span = span_of(cols);
    for v in 1u32..1 << r {
        if !span.contains(&v) {
            cols.push(v);
            visit_bases(r, cols, f);
            cols.pop();
        }
    }
}

fn span_of(gens: &[u32]) -> HashSet<u32> {
    let mut span = HashSet::from([0u32]);
    for &g in gens {
        let shifted: Vec<u32> = span.iter().map(|s| s ^ g).collect();
        span.extend(shifted);
    }
    span
}

/// Flats by definition: subsets `S` such that no other point lies in the
/// span of `S`.
pub fn brute_flats(points: &[u32]) -> Vec<Vec<u32>> {
    let n = points.len();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let set: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
        let span = span_of(&set);
        if (0..n).all(|i| mask >> i & 1 == 1 || !span.contains(&points[i])) {
            out.push(set);
        }
    }
    out
}

/// `si(M/x)` by projecting along `x`, in the same ambient space.
pub fn contract_point(points: &[u32], x: u32) -> Vec<u32> {
    let pivot = 1 << x.trailing_zeros();
    let mut out: Vec<u32> = points
        .iter()
        .map(|&v| if v & pivot != 0 { v ^ x } else { v })
        .filter(|&v| v != 0)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn matroid(r: usize, points: &[u32]) -> BinaryMatroid {
    BinaryMatroid::new(r, points.iter().map(|&v| Gf2Point(v)).collect()).unwrap()
}

/// Every matroid reachable from `m` by arbitrary sequences of restrictions
/// to flats and single-element contractions with simplification, as
/// canonical forms. Results are memoized by form across calls.
pub struct FixpointOracle {
    memo: HashMap<CanonicalForm, HashSet<CanonicalForm>>,
}

impl FixpointOracle {
    pub fn new() -> Self {
        FixpointOracle { memo: HashMap::new() }
    }

    pub fn closure(&mut self, m: &BinaryMatroid) -> HashSet<CanonicalForm> {
        let r = m.ambient_rank();
        let pts: Vec<u32> = m.points().iter().map(|p| p.0).collect();
        self.closure_of(r, &pts)
    }

    fn closure_of(&mut self, r: usize, pts: &[u32]) -> HashSet<CanonicalForm> {
        let form = canonical_form(&matroid(r, pts));
        if let Some(s) = self.memo.get(&form) {
            return s.clone();
        }
        let mut out = HashSet::from([form.clone()]);
        for f in brute_flats(pts) {
            if f.len() < pts.len() {
                out.extend(self.closure_of(r, &f));
            }
        }
        for &x in pts {
            out.extend(self.closure_of(r, &contract_point(pts, x)));
        }
        self.memo.insert(form, out.clone());
        out
    }
}

/// Chordality by definition: every circuit `C` with at least four elements
/// has `cl(C) - C` nonempty.
pub fn brute_chordal(points: &[u32]) -> bool {
    let n = points.len();
    let members = |mask: u32| -> Vec<u32> { (0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect() };
    let dependent = |mask: u32| span_of(&members(mask)).len() < 1 << mask.count_ones();
    (1u32..1 << n)
        .filter(|c| c.count_ones() >= 4)
        .filter(|&c| dependent(c) && (0..n).all(|i| c >> i & 1 == 0 || !dependent(c & !(1 << i))))
        .all(|c| {
            let span = span_of(&members(c));
            (0..n).any(|i| c >> i & 1 == 0 && span.contains(&points[i]))
        })
}
