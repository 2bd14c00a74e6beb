//! Minors, induced minors and the class predicates built on them.
//!
//! An induced minor of `M` is `si((M|F)/X)` for flats `X ⊆ F`, that is, the
//! matroid of an interval of the lattice of flats. Searches run over flat
//! pairs with `r(F) - r(X)` equal to the pattern's rank.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::constructs::{self, affine, circuit, complete_graph, spike};
use crate::elements::ElementSet;
use crate::error::{domain, Result};
use crate::gf2::{quotient_map, rank_of, Gf2Point};
use crate::isomorph::{canonical_form, find_isomorphism, CanonicalForm};
use crate::matroid::{BinaryMatroid, ElementMap, Flat};

/// Flats `X ⊆ F` of the host with `si((M|F)/X)` isomorphic to the pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMinorWitness {
    pub outer: Flat,
    pub inner: Flat,
    /// Fate of every element of `M|F` under contracting `X`.
    pub map: ElementMap,
    /// The contracted, simplified matroid `si((M|F)/X)`.
    pub minor: BinaryMatroid,
    /// For each element of `minor`, the pattern element it corresponds to.
    pub to_pattern: Vec<usize>,
}

/// A named pattern with its canonical form precomputed.
#[derive(Clone, Debug)]
pub struct Pattern {
    pub name: String,
    pub matroid: BinaryMatroid,
    pub form: CanonicalForm,
    rank: usize,
}

/// Patterns for induced-minor exclusion, each simple and connected.
#[derive(Clone, Debug, Default)]
pub struct PatternSet {
    pub patterns: Vec<Pattern>,
}

impl PatternSet {
    pub fn new(patterns: Vec<(String, BinaryMatroid)>) -> Result<Self> {
        let mut out = Vec::new();
        for (name, m) in patterns {
            if !m.is_connected() {
                return domain(format!("pattern {name} is not connected"));
            }
            out.push(Pattern {
                form: canonical_form(&m),
                rank: m.rank(),
                name,
                matroid: m,
            });
        }
        Ok(PatternSet { patterns: out })
    }

    /// Patterns drawn from the catalog, e.g. `["MC4", "MK4"]`.
    pub fn named(names: &[&str]) -> Result<Self> {
        let mut v = Vec::new();
        for &n in names {
            v.push((n.to_string(), constructs::named(n)?));
        }
        Self::new(v)
    }

    pub fn union(&self, other: &PatternSet) -> PatternSet {
        let mut patterns = self.patterns.clone();
        patterns.extend(other.patterns.iter().cloned());
        PatternSet { patterns }
    }

    pub fn names(&self) -> Vec<&str> {
        self.patterns.iter().map(|p| p.name.as_str()).collect()
    }
}

/// Distinct images of `F - X` under the quotient by `X`.
fn interval_points(m: &BinaryMatroid, x: &Flat, f: &Flat) -> (usize, Vec<Gf2Point>) {
    let q = quotient_map(&m.points_of(x.elements), m.ambient_rank());
    let mut pts: Vec<Gf2Point> = f
        .elements
        .difference(x.elements)
        .iter()
        .map(|i| q.apply(m.points()[i]))
        .collect();
    pts.sort_unstable();
    pts.dedup();
    (q.target_rank(), pts)
}

/// Every flat interval `[X, F]` with `r(F) - r(X) = k`, in order of
/// `(r(X), X, F)` by bitmask, together with `si((M|F)/X)`.
pub fn intervals_of_rank(m: &BinaryMatroid, k: usize) -> Vec<(Flat, Flat, BinaryMatroid)> {
    let flats = m.flats();
    let r = m.rank();
    let mut out = Vec::new();
    if k > r {
        return out;
    }
    for xr in 0..=r - k {
        for x in &flats[xr] {
            for f in flats[xr + k].iter().filter(|f| x.elements.is_subset(f.elements)) {
                let (amb, pts) = interval_points(m, x, f);
                out.push((*x, *f, BinaryMatroid::new(amb, pts).expect("distinct nonzero")));
            }
        }
    }
    out
}

/// Canonical forms of all induced minors of `m` (every flat interval).
pub fn induced_minor_forms(m: &BinaryMatroid) -> HashSet<CanonicalForm> {
    (0..=m.rank())
        .flat_map(|k| intervals_of_rank(m, k))
        .map(|(_, _, c)| canonical_form(&c))
        .collect()
}

fn witness(m: &BinaryMatroid, x: Flat, f: Flat, pattern: &BinaryMatroid) -> InducedMinorWitness {
    let restricted = m.restrict_unchecked(f.elements);
    // X as a subset of the restriction's element indices
    let inner_local: ElementSet = f
        .elements
        .iter()
        .enumerate()
        .filter(|&(_, i)| x.elements.contains(i))
        .map(|(j, _)| j)
        .collect();
    let (minor, map) = restricted.contract_simplify_unchecked(inner_local);
    let to_pattern = find_isomorphism(&minor, pattern).expect("forms matched");
    InducedMinorWitness {
        outer: f,
        inner: x,
        map,
        minor,
        to_pattern,
    }
}

/// The lexicographically least flat pair `(X, F)` (by rank of `X`, then
/// bitmasks) whose interval is isomorphic to `n`.
pub fn has_induced_minor(m: &BinaryMatroid, n: &BinaryMatroid) -> Option<InducedMinorWitness> {
    let k = n.rank();
    let r = m.rank();
    if k > r || n.len() > m.len() {
        return None;
    }
    let target = canonical_form(n);
    let flats = m.flats();
    for xr in 0..=r - k {
        for x in &flats[xr] {
            for f in flats[xr + k].iter().filter(|f| x.elements.is_subset(f.elements)) {
                let (amb, pts) = interval_points(m, x, f);
                if pts.len() != n.len() {
                    continue;
                }
                let c = BinaryMatroid::new(amb, pts).expect("distinct nonzero");
                if canonical_form(&c) == target {
                    return Some(witness(m, *x, *f, n));
                }
            }
        }
    }
    None
}

/// The first pattern (in interval order) occurring as an induced minor.
pub fn exim_violation(m: &BinaryMatroid, patterns: &PatternSet) -> Option<(String, InducedMinorWitness)> {
    let r = m.rank();
    let flats = m.flats();
    let mut by_rank: BTreeMap<usize, Vec<&Pattern>> = BTreeMap::new();
    for p in &patterns.patterns {
        if p.rank <= r && p.matroid.len() <= m.len() {
            by_rank.entry(p.rank).or_default().push(p);
        }
    }
    for xr in 0..=r {
        for x in &flats[xr] {
            for (&k, pats) in by_rank.iter().filter(|(&k, _)| xr + k <= r) {
                for f in flats[xr + k].iter().filter(|f| x.elements.is_subset(f.elements)) {
                    let (amb, pts) = interval_points(m, x, f);
                    if !pats.iter().any(|p| p.matroid.len() == pts.len()) {
                        continue;
                    }
                    let form = canonical_form(&BinaryMatroid::new(amb, pts).expect("distinct nonzero"));
                    if let Some(p) = pats.iter().find(|p| p.form == form) {
                        return Some((p.name.clone(), witness(m, *x, *f, &p.matroid)));
                    }
                }
            }
        }
    }
    None
}

/// No pattern of the set occurs as an induced minor.
pub fn exim_member(m: &BinaryMatroid, patterns: &PatternSet) -> bool {
    exim_violation(m, patterns).is_none()
}

/// A minor `N` found as a restriction of `si(M/X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    /// The contracted flat `X` of the host.
    pub contracted: Flat,
    /// `si(M/X)`.
    pub host: BinaryMatroid,
    /// Image in `host` of each pattern element.
    pub embedding: Vec<Gf2Point>,
}

/// An injective linear image of `pattern` inside the point set `host`
/// (spanning `F_2^k`, `k = rank(pattern)`), as the image of each pattern
/// element.
fn embed(host: &BinaryMatroid, pattern: &BinaryMatroid) -> Option<Vec<Gf2Point>> {
    let pat = pattern.reembedded_points();
    let k = rank_of(&pat);
    // pattern points grouped by the highest basis vector they use
    let mut by_width: Vec<Vec<Gf2Point>> = vec![Vec::new(); k + 1];
    for &p in &pat {
        by_width[p.width()].push(p);
    }
    let host_pts = host.points();
    let mut images = vec![Gf2Point::ZERO; k];
    fn image(images: &[Gf2Point], p: Gf2Point) -> Gf2Point {
        let mut out = Gf2Point::ZERO;
        let mut bits = p.0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= images[i];
            bits &= bits - 1;
        }
        out
    }
    fn rec(
        level: usize,
        k: usize,
        images: &mut Vec<Gf2Point>,
        host: &BinaryMatroid,
        host_pts: &[Gf2Point],
        by_width: &[Vec<Gf2Point>],
    ) -> bool {
        if level == k {
            return true;
        }
        for &u in host_pts {
            images[level] = u;
            if rank_of(&images[..=level]) != level + 1 {
                continue;
            }
            if by_width[level + 1].iter().all(|&p| host.contains_point(image(images, p)))
                && rec(level + 1, k, images, host, host_pts, by_width)
            {
                return true;
            }
        }
        false
    }
    if !rec(0, k, &mut images, host, host_pts, &by_width) {
        return None;
    }
    Some(pat.iter().map(|&p| image(&images, p)).collect())
}

/// Contract a flat of rank `r(M) - r(N)`, simplify, and look for `N` as a
/// spanning restriction. Contractions already seen (by canonical form) are
/// skipped.
pub fn find_minor(m: &BinaryMatroid, n: &BinaryMatroid) -> Option<MinorWitness> {
    let k = n.rank();
    let r = m.rank();
    if k > r || n.len() > m.len() {
        return None;
    }
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    for x in &m.flats()[r - k] {
        let (c, _) = m.contract_simplify_unchecked(x.elements);
        if c.len() < n.len() {
            continue;
        }
        let host = c.reembed();
        if !seen.insert(canonical_form(&host)) {
            continue;
        }
        if let Some(embedding) = embed(&host, n) {
            return Some(MinorWitness {
                contracted: *x,
                host,
                embedding,
            });
        }
    }
    None
}

pub fn has_minor(m: &BinaryMatroid, n: &BinaryMatroid) -> bool {
    find_minor(m, n).is_some()
}

fn fano() -> &'static BinaryMatroid {
    static F7: std::sync::OnceLock<BinaryMatroid> = std::sync::OnceLock::new();
    F7.get_or_init(|| BinaryMatroid::projective(3))
}

fn fano_dual() -> &'static BinaryMatroid {
    static F7S: std::sync::OnceLock<BinaryMatroid> = std::sync::OnceLock::new();
    F7S.get_or_init(|| constructs::named("F7*").expect("catalog"))
}

fn k4() -> &'static BinaryMatroid {
    static K4: std::sync::OnceLock<BinaryMatroid> = std::sync::OnceLock::new();
    K4.get_or_init(|| complete_graph(4).expect("catalog"))
}

/// No `F_7` and no `F_7^*` minor.
pub fn is_regular(m: &BinaryMatroid) -> bool {
    !has_minor(m, fano()) && !has_minor(m, fano_dual())
}

/// Connected with no `M(K_4)` minor.
pub fn is_series_parallel(m: &BinaryMatroid) -> bool {
    m.is_connected() && !has_minor(m, k4())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeTag {
    ProjectiveGeometry,
    AffineGeometry,
    Circuit,
    PgMinusPoint,
    CompleteGraphCycle,
    SpikeTip,
    SpikeTipCotip,
    Other,
}

impl ShapeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ShapeTag::ProjectiveGeometry => "projective_geometry",
            ShapeTag::AffineGeometry => "affine_geometry",
            ShapeTag::Circuit => "circuit",
            ShapeTag::PgMinusPoint => "pg_minus_point",
            ShapeTag::CompleteGraphCycle => "complete_graph_cycle",
            ShapeTag::SpikeTip => "spike_tip",
            ShapeTag::SpikeTipCotip => "spike_tip_cotip",
            ShapeTag::Other => "other",
        }
    }
}

/// The family member of each shape with the given rank and size, if any.
fn family_member(tag: ShapeTag, r: usize, n: usize) -> Option<BinaryMatroid> {
    let pow = |k: usize| if k < 63 { Some(1usize << k) } else { None };
    match tag {
        ShapeTag::ProjectiveGeometry => (pow(r)? - 1 == n && r <= 7).then(|| BinaryMatroid::projective(r)),
        ShapeTag::AffineGeometry => (r >= 1 && pow(r - 1)? == n && r <= 7).then(|| affine(r)),
        ShapeTag::Circuit => (r >= 2 && n == r + 1).then(|| circuit(n).unwrap()),
        ShapeTag::PgMinusPoint => ((2..=7).contains(&r) && pow(r)? - 2 == n).then(|| {
            let pg = BinaryMatroid::projective(r);
            pg.delete(ElementSet::singleton(0)).unwrap()
        }),
        ShapeTag::CompleteGraphCycle => (r >= 1 && n == r * (r + 1) / 2).then(|| complete_graph(r + 1).unwrap()),
        ShapeTag::SpikeTip => (r >= 3 && n == 2 * r + 1).then(|| spike(r, false).unwrap()),
        ShapeTag::SpikeTipCotip => (r >= 3 && n == 2 * r).then(|| spike(r, true).unwrap()),
        ShapeTag::Other => None,
    }
}

const SHAPES: [ShapeTag; 7] = [
    ShapeTag::ProjectiveGeometry,
    ShapeTag::AffineGeometry,
    ShapeTag::Circuit,
    ShapeTag::PgMinusPoint,
    ShapeTag::CompleteGraphCycle,
    ShapeTag::SpikeTip,
    ShapeTag::SpikeTipCotip,
];

/// Every family the matroid belongs to, in the fixed tag order.
pub fn shape_tags(m: &BinaryMatroid) -> Vec<ShapeTag> {
    let (r, n) = (m.rank(), m.len());
    let mut form = None;
    let mut out = Vec::new();
    for tag in SHAPES {
        if let Some(member) = family_member(tag, r, n) {
            let f = form.get_or_insert_with(|| canonical_form(m));
            if *f == canonical_form(&member) {
                out.push(tag);
            }
        }
    }
    out
}

/// The first matching family, or [`ShapeTag::Other`].
pub fn classify_shape(m: &BinaryMatroid) -> ShapeTag {
    shape_tags(m).first().copied().unwrap_or(ShapeTag::Other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructs::named;

    #[test]
    fn fano_induced_minors() {
        let f7 = BinaryMatroid::projective(3);
        let line = BinaryMatroid::projective(2);
        let w = has_induced_minor(&f7, &line).unwrap();
        assert_eq!(w.inner.rank, 0);
        assert_eq!(w.outer.rank, 2);
        // the witness is least: X = empty, F = the first line
        assert_eq!(w.outer.elements.len(), 3);
        assert!(has_induced_minor(&f7, &named("MK4").unwrap()).is_none());
        // contracting a point is another way to reach the line
        let (c, _) = f7.contract_simplify(ElementSet::singleton(0)).unwrap();
        assert_eq!(canonical_form(&c), canonical_form(&line));
    }

    #[test]
    fn affine_planes_are_c4_witnesses() {
        let ag = named("AG32").unwrap();
        let w = has_induced_minor(&ag, &named("MC4").unwrap()).unwrap();
        assert_eq!(w.inner.elements, ElementSet::EMPTY);
        assert_eq!((w.outer.rank, w.outer.elements.len()), (3, 4));
        assert_eq!(w.to_pattern.len(), 4);
    }

    #[test]
    fn minor_examples() {
        let f7s = named("F7*").unwrap();
        assert!(has_minor(&f7s, &named("MC4").unwrap()));
        assert!(has_induced_minor(&f7s, &named("MC4").unwrap()).is_some());
        assert!(has_minor(&BinaryMatroid::projective(3), &BinaryMatroid::projective(3)));
        assert!(!has_minor(&named("MK4").unwrap(), &BinaryMatroid::projective(3)));
    }

    #[test]
    fn minor_witness_embeds_the_pattern() {
        let pg = BinaryMatroid::projective(4);
        let w = find_minor(&pg, &named("MK4").unwrap()).unwrap();
        assert_eq!(w.embedding.len(), 6);
        assert!(w.embedding.iter().all(|&p| w.host.contains_point(p)));
        assert_eq!(rank_of(&w.embedding), 3);
    }

    #[test]
    fn regularity() {
        assert!(is_regular(&named("MK4").unwrap()));
        assert!(!is_regular(&named("F7").unwrap()));
        assert!(!is_regular(&named("F7*").unwrap()));
        assert!(is_regular(&named("R10").unwrap()));
        assert!(is_regular(&named("M*(K33)").unwrap()));
    }

    #[test]
    fn series_parallel() {
        for n in 3..=5 {
            assert!(is_series_parallel(&circuit(n).unwrap()));
        }
        assert!(!is_series_parallel(&named("MK4").unwrap()));
        assert!(is_series_parallel(&named("MK4e").unwrap()));
    }

    #[test]
    fn shapes() {
        assert_eq!(classify_shape(&BinaryMatroid::projective(4)), ShapeTag::ProjectiveGeometry);
        assert_eq!(classify_shape(&circuit(5).unwrap()), ShapeTag::Circuit);
        // M(K6): weight-2 vectors of F_2^6, projected to rank 5
        let pts: Vec<Gf2Point> = (0u32..64).filter(|v| v.count_ones() == 2).map(Gf2Point).collect();
        let k6 = BinaryMatroid::new(6, pts).unwrap();
        assert_eq!(k6.rank(), 5);
        assert_eq!(classify_shape(&k6), ShapeTag::CompleteGraphCycle);
        assert_eq!(classify_shape(&named("MK4").unwrap()), ShapeTag::PgMinusPoint);
        assert!(shape_tags(&named("MK4").unwrap()).contains(&ShapeTag::CompleteGraphCycle));
        assert_eq!(classify_shape(&named("S8").unwrap()), ShapeTag::SpikeTipCotip);
        assert_eq!(classify_shape(&spike(4, false).unwrap()), ShapeTag::SpikeTip);
        assert_eq!(classify_shape(&named("R10").unwrap()), ShapeTag::Other);
        assert_eq!(classify_shape(&affine(4)), ShapeTag::AffineGeometry);
    }

    #[test]
    fn exim_examples() {
        let c4k4 = PatternSet::named(&["MC4", "MK4"]).unwrap();
        assert!(exim_member(&BinaryMatroid::projective(3), &c4k4));
        let (name, w) = exim_violation(&named("AG32").unwrap(), &PatternSet::named(&["MC4"]).unwrap()).unwrap();
        assert_eq!(name, "MC4");
        assert_eq!(w.outer.rank, 3);
        let k4 = named("MK4").unwrap();
        let (_, w) = exim_violation(&k4, &PatternSet::named(&["MK4"]).unwrap()).unwrap();
        assert_eq!(w.inner.elements, ElementSet::EMPTY);
        assert_eq!(w.outer.elements, k4.ground_set());
        assert!(PatternSet::new(vec![("two".into(), BinaryMatroid::new(2, vec![Gf2Point(1), Gf2Point(2)]).unwrap())]).is_err());
    }

    #[test]
    fn interval_forms_of_fano() {
        // points, lines, the plane, and the empty matroid
        assert_eq!(induced_minor_forms(&BinaryMatroid::projective(3)).len(), 4);
    }
}
