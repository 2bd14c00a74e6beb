//! Simple binary matroids and their basic operations.
//!
//! A [`BinaryMatroid`] is a set of distinct nonzero vectors of `F_2^r` kept in
//! ascending order; element `i` is the `i`-th smallest point. Subsets are
//! [`ElementSet`] bitmasks over those indices. Contraction is always followed
//! by simplification; [`VectorMatroid`] covers the few places that need the
//! unsimplified column matroid (duals and single-element contractions).

use std::collections::{HashMap, HashSet};

use crate::elements::{ElementSet, MAX_ELEMENTS};
use crate::error::{domain, Result};
use crate::gf2::{quotient_map, Echelon, Gf2Basis, Gf2Point, MAX_AMBIENT_RANK};

/// Above this many elements, connectivity and roundness switch from
/// partition enumeration to flat/cocircuit based tests.
const BRUTE_FORCE_PARTITION_LIMIT: usize = 16;

/// Largest cycle-space dimension enumerated when listing all circuits.
const CYCLE_SPACE_LIMIT: usize = 22;

#[derive(Clone, Debug)]
pub struct BinaryMatroid {
    ambient_rank: usize,
    points: Vec<Gf2Point>,
    labels: Option<Vec<String>>,
}

/// Equality and hashing look at the ambient rank and the point set only.
impl PartialEq for BinaryMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.points == other.points
    }
}

impl Eq for BinaryMatroid {}

impl std::hash::Hash for BinaryMatroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.points.hash(state);
    }
}

/// A closed subset together with its rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flat {
    pub rank: usize,
    pub elements: ElementSet,
}

/// What happened to a source element under contraction and simplification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementFate {
    /// Survives as the given point of the result.
    Kept(Gf2Point),
    /// Became parallel to `representative`, which survives as `image`.
    Parallel {
        image: Gf2Point,
        representative: Gf2Point,
    },
    /// Became a loop (it lies in the closure of the contracted set).
    Contracted,
}

impl ElementFate {
    pub fn image(self) -> Option<Gf2Point> {
        match self {
            ElementFate::Kept(p) | ElementFate::Parallel { image: p, .. } => Some(p),
            ElementFate::Contracted => None,
        }
    }
}

/// Fate of every source element, in source order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementMap {
    pub pairs: Vec<(Gf2Point, ElementFate)>,
}

impl ElementMap {
    pub fn identity(points: &[Gf2Point]) -> Self {
        ElementMap {
            pairs: points.iter().map(|&p| (p, ElementFate::Kept(p))).collect(),
        }
    }

    pub fn get(&self, source: Gf2Point) -> Option<ElementFate> {
        self.pairs
            .iter()
            .find(|(s, _)| *s == source)
            .map(|&(_, f)| f)
    }
}

/// A partition `(side_a, side_b)` of the ground set with connectivity
/// `r(A) + r(B) - r(M) = order - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub side_a: ElementSet,
    pub side_b: ElementSet,
    pub order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub connected: bool,
    pub three_connected: bool,
    pub witness: Option<Separation>,
}

impl BinaryMatroid {
    /// Builds a matroid from distinct nonzero vectors of `F_2^ambient_rank`,
    /// in any order.
    pub fn new(ambient_rank: usize, mut points: Vec<Gf2Point>) -> Result<Self> {
        if ambient_rank > MAX_AMBIENT_RANK {
            return domain(format!("ambient rank {ambient_rank} exceeds {MAX_AMBIENT_RANK}"));
        }
        points.sort_unstable();
        Self::check_points(ambient_rank, &points)?;
        Ok(BinaryMatroid {
            ambient_rank,
            points,
            labels: None,
        })
    }

    /// Like [`BinaryMatroid::new`], with a label per point (parallel lists).
    pub fn with_labels(
        ambient_rank: usize,
        points: Vec<Gf2Point>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if points.len() != labels.len() {
            return domain("labels and points differ in length");
        }
        let mut pairs: Vec<_> = points.into_iter().zip(labels).collect();
        pairs.sort_by_key(|(p, _)| *p);
        let (points, labels): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        Self::check_points(ambient_rank, &points)?;
        let unique: HashSet<&String> = labels.iter().collect();
        if unique.len() != labels.len() {
            return domain("duplicate label");
        }
        Ok(BinaryMatroid {
            ambient_rank,
            points,
            labels: Some(labels),
        })
    }

    fn check_points(ambient_rank: usize, points: &[Gf2Point]) -> Result<()> {
        if points.len() > MAX_ELEMENTS {
            return domain(format!("more than {MAX_ELEMENTS} elements"));
        }
        for w in points.windows(2) {
            if w[0] == w[1] {
                return domain(format!("duplicate point {}", w[0]));
            }
        }
        for &p in points {
            if p.is_zero() {
                return domain("zero vector is a loop");
            }
            if p.width() > ambient_rank {
                return domain(format!("point {p} outside F_2^{ambient_rank}"));
            }
        }
        Ok(())
    }

    pub(crate) fn from_sorted_unchecked(ambient_rank: usize, points: Vec<Gf2Point>) -> Self {
        debug_assert!(Self::check_points(ambient_rank, &points).is_ok());
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        BinaryMatroid {
            ambient_rank,
            points,
            labels: None,
        }
    }

    pub fn empty(ambient_rank: usize) -> Self {
        BinaryMatroid {
            ambient_rank,
            points: Vec::new(),
            labels: None,
        }
    }

    /// The projective geometry `PG(r-1, 2)`.
    pub fn projective(r: usize) -> Self {
        Self::from_sorted_unchecked(r, crate::gf2::pg_points(r))
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn points(&self) -> &[Gf2Point] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[i].as_str())
    }

    /// Index of the element carrying `label`.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.points.len())
    }

    pub fn index_of(&self, p: Gf2Point) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    pub fn contains_point(&self, p: Gf2Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn points_of(&self, set: ElementSet) -> Vec<Gf2Point> {
        set.iter().map(|i| self.points[i]).collect()
    }

    pub fn check_subset(&self, set: ElementSet) -> Result<()> {
        if set.is_subset(self.ground_set()) {
            Ok(())
        } else {
            domain(format!("{set:?} is not a subset of a {}-element ground set", self.len()))
        }
    }

    pub(crate) fn echelon_of(&self, set: ElementSet) -> Echelon {
        let mut ech = Echelon::new();
        for i in set {
            ech.insert(self.points[i]);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.rank_of_set(self.ground_set())
    }

    pub fn rank_of_set(&self, set: ElementSet) -> usize {
        self.echelon_of(set).rank()
    }

    /// Lexicographically first basis, scanning elements in index order.
    pub fn greedy_basis(&self) -> ElementSet {
        let mut ech = Echelon::new();
        let mut b = ElementSet::EMPTY;
        for (i, &p) in self.points.iter().enumerate() {
            if ech.insert(p) {
                b.insert(i);
            }
        }
        b
    }

    /// Elements spanned by an echelon.
    fn spanned(&self, ech: &Echelon) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for (i, &p) in self.points.iter().enumerate() {
            if ech.contains(p) {
                out.insert(i);
            }
        }
        out
    }

    pub fn closure(&self, set: ElementSet) -> Result<Flat> {
        self.check_subset(set)?;
        Ok(self.closure_unchecked(set))
    }

    pub(crate) fn closure_unchecked(&self, set: ElementSet) -> Flat {
        let ech = self.echelon_of(set);
        Flat {
            rank: ech.rank(),
            elements: self.spanned(&ech),
        }
    }

    pub fn is_flat(&self, set: ElementSet) -> bool {
        self.closure_unchecked(set).elements == set
    }

    /// All flats, grouped by rank (index `k` holds the rank-`k` flats, sorted
    /// by bitmask). Built by iterated covers starting from the closure of ∅.
    pub fn flats(&self) -> Vec<Vec<Flat>> {
        let r = self.rank();
        let mut levels: Vec<Vec<Flat>> = vec![vec![self.closure_unchecked(ElementSet::EMPTY)]];
        for _ in 0..r {
            let mut seen: HashSet<ElementSet> = HashSet::new();
            let mut next = Vec::new();
            for f in levels.last().unwrap() {
                let ech = self.echelon_of(f.elements);
                let mut done = f.elements;
                for e in self.ground_set().difference(f.elements) {
                    if done.contains(e) {
                        continue;
                    }
                    let mut ech2 = ech.clone();
                    ech2.insert(self.points[e]);
                    let cover = self.spanned(&ech2);
                    done = done.union(cover);
                    if seen.insert(cover) {
                        next.push(Flat {
                            rank: f.rank + 1,
                            elements: cover,
                        });
                    }
                }
            }
            next.sort_by_key(|f| f.elements);
            levels.push(next);
        }
        levels
    }

    /// Number of flats of each rank.
    pub fn flat_profile(&self) -> Vec<usize> {
        self.flats().iter().map(Vec::len).collect()
    }

    /// Coordinates of every element with respect to the greedy basis, in
    /// element order. The result spans `F_2^rank`.
    pub fn reembedded_points(&self) -> Vec<Gf2Point> {
        let basis = Gf2Basis::greedy(&self.points);
        self.points
            .iter()
            .map(|&p| basis.coordinates(p).expect("point lies in its own span"))
            .collect()
    }

    /// The same matroid with ambient rank equal to its rank. Element order
    /// may change; labels travel with their points.
    pub fn reembed(&self) -> BinaryMatroid {
        if self.ambient_rank == self.rank() && self.points.iter().all(|p| p.width() <= self.rank()) {
            // already spanning its ambient space
            return self.clone();
        }
        let pts = self.reembedded_points();
        let r = self.rank();
        match &self.labels {
            Some(l) => BinaryMatroid::with_labels(r, pts, l.clone()).expect("re-embedding is injective"),
            None => BinaryMatroid::new(r, pts).expect("re-embedding is injective"),
        }
    }

    /// Hyperplanes (rank `r-1` flats), found among the zero sets of linear
    /// functionals on the re-embedded points.
    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        let r = self.rank();
        if r == 0 {
            return Vec::new();
        }
        let pts = self.reembedded_points();
        let mut out = Vec::new();
        for f in 1u32..1 << r {
            let mut h = ElementSet::EMPTY;
            for (i, p) in pts.iter().enumerate() {
                if (p.0 & f).count_ones() % 2 == 0 {
                    h.insert(i);
                }
            }
            // the zero set of a functional is a flat; keep those of corank one,
            // which determine their functional
            if self.rank_of_set(h) + 1 == r {
                out.push(h);
            }
        }
        out.sort_unstable();
        out
    }

    /// Cocircuits: complements of hyperplanes.
    pub fn cocircuits(&self) -> Vec<ElementSet> {
        let all = self.ground_set();
        let mut out: Vec<_> = self.hyperplanes().into_iter().map(|h| all.difference(h)).collect();
        out.sort_unstable();
        out
    }

    pub fn restrict_to(&self, set: ElementSet) -> Result<BinaryMatroid> {
        self.check_subset(set)?;
        Ok(self.restrict_unchecked(set))
    }

    pub(crate) fn restrict_unchecked(&self, set: ElementSet) -> BinaryMatroid {
        BinaryMatroid {
            ambient_rank: self.ambient_rank,
            points: self.points_of(set),
            labels: self
                .labels
                .as_ref()
                .map(|l| set.iter().map(|i| l[i].clone()).collect()),
        }
    }

    pub fn delete(&self, set: ElementSet) -> Result<BinaryMatroid> {
        self.check_subset(set)?;
        Ok(self.restrict_unchecked(self.ground_set().difference(set)))
    }

    /// Contract `set`, then simplify. Parallel classes keep their smallest
    /// source point as representative.
    pub fn contract_simplify(&self, set: ElementSet) -> Result<(BinaryMatroid, ElementMap)> {
        self.check_subset(set)?;
        Ok(self.contract_simplify_unchecked(set))
    }

    pub(crate) fn contract_simplify_unchecked(&self, set: ElementSet) -> (BinaryMatroid, ElementMap) {
        if set.is_empty() {
            return (self.clone(), ElementMap::identity(&self.points));
        }
        let q = quotient_map(&self.points_of(set), self.ambient_rank);
        let mut reps: HashMap<Gf2Point, Gf2Point> = HashMap::new();
        let mut kept: Vec<(Gf2Point, Option<String>)> = Vec::new();
        let mut pairs = Vec::with_capacity(self.len());
        for (i, &p) in self.points.iter().enumerate() {
            let img = q.apply(p);
            let fate = if img.is_zero() {
                ElementFate::Contracted
            } else if let Some(&rep) = reps.get(&img) {
                ElementFate::Parallel {
                    image: img,
                    representative: rep,
                }
            } else {
                reps.insert(img, p);
                kept.push((img, self.label(i).map(str::to_owned)));
                ElementFate::Kept(img)
            };
            pairs.push((p, fate));
        }
        kept.sort_by_key(|(p, _)| *p);
        let labels = self
            .labels
            .as_ref()
            .map(|_| kept.iter().map(|(_, l)| l.clone().unwrap()).collect());
        let m = BinaryMatroid {
            ambient_rank: q.target_rank(),
            points: kept.into_iter().map(|(p, _)| p).collect(),
            labels,
        };
        (m, ElementMap { pairs })
    }

    /// `si(M / set)` without the element map.
    pub fn contract(&self, set: ElementSet) -> Result<BinaryMatroid> {
        Ok(self.contract_simplify(set)?.0)
    }

    /// The column matroid `M / set` without simplification; element order is
    /// preserved and contracted elements stay as loops.
    pub fn contract_unsimplified(&self, set: ElementSet) -> Result<VectorMatroid> {
        self.check_subset(set)?;
        let q = quotient_map(&self.points_of(set), self.ambient_rank);
        Ok(VectorMatroid {
            ambient_rank: q.target_rank(),
            columns: self.points.iter().map(|&p| q.apply(p)).collect(),
        })
    }

    /// Standard-representation dual. Column `i` of the result is element `i`
    /// of `self`; the dual of a simple matroid need not be simple.
    pub fn dual(&self) -> VectorMatroid {
        VectorMatroid::from(self).dual()
    }

    /// Circuits (as element sets) of size at most `max_size`, sorted.
    pub fn circuits(&self, max_size: Option<usize>) -> Vec<ElementSet> {
        VectorMatroid::from(self).circuits(max_size)
    }

    /// Connected components, ordered by smallest element. Two elements share
    /// a component iff some fundamental circuit chain links them.
    pub fn components(&self) -> Vec<ElementSet> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        let basis_set = self.greedy_basis();
        let basis_idx: Vec<usize> = basis_set.to_vec();
        let basis = Gf2Basis::new(self.points_of(basis_set)).expect("greedy basis");
        for i in self.ground_set().difference(basis_set) {
            let c = basis.coordinates(self.points[i]).unwrap();
            let mut bits = c.0;
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let (a, b) = (find(&mut parent, i), find(&mut parent, basis_idx[j]));
                parent[a] = b;
            }
        }
        let mut groups: HashMap<usize, ElementSet> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().insert(i);
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort_by_key(|s| s.first());
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn lambda(&self, a: ElementSet, b: ElementSet, r: usize) -> usize {
        self.rank_of_set(a) + self.rank_of_set(b) - r
    }

    /// Connectivity by partition enumeration (flats for large ground sets).
    pub fn connectivity(&self) -> Connectivity {
        let comps = self.components();
        if comps.len() > 1 {
            let a = comps[0];
            return Connectivity {
                connected: false,
                three_connected: false,
                witness: Some(Separation {
                    side_a: a,
                    side_b: self.ground_set().difference(a),
                    order: 1,
                }),
            };
        }
        let witness = if self.len() <= BRUTE_FORCE_PARTITION_LIMIT {
            self.two_separation_by_partitions()
        } else {
            self.two_separation_by_flats()
        };
        Connectivity {
            connected: true,
            three_connected: witness.is_none(),
            witness,
        }
    }

    fn partitions(&self) -> impl Iterator<Item = (ElementSet, ElementSet)> + '_ {
        // element 0 always on side A; each unordered partition once
        let n = self.len();
        let all = self.ground_set();
        let rest = all.without(0);
        rest.subsets().filter_map(move |s| {
            let a = s.with(0);
            let b = all.difference(a);
            (n > 0 && !b.is_empty()).then_some((a, b))
        })
    }

    fn two_separation_by_partitions(&self) -> Option<Separation> {
        let r = self.rank();
        self.partitions()
            .find(|&(a, b)| a.len() >= 2 && b.len() >= 2 && self.lambda(a, b, r) <= 1)
            .map(|(a, b)| Separation {
                side_a: a,
                side_b: b,
                order: self.lambda(a, b, r) + 1,
            })
    }

    // For a connected simple matroid every 2-separation (A, B) can be moved to
    // (cl(A), E - cl(A)) without losing either side's size, so checking flats
    // on one side is exhaustive.
    fn two_separation_by_flats(&self) -> Option<Separation> {
        let r = self.rank();
        let all = self.ground_set();
        self.flats()
            .into_iter()
            .flatten()
            .map(|f| (f.elements, all.difference(f.elements)))
            .find(|&(a, b)| a.len() >= 2 && b.len() >= 2 && self.lambda(a, b, r) <= 1)
            .map(|(a, b)| Separation {
                side_a: a,
                side_b: b,
                order: self.lambda(a, b, r) + 1,
            })
    }

    /// Partitions `(X, Y)` with `r(X) + r(Y) - r(M) <= k - 1` and both sides
    /// of rank at least `k`. Each unordered partition appears once, with
    /// element 0 in `X`. Exponential in the ground set size.
    pub fn vertical_separations(&self, k: usize) -> Vec<(ElementSet, ElementSet)> {
        let r = self.rank();
        if k == 0 || k > r {
            return Vec::new();
        }
        self.partitions()
            .filter(|&(a, b)| {
                let (ra, rb) = (self.rank_of_set(a), self.rank_of_set(b));
                ra >= k && rb >= k && ra + rb - r < k
            })
            .collect()
    }

    /// No vertical `k`-separation for any `k ≥ 1`. Small ground sets use the
    /// definition; larger ones use the equivalent test that every cocircuit
    /// is spanning.
    pub fn is_round(&self) -> bool {
        if self.len() <= BRUTE_FORCE_PARTITION_LIMIT {
            self.is_round_by_definition()
        } else {
            self.is_round_by_cocircuits()
        }
    }

    pub fn is_round_by_definition(&self) -> bool {
        (1..=self.rank()).all(|k| self.vertical_separations(k).is_empty())
    }

    pub fn is_round_by_cocircuits(&self) -> bool {
        let r = self.rank();
        self.cocircuits().into_iter().all(|c| self.rank_of_set(c) == r)
    }

    /// Triangles as sorted index triples; only those through `through` when given.
    pub fn triangles(&self, through: Option<usize>) -> Result<Vec<[usize; 3]>> {
        if let Some(e) = through {
            if e >= self.len() {
                return domain(format!("element {e} not in a {}-element ground set", self.len()));
            }
        }
        let mut out = Vec::new();
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                if let Some(k) = self.index_of(self.points[i] ^ self.points[j]) {
                    if k > j {
                        let t = [i, j, k];
                        if through.is_none_or(|e| t.contains(&e)) {
                            out.push(t);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_triangle_free(&self) -> bool {
        let n = self.len();
        !(0..n).any(|i| (i + 1..n).any(|j| self.contains_point(self.points[i] ^ self.points[j])))
    }

    /// Every circuit with at least four elements has a chord in its closure.
    pub fn is_chordal(&self) -> bool {
        let nullity = self.len() - self.rank();
        if nullity <= CYCLE_SPACE_LIMIT {
            self.circuits(None)
                .into_iter()
                .filter(|c| c.len() >= 4)
                .all(|c| self.closure_unchecked(c).elements != c)
        } else {
            // a chordless circuit is exactly a flat that is itself a circuit
            self.flats().into_iter().flatten().all(|f| {
                f.rank < 3 || f.elements.len() != f.rank + 1 || {
                    let x = f.elements.iter().fold(Gf2Point::ZERO, |a, i| a ^ self.points[i]);
                    !x.is_zero()
                }
            })
        }
    }
}

/// A binary matroid given by a list of columns, possibly with loops and
/// parallel elements. Element `i` is column `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorMatroid {
    pub ambient_rank: usize,
    pub columns: Vec<Gf2Point>,
}

impl From<&BinaryMatroid> for VectorMatroid {
    fn from(m: &BinaryMatroid) -> Self {
        VectorMatroid {
            ambient_rank: m.ambient_rank,
            columns: m.points.clone(),
        }
    }
}

impl VectorMatroid {
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.columns.len())
    }

    pub fn rank_of_set(&self, set: ElementSet) -> usize {
        let mut ech = Echelon::new();
        for i in set {
            ech.insert(self.columns[i]);
        }
        ech.rank()
    }

    pub fn rank(&self) -> usize {
        self.rank_of_set(self.ground_set())
    }

    pub fn loops(&self) -> ElementSet {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Parallel classes of the non-loop elements, ordered by smallest element.
    pub fn parallel_classes(&self) -> Vec<ElementSet> {
        let mut by_col: HashMap<Gf2Point, ElementSet> = HashMap::new();
        for (i, &c) in self.columns.iter().enumerate() {
            if !c.is_zero() {
                by_col.entry(c).or_default().insert(i);
            }
        }
        let mut out: Vec<_> = by_col.into_values().collect();
        out.sort_by_key(|s| s.first());
        out
    }

    /// Elements lying in a 2-circuit.
    pub fn in_two_circuits(&self) -> ElementSet {
        self.parallel_classes()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .fold(ElementSet::EMPTY, ElementSet::union)
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && self.parallel_classes().iter().all(|c| c.len() == 1)
    }

    /// Simplification, with the index each column maps to (`None` for loops).
    pub fn simplify(&self) -> (BinaryMatroid, Vec<Option<usize>>) {
        let mut pts: Vec<Gf2Point> = self.columns.iter().copied().filter(|c| !c.is_zero()).collect();
        pts.sort_unstable();
        pts.dedup();
        let m = BinaryMatroid::from_sorted_unchecked(self.ambient_rank, pts);
        let map = self.columns.iter().map(|&c| m.index_of(c)).collect();
        (m, map)
    }

    /// The matroid itself when it is simple.
    pub fn to_simple(&self) -> Option<BinaryMatroid> {
        self.is_simple().then(|| self.simplify().0)
    }

    /// Dual via a standard representation `[I_k | A]` on the greedy basis;
    /// returns `[A^T | I_{n-k}]` with columns in the original element order.
    pub fn dual(&self) -> VectorMatroid {
        let n = self.len();
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        let mut nonbasis = Vec::new();
        for (i, &c) in self.columns.iter().enumerate() {
            if ech.insert(c) {
                basis.push(i);
            } else {
                nonbasis.push(i);
            }
        }
        let k = basis.len();
        let b = Gf2Basis::new(basis.iter().map(|&i| self.columns[i]).collect()).expect("basis");
        let mut cols = vec![Gf2Point::ZERO; n];
        for (t, &j) in nonbasis.iter().enumerate() {
            cols[j] = Gf2Point::unit(t);
            let coords = b.coordinates(self.columns[j]).expect("spanned");
            for (s, &i) in basis.iter().enumerate() {
                if coords.0 >> s & 1 == 1 {
                    cols[i] ^= Gf2Point::unit(t);
                }
            }
        }
        VectorMatroid {
            ambient_rank: n - k,
            columns: cols,
        }
    }

    /// Circuits of size at most `max_size`, sorted by bitmask.
    ///
    /// Small cycle spaces are listed in Gray-code order and filtered to the
    /// cycles of nullity one; otherwise subsets are searched by size.
    pub fn circuits(&self, max_size: Option<usize>) -> Vec<ElementSet> {
        let n = self.len();
        let bound = max_size.unwrap_or(n);
        let r = self.rank();
        let nullity = n - r;
        let mut out = Vec::new();
        if nullity <= CYCLE_SPACE_LIMIT {
            let fundamentals = self.fundamental_circuits();
            let mut cur = 0u64;
            for step in 1u64..1 << nullity {
                let bit = step.trailing_zeros() as usize;
                cur ^= fundamentals[bit].0;
                let s = ElementSet(cur);
                if s.len() <= bound && self.rank_of_set(s) + 1 == s.len() {
                    out.push(s);
                }
            }
        } else {
            self.circuits_by_size(bound, &mut out);
        }
        out.sort_unstable();
        out
    }

    fn fundamental_circuits(&self) -> Vec<ElementSet> {
        let mut ech = Echelon::new();
        let mut basis = Vec::new();
        let mut nonbasis = Vec::new();
        for (i, &c) in self.columns.iter().enumerate() {
            if ech.insert(c) {
                basis.push(i);
            } else {
                nonbasis.push(i);
            }
        }
        let b = Gf2Basis::new(basis.iter().map(|&i| self.columns[i]).collect()).expect("basis");
        nonbasis
            .into_iter()
            .map(|j| {
                let coords = b.coordinates(self.columns[j]).unwrap();
                let mut s = ElementSet::singleton(j);
                for (t, &i) in basis.iter().enumerate() {
                    if coords.0 >> t & 1 == 1 {
                        s.insert(i);
                    }
                }
                s
            })
            .collect()
    }

    fn circuits_by_size(&self, bound: usize, out: &mut Vec<ElementSet>) {
        fn rec(
            m: &VectorMatroid,
            start: usize,
            chosen: ElementSet,
            sum: Gf2Point,
            bound: usize,
            out: &mut Vec<ElementSet>,
        ) {
            if !chosen.is_empty() && sum.is_zero() {
                if m.rank_of_set(chosen) + 1 == chosen.len() {
                    out.push(chosen);
                }
                return;
            }
            if chosen.len() == bound {
                return;
            }
            for i in start..m.len() {
                rec(m, i + 1, chosen.with(i), sum ^ m.columns[i], bound, out);
            }
        }
        rec(self, 0, ElementSet::EMPTY, Gf2Point::ZERO, bound, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(r: usize, pts: &[u32]) -> BinaryMatroid {
        BinaryMatroid::new(r, pts.iter().copied().map(Gf2Point).collect()).unwrap()
    }

    fn c4() -> BinaryMatroid {
        m(3, &[0b001, 0b010, 0b100, 0b111])
    }

    fn k4() -> BinaryMatroid {
        // Fano plane minus 0b111
        m(3, &[1, 2, 3, 4, 5, 6])
    }

    fn k4e() -> BinaryMatroid {
        m(3, &[1, 2, 3, 4, 5])
    }

    fn ag32() -> BinaryMatroid {
        BinaryMatroid::new(4, (8..16).map(Gf2Point).collect()).unwrap()
    }

    fn set_of_points(mat: &BinaryMatroid, pts: &[u32]) -> ElementSet {
        pts.iter().map(|&p| mat.index_of(Gf2Point(p)).unwrap()).collect()
    }

    #[test]
    fn construction_rejects_bad_points() {
        assert!(BinaryMatroid::new(2, vec![Gf2Point(0)]).is_err());
        assert!(BinaryMatroid::new(2, vec![Gf2Point(4)]).is_err());
        assert!(BinaryMatroid::new(2, vec![Gf2Point(1), Gf2Point(1)]).is_err());
        assert!(BinaryMatroid::with_labels(2, vec![Gf2Point(1)], vec![]).is_err());
        let l = BinaryMatroid::with_labels(
            2,
            vec![Gf2Point(2), Gf2Point(1)],
            vec!["b".into(), "a".into()],
        )
        .unwrap();
        assert_eq!(l.labels().unwrap(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn closure_examples() {
        let f7 = BinaryMatroid::projective(3);
        let c = f7.closure(set_of_points(&f7, &[1, 2])).unwrap();
        assert_eq!(c.elements, set_of_points(&f7, &[1, 2, 3]));
        assert_eq!(c.rank, 2);

        let e = f7.closure(ElementSet::EMPTY).unwrap();
        assert_eq!((e.elements, e.rank), (ElementSet::EMPTY, 0));

        let c4 = c4();
        let s = set_of_points(&c4, &[1, 2]);
        let c = c4.closure(s).unwrap();
        assert_eq!((c.elements, c.rank), (s, 2));
        // oracle: in_span on each point
        for (i, &p) in c4.points().iter().enumerate() {
            let inside = crate::gf2::in_span(p, &[Gf2Point(1), Gf2Point(2)]);
            assert_eq!(c.elements.contains(i), inside);
        }
        assert!(c4.closure(ElementSet::singleton(9)).is_err());
    }

    #[test]
    fn flat_counts() {
        let f7 = BinaryMatroid::projective(3);
        assert_eq!(f7.flat_profile(), vec![1, 7, 7, 1]);
        assert_eq!(m(1, &[1]).flat_profile(), vec![1, 1]);
        let ag = ag32();
        let planes = &ag.flats()[3];
        assert_eq!(planes.len(), 14);
        assert!(planes.iter().all(|f| f.elements.len() == 4));
    }

    #[test]
    fn flats_match_brute_force_closures() {
        for mat in [k4(), c4(), ag32(), m(4, &[1, 2, 4, 8, 15, 3])] {
            let mut brute: HashSet<ElementSet> = HashSet::new();
            for s in mat.ground_set().subsets() {
                brute.insert(mat.closure_unchecked(s).elements);
            }
            let listed: HashSet<ElementSet> =
                mat.flats().into_iter().flatten().map(|f| f.elements).collect();
            assert_eq!(brute, listed);
        }
    }

    #[test]
    fn restriction_examples() {
        let f7 = BinaryMatroid::projective(3);
        let all = f7.ground_set();
        assert_eq!(f7.restrict_to(all).unwrap(), f7);
        assert!(f7.restrict_to(ElementSet::EMPTY).unwrap().is_empty());
        let k = f7.restrict_to(all.without(6)).unwrap();
        assert_eq!(k, k4());
    }

    #[test]
    fn contraction_examples() {
        let f7 = BinaryMatroid::projective(3);
        let (line, map) = f7.contract_simplify(ElementSet::singleton(0)).unwrap();
        assert_eq!((line.len(), line.rank(), line.ambient_rank()), (3, 2, 2));
        assert_eq!(map.pairs.len(), 7);
        assert_eq!(map.get(Gf2Point(1)), Some(ElementFate::Contracted));
        let parallel = map
            .pairs
            .iter()
            .filter(|(_, f)| matches!(f, ElementFate::Parallel { .. }))
            .count();
        assert_eq!(parallel, 3);

        let (same, id) = f7.contract_simplify(ElementSet::EMPTY).unwrap();
        assert_eq!(same, f7);
        assert_eq!(id, ElementMap::identity(f7.points()));

        // AG(3,2)/x: no two points become parallel, giving 7 points of rank 3
        let ag = ag32();
        let (c, _) = ag.contract_simplify(ElementSet::singleton(0)).unwrap();
        assert_eq!((c.len(), c.rank()), (7, 3));
        let q = ag.contract_unsimplified(ElementSet::singleton(0)).unwrap();
        assert_eq!(q.parallel_classes().len(), 7);
        assert!(q.parallel_classes().iter().all(|p| p.len() == 1));
    }

    #[test]
    fn parallel_representative_is_smallest_point() {
        let f7 = BinaryMatroid::projective(3);
        let (_, map) = f7.contract_simplify(ElementSet::singleton(0)).unwrap();
        // contracting 1: {2,3}, {4,5}, {6,7} merge
        match map.get(Gf2Point(3)).unwrap() {
            ElementFate::Parallel { representative, .. } => assert_eq!(representative, Gf2Point(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dual_examples() {
        let f7 = BinaryMatroid::projective(3);
        let d = f7.dual();
        assert_eq!((d.len(), d.rank()), (7, 4));
        assert!(d.is_simple());

        let dd = d.dual();
        assert_eq!(dd.rank(), 3);
        // dual of the 4-circuit is four parallel elements of rank 1
        let cd = c4().dual();
        assert_eq!(cd.rank(), 1);
        assert_eq!(cd.parallel_classes().len(), 1);
    }

    #[test]
    fn dual_circuits_are_cocircuits() {
        for mat in [k4(), c4(), k4e(), ag32(), BinaryMatroid::projective(3)] {
            let mut co = mat.cocircuits();
            co.sort_unstable();
            // minimal complements of hyperplanes
            let minimal: Vec<_> = co
                .iter()
                .copied()
                .filter(|c| !co.iter().any(|d| d != c && d.is_subset(*c)))
                .collect();
            assert_eq!(mat.dual().circuits(None), minimal);
        }
    }

    #[test]
    fn circuit_examples() {
        assert_eq!(m(2, &[1, 2, 3]).circuits(None).len(), 1);
        let c = c4().circuits(None);
        assert_eq!(c, vec![c4().ground_set()]);
        let k = k4().circuits(None);
        assert_eq!(k.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(k.iter().filter(|c| c.len() == 4).count(), 3);
        assert_eq!(k.len(), 7);
        assert_eq!(k4().circuits(Some(3)).len(), 4);
    }

    #[test]
    fn circuits_match_subset_brute_force() {
        for mat in [k4(), ag32(), BinaryMatroid::projective(3)] {
            let v = VectorMatroid::from(&mat);
            let mut brute = Vec::new();
            for s in mat.ground_set().subsets() {
                if s.is_empty() {
                    continue;
                }
                let dependent = mat.rank_of_set(s) < s.len();
                let minimal = s.iter().all(|i| mat.rank_of_set(s.without(i)) == s.len() - 1);
                if dependent && minimal {
                    brute.push(s);
                }
            }
            brute.sort_unstable();
            assert_eq!(v.circuits(None), brute);
            let mut by_size = Vec::new();
            v.circuits_by_size(mat.len(), &mut by_size);
            by_size.sort_unstable();
            assert_eq!(by_size, brute);
        }
    }

    #[test]
    fn connectivity_examples() {
        let c = k4().connectivity();
        assert!(c.connected && c.three_connected);

        let two_triangles = m(4, &[1, 2, 3, 4, 8, 12]);
        let c = two_triangles.connectivity();
        assert!(!c.connected);
        let w = c.witness.unwrap();
        assert_eq!(w.side_a.len(), 3);
        assert_eq!(w.order, 1);

        let c = k4e().connectivity();
        assert!(c.connected && !c.three_connected);
        assert_eq!(c.witness.unwrap().order, 2);

        let e = BinaryMatroid::empty(0).connectivity();
        assert!(e.connected && e.three_connected);
    }

    #[test]
    fn flat_based_two_separation_agrees() {
        for mat in [k4(), k4e(), c4(), ag32(), BinaryMatroid::projective(3), m(4, &[1, 2, 4, 8, 3, 12, 15])] {
            if !mat.is_connected() {
                continue;
            }
            assert_eq!(
                mat.two_separation_by_partitions().is_some(),
                mat.two_separation_by_flats().is_some(),
                "{mat:?}"
            );
        }
    }

    #[test]
    fn vertical_separation_examples() {
        let f7 = BinaryMatroid::projective(3);
        for k in 2..5 {
            assert!(f7.vertical_separations(k).is_empty());
        }
        let v = c4().vertical_separations(2);
        assert!(!v.is_empty());
        assert!(v.iter().all(|(a, b)| a.len() == 2 && b.len() == 2));
        assert!(k4().vertical_separations(4).is_empty());
    }

    #[test]
    fn roundness_examples() {
        assert!(BinaryMatroid::projective(4).is_round());
        assert!(BinaryMatroid::projective(4).is_round_by_definition());
        assert!(k4().is_round());
        assert!(!c4().is_round());
        assert!(!m(2, &[1, 2]).is_round());
        assert!(BinaryMatroid::empty(0).is_round());
        for mat in [k4(), c4(), k4e(), ag32(), m(2, &[1, 2])] {
            assert_eq!(mat.is_round_by_definition(), mat.is_round_by_cocircuits());
        }
    }

    #[test]
    fn triangle_examples() {
        assert!(ag32().is_triangle_free());
        let f7 = BinaryMatroid::projective(3);
        for e in 0..7 {
            assert_eq!(f7.triangles(Some(e)).unwrap().len(), 3);
        }
        assert_eq!(f7.triangles(None).unwrap().len(), 7);
        assert!(c4().triangles(None).unwrap().is_empty());
        assert!(f7.triangles(Some(7)).is_err());
    }

    #[test]
    fn chordality_examples() {
        assert!(BinaryMatroid::projective(3).is_chordal());
        assert!(!c4().is_chordal());
        assert!(k4().is_chordal());
        assert!(!ag32().is_chordal());
        assert!(BinaryMatroid::empty(0).is_chordal());
    }

    #[test]
    fn hyperplanes_are_flats_of_corank_one() {
        let mat = ag32();
        let hs = mat.hyperplanes();
        assert_eq!(hs.len(), 14);
        let r = mat.rank();
        for h in hs {
            assert!(mat.is_flat(h));
            assert_eq!(mat.rank_of_set(h), r - 1);
        }
        assert_eq!(mat.hyperplanes().len(), mat.flats()[r - 1].len());
    }

    #[test]
    fn components_of_direct_sum() {
        let mat = m(5, &[1, 2, 3, 4, 8, 12, 16]);
        let comps = mat.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps.iter().map(|c| c.len()).collect::<Vec<_>>(), vec![3, 3, 1]);
    }

    #[test]
    fn reembedding_preserves_structure() {
        let mat = m(5, &[3, 5, 6, 17]);
        let r = mat.reembed();
        assert_eq!(r.ambient_rank(), 3);
        assert_eq!(r.len(), 4);
        assert_eq!(r.rank(), 3);
        assert_eq!(r.triangles(None).unwrap().len(), 1);
    }
}
