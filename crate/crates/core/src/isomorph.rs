//! Canonical forms and isomorphism testing.
//!
//! Simple binary matroids are uniquely representable, so two of them are
//! isomorphic exactly when their re-embedded point sets are related by an
//! invertible linear map. A canonical form is a fixed representative of that
//! orbit:
//!
//! * rank ≤ 4: a precomputed table of GL(4,2)-orbits on subsets of PG(3,2),
//!   mapping every subset to the numerically least member of its orbit;
//! * rank 5 and 6 with more than half of the projective points: the form of
//!   the complement in PG(r-1,2);
//! * otherwise: a depth-first search over ordered bases drawn from the
//!   matroid, keeping only the bases whose partial image is least and
//!   pruning with the automorphisms it discovers.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use dashmap::DashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::elements::ElementSet;
use crate::error::{domain, Result};
use crate::gf2::{rank_of, Echelon, Gf2Point};
use crate::matroid::BinaryMatroid;

/// Largest rank handled by the orbit table.
const TABLE_RANK: usize = 4;

/// Largest rank at which the complement in the projective space is used.
const COMPLEMENT_MAX_RANK: usize = 6;

/// Complete isomorphism invariant. Forms of matroids of different ranks are
/// never equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub rank: usize,
    pub code: Vec<u8>,
}

impl CanonicalForm {
    pub fn hex(&self) -> String {
        let mut s = format!("{:02x}:", self.rank);
        for b in &self.code {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(text: &str) -> Option<Self> {
        let (rank, code) = text.split_once(':')?;
        let rank = usize::from_str_radix(rank, 16).ok()?;
        if code.len() % 2 != 0 {
            return None;
        }
        let code = (0..code.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&code[i..i + 2], 16).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(CanonicalForm { rank, code })
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonicalForm::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad canonical form"))
    }
}

fn encode_points(rank: usize, points: &[Gf2Point]) -> Vec<u8> {
    if rank <= 8 {
        points.iter().map(|p| p.0 as u8).collect()
    } else {
        points.iter().flat_map(|p| p.0.to_le_bytes()).collect()
    }
}

fn point_mask(points: &[Gf2Point]) -> u16 {
    points.iter().fold(0u16, |m, p| m | 1 << (p.0 - 1))
}

fn mask_points(mask: u16) -> Vec<Gf2Point> {
    (0..15).filter(|i| mask >> i & 1 == 1).map(|i| Gf2Point(i + 1)).collect()
}

/// For every subset of PG(3,2) (as a 15-bit mask), the least mask in its
/// GL(4,2)-orbit. Orbits are joined along transvections, which generate the
/// group.
fn orbit_table() -> &'static [u16] {
    static TABLE: OnceLock<Vec<u16>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let size = 1usize << 15;
        let mut parent: Vec<u16> = (0..size).map(|i| i as u16).collect();
        fn find(p: &mut [u16], x: u16) -> u16 {
            let mut r = x;
            while p[r as usize] != r {
                r = p[r as usize];
            }
            let mut y = x;
            while p[y as usize] != r {
                let nx = p[y as usize];
                p[y as usize] = r;
                y = nx;
            }
            r
        }
        // point permutation of each transvection x -> x + x_i e_j
        let mut perms: Vec<[u8; 16]> = Vec::new();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    let mut perm = [0u8; 16];
                    for x in 0..16u8 {
                        perm[x as usize] = x ^ ((x >> i & 1) << j);
                    }
                    perms.push(perm);
                }
            }
        }
        for mask in 0..size as u32 {
            for perm in &perms {
                let mut image = 0u32;
                let mut bits = mask;
                while bits != 0 {
                    let b = bits.trailing_zeros();
                    bits &= bits - 1;
                    image |= 1 << (perm[b as usize + 1] - 1);
                }
                let (a, b) = (find(&mut parent, mask as u16), find(&mut parent, image as u16));
                if a != b {
                    // keep the smaller mask as root so roots are orbit minima
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi as usize] = lo;
                }
            }
        }
        (0..size).map(|m| find(&mut parent, m as u16)).collect()
    })
}

/// The canonical 15-bit mask of a subset of PG(3,2).
pub(crate) fn table_canonical_mask(mask: u16) -> u16 {
    orbit_table()[mask as usize]
}

/// Masks of subsets of PG(3,2) that are least in their GL(4,2)-orbit, ascending.
pub(crate) fn table_representatives() -> Vec<u16> {
    let t = orbit_table();
    (0..t.len()).filter(|&m| t[m] as usize == m).map(|m| m as u16).collect()
}

pub fn canonical_form(m: &BinaryMatroid) -> CanonicalForm {
    let points = m.reembedded_points();
    let r = rank_of(&points);
    canonical_form_spanning(r, points)
}

/// Form of a point set that spans `F_2^r`.
fn canonical_form_spanning(r: usize, points: Vec<Gf2Point>) -> CanonicalForm {
    if r <= TABLE_RANK {
        let mask = table_canonical_mask(point_mask(&points));
        return CanonicalForm {
            rank: r,
            code: encode_points(r, &mask_points(mask)),
        };
    }
    let total = (1usize << r) - 1;
    if r <= COMPLEMENT_MAX_RANK && 2 * points.len() > total {
        let mut inside = vec![false; total + 1];
        for p in &points {
            inside[p.0 as usize] = true;
        }
        let rest: Vec<Gf2Point> = (1..=total as u32)
            .filter(|&v| !inside[v as usize])
            .map(Gf2Point)
            .collect();
        let rest = BinaryMatroid::new(r, rest).expect("complement is simple");
        let inner = canonical_form(&rest);
        let mut code = vec![0u8, inner.rank as u8];
        code.extend(inner.code);
        return CanonicalForm { rank: r, code };
    }
    let labeling = search(r, &points);
    CanonicalForm {
        rank: r,
        code: encode_points(r, &labeling.sorted_images()),
    }
}

/// A canonical relabelling: the image of every element in a canonical
/// coordinate system. Computed by basis search at every rank, so its codes
/// are only comparable with other labelings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub rank: usize,
    /// Image of element `i`, in element order.
    pub images: Vec<Gf2Point>,
}

impl Labeling {
    pub fn sorted_images(&self) -> Vec<Gf2Point> {
        let mut v = self.images.clone();
        v.sort_unstable();
        v
    }
}

pub fn canonical_labeling(m: &BinaryMatroid) -> Labeling {
    let points = m.reembedded_points();
    let r = rank_of(&points);
    search(r, &points)
}

/// Per-element isomorphism invariant used to split ties during the basis
/// search: triangles and 4-circuits through the element.
fn element_colors(points: &[Gf2Point]) -> Vec<u32> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let has = |v: Gf2Point| sorted.binary_search(&v).is_ok();
    points
        .iter()
        .map(|&e| {
            let mut tri = 0u32;
            let mut quad = 0u32;
            for (i, &a) in points.iter().enumerate() {
                if a == e {
                    continue;
                }
                if has(e ^ a) {
                    tri += 1;
                }
                for &b in &points[i + 1..] {
                    if b != e && has(e ^ a ^ b) {
                        quad += 1;
                    }
                }
            }
            // each triangle is seen twice, each 4-circuit three times
            (tri / 2) << 16 | (quad / 3)
        })
        .collect()
}

type Segment = Vec<(u32, u32)>;
/// A candidate basis vector, its extended echelon and its tagged segment.
type Child = (usize, Echelon, Vec<(u32, u32, usize)>);

fn compare_segments(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    // a longer segment puts a smaller image where the shorter one has
    // to continue with a point of higher width
    b.len().cmp(&a.len())
}

fn compare_paths(a: &[Segment], b: &[Segment]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| compare_segments(x, y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

struct Leaf {
    basis: Vec<usize>,
    keys: Vec<Segment>,
    images: Vec<u32>,
}

/// Depth-first search over ordered bases of a spanning point set.
///
/// After choosing `b_1..b_k`, the points of their span receive images below
/// `2^k` and form a prefix of the final sorted image list, so a partial basis
/// whose prefix is beaten by a sibling or by the best leaf so far is dropped.
/// Two leaves with equal keys differ by an automorphism; those are kept and
/// used to skip candidates equivalent to ones already explored.
struct BasisSearch<'a> {
    points: &'a [Gf2Point],
    colors: Vec<u32>,
    r: usize,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
    path: Vec<usize>,
    keys: Vec<Segment>,
    images: Vec<u32>,
}

impl BasisSearch<'_> {
    /// Returns `Some(d)` when the subtree below depth `d` is known to be an
    /// image of an explored one.
    fn run(&mut self, ech: &Echelon, span: ElementSet) -> Option<usize> {
        let depth = self.path.len();
        if let Some(best) = &self.best {
            if compare_paths(&self.keys, &best.keys[..depth]) == Ordering::Greater {
                return None;
            }
        }
        if depth == self.r {
            return self.leaf();
        }
        let outside = ElementSet::full(self.points.len()).difference(span);
        let mut children: Vec<Child> = Vec::new();
        let mut least: Option<Segment> = None;
        for x in outside {
            let mut e = ech.clone();
            e.insert(self.points[x]);
            let mut seg: Vec<(u32, u32, usize)> = outside
                .iter()
                .filter_map(|p| {
                    let (res, combo) = e.reduce(self.points[p]);
                    res.is_zero().then_some((combo as u32, self.colors[p], p))
                })
                .collect();
            seg.sort_unstable();
            let key: Segment = seg.iter().map(|&(i, c, _)| (i, c)).collect();
            match least.as_ref().map(|l| compare_segments(&key, l)) {
                Some(Ordering::Greater) => continue,
                Some(Ordering::Less) | None => {
                    least = Some(key);
                    children.clear();
                }
                Some(Ordering::Equal) => {}
            }
            children.push((x, e, seg));
        }
        let least = least.expect("points span");
        let mut parent: Vec<usize> = (0..self.points.len()).collect();
        let mut merged = 0;
        let mut tried: Vec<usize> = Vec::new();
        for (x, e, seg) in children {
            merged = self.merge_orbits(&mut parent, merged);
            let root = find(&mut parent, x);
            if tried.iter().any(|&t| find(&mut parent, t) == root) {
                continue;
            }
            tried.push(x);
            let mut child_span = span;
            for &(img, _, p) in &seg {
                child_span.insert(p);
                self.images[p] = img;
            }
            self.path.push(x);
            self.keys.push(least.clone());
            let out = self.run(&e, child_span);
            self.path.pop();
            self.keys.pop();
            if let Some(d) = out {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Joins orbits under the automorphisms found since the last call that
    /// fix the current path pointwise.
    fn merge_orbits(&self, parent: &mut [usize], from: usize) -> usize {
        for sigma in &self.autos[from..] {
            if self.path.iter().all(|&p| sigma[p] == p) {
                for (x, &y) in sigma.iter().enumerate() {
                    let (a, b) = (find(parent, x), find(parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        self.autos.len()
    }

    fn leaf(&mut self) -> Option<usize> {
        let Some(best) = &self.best else {
            self.record();
            return None;
        };
        match compare_paths(&self.keys, &best.keys) {
            Ordering::Less => {
                self.record();
                None
            }
            Ordering::Greater => None,
            Ordering::Equal => {
                let mut owner = std::collections::HashMap::with_capacity(best.images.len());
                for (y, &img) in best.images.iter().enumerate() {
                    owner.insert(img, y);
                }
                let sigma: Vec<usize> = self.images.iter().map(|img| owner[img]).collect();
                let d = self
                    .path
                    .iter()
                    .zip(&best.basis)
                    .position(|(a, b)| a != b)
                    .unwrap_or(self.r);
                self.autos.push(sigma);
                Some(d)
            }
        }
    }

    fn record(&mut self) {
        self.best = Some(Leaf {
            basis: self.path.clone(),
            keys: self.keys.clone(),
            images: self.images.clone(),
        });
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Least image over ordered bases of `points`, which must span `F_2^r`.
fn search(r: usize, points: &[Gf2Point]) -> Labeling {
    let mut s = BasisSearch {
        points,
        colors: element_colors(points),
        r,
        best: None,
        autos: Vec::new(),
        path: Vec::new(),
        keys: Vec::new(),
        images: vec![0; points.len()],
    };
    s.run(&Echelon::new(), ElementSet::EMPTY);
    let images = s
        .best
        .map(|b| b.images.into_iter().map(Gf2Point).collect())
        .unwrap_or_default();
    Labeling { rank: r, images }
}

/// Cheap invariants compared before canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub size: usize,
    pub rank: usize,
    pub triangles: usize,
    pub flat_profile: Vec<usize>,
}

pub fn invariants(m: &BinaryMatroid) -> Invariants {
    Invariants {
        size: m.len(),
        rank: m.rank(),
        triangles: m.triangles(None).expect("no element given").len(),
        flat_profile: m.flat_profile(),
    }
}

pub fn are_isomorphic(m: &BinaryMatroid, n: &BinaryMatroid) -> bool {
    if m.len() != n.len() || m.rank() != n.rank() {
        return false;
    }
    if m.triangles(None).unwrap().len() != n.triangles(None).unwrap().len() {
        return false;
    }
    if m.flat_profile() != n.flat_profile() {
        return false;
    }
    canonical_form(m) == canonical_form(n)
}

/// An isomorphism as a map from element indices of `m` to those of `n`.
pub fn find_isomorphism(m: &BinaryMatroid, n: &BinaryMatroid) -> Option<Vec<usize>> {
    if m.len() != n.len() || m.rank() != n.rank() {
        return None;
    }
    let (a, b) = (canonical_labeling(m), canonical_labeling(n));
    if a.sorted_images() != b.sorted_images() {
        return None;
    }
    a.images
        .iter()
        .map(|img| b.images.iter().position(|x| x == img))
        .collect()
}

/// Applies the linear map sending unit vector `i` to `columns[i]`. The map
/// must be invertible on `F_2^r`, where `r = columns.len()` is `m`'s ambient
/// rank. Labels follow their points.
pub fn transform(m: &BinaryMatroid, columns: &[Gf2Point]) -> Result<BinaryMatroid> {
    let r = m.ambient_rank();
    if columns.len() != r || rank_of(columns) != r || columns.iter().any(|c| c.width() > r) {
        return domain("transform needs an invertible map of the ambient space");
    }
    let apply = |p: Gf2Point| {
        let mut out = Gf2Point::ZERO;
        for (i, &c) in columns.iter().enumerate() {
            if p.0 >> i & 1 == 1 {
                out ^= c;
            }
        }
        out
    };
    let points = m.points().iter().map(|&p| apply(p)).collect();
    match m.labels() {
        Some(l) => BinaryMatroid::with_labels(r, points, l.to_vec()),
        None => BinaryMatroid::new(r, points),
    }
}

/// Canonical forms keyed by the raw point list, shared across workers.
#[derive(Default)]
pub struct FormCache {
    map: DashMap<(usize, Vec<Gf2Point>), CanonicalForm>,
}

impl FormCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn form(&self, m: &BinaryMatroid) -> CanonicalForm {
        let key = (m.ambient_rank(), m.points().to_vec());
        if let Some(f) = self.map.get(&key) {
            return f.clone();
        }
        self.map.entry(key).or_insert_with(|| canonical_form(m)).clone()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
