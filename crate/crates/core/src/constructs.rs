//! Conings, generalized parallel connections across projective geometries,
//! projective targets, binary spikes, line saturation and the named catalog.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::elements::{ElementSet, MAX_ELEMENTS};
use crate::error::{domain, Result};
use crate::gf2::{pg_points, rank_of, Echelon, Gf2Basis, Gf2Point};
use crate::isomorph::{canonical_form, CanonicalForm};
use crate::matroid::{BinaryMatroid, VectorMatroid};

/// A coning `A(N)` or tipless coning `A(N)\p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConedMatroid {
    pub matroid: BinaryMatroid,
    /// Element index of the tip `p`, when present.
    pub tip: Option<usize>,
}

fn cone_points(n: &BinaryMatroid, tipped: bool) -> Vec<Gf2Point> {
    let apex = Gf2Point::unit(n.ambient_rank());
    let mut pts: Vec<Gf2Point> = n.points().to_vec();
    pts.extend(n.points().iter().map(|&x| x ^ apex));
    if tipped {
        pts.push(apex);
    }
    pts
}

/// Adds a coloop `p = 2^r` to `N` and the third point of every line through
/// `p` and a point of `N`; the tipless variant drops `p`. Labels mark
/// provenance: an element of `N` keeps its label (or `e<i>`), its lift gets a
/// trailing `'`, and the tip is `p`.
pub fn cone(n: &BinaryMatroid, tipped: bool) -> ConedMatroid {
    let base: Vec<String> = (0..n.len())
        .map(|i| n.label(i).map_or_else(|| format!("e{i}"), str::to_owned))
        .collect();
    let mut labels = base.clone();
    labels.extend(base.iter().map(|l| format!("{l}'")));
    if tipped {
        let mut tip = "p".to_string();
        while base.contains(&tip) {
            tip.push('p');
        }
        labels.push(tip);
    }
    let r = n.ambient_rank() + 1;
    let pts = cone_points(n, tipped);
    let apex = Gf2Point::unit(r - 1);
    let matroid = BinaryMatroid::with_labels(r, pts, labels).expect("coning keeps points distinct");
    let tip = tipped.then(|| matroid.index_of(apex).unwrap());
    ConedMatroid { matroid, tip }
}

/// [`cone`] without labels.
pub fn cone_unlabeled(n: &BinaryMatroid, tipped: bool) -> BinaryMatroid {
    BinaryMatroid::new(n.ambient_rank() + 1, cone_points(n, tipped)).expect("coning keeps points distinct")
}

/// Result of gluing two matroids along isomorphic projective flats.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub matroid: BinaryMatroid,
    /// Index in the result of each element of the first matroid.
    pub left: Vec<usize>,
    /// Index in the result of each element of the second matroid.
    pub right: Vec<usize>,
}

/// Whether `set` is a flat of `m` on which `m` restricts to a projective
/// geometry.
pub fn is_projective_flat(m: &BinaryMatroid, set: ElementSet) -> bool {
    let k = m.rank_of_set(set);
    m.is_flat(set) && set.len() + 1 == 1 << k
}

/// Generalized parallel connection of `m1` and `m2` across a projective
/// geometry. `glue` pairs element indices `(a, b)` of `m1` and `m2`; its
/// first components must form a projective flat `F1` of `m1`, its second
/// components a projective flat `F2` of `m2`, and the pairing must be a
/// linear isomorphism `F1 -> F2`.
pub fn gpc_across_pg(m1: &BinaryMatroid, m2: &BinaryMatroid, glue: &[(usize, usize)]) -> Result<Gluing> {
    let f1: ElementSet = glue.iter().map(|&(a, _)| a).collect();
    let f2: ElementSet = glue.iter().map(|&(_, b)| b).collect();
    m1.check_subset(f1)?;
    m2.check_subset(f2)?;
    if f1.len() != glue.len() || f2.len() != glue.len() {
        return domain("glue is not a bijection");
    }
    if !is_projective_flat(m1, f1) || !is_projective_flat(m2, f2) {
        return domain("glued sets must be flats that are projective geometries");
    }
    // basis of F1 from its lexicographically least independent points
    let mut sorted_glue = glue.to_vec();
    sorted_glue.sort_unstable();
    let mut ech = Echelon::new();
    let mut b1 = Vec::new();
    let mut b2 = Vec::new();
    for &(a, b) in &sorted_glue {
        if ech.insert(m1.points()[a]) {
            b1.push(m1.points()[a]);
            b2.push(m2.points()[b]);
        }
    }
    let k = b1.len();
    let basis1 = Gf2Basis::new(b1.clone()).expect("independent");
    let Some(basis2) = Gf2Basis::new(b2.clone()) else {
        return domain("glue is not a linear isomorphism");
    };
    for &(a, b) in glue {
        let c = basis1.coordinates(m1.points()[a]).expect("inside the flat");
        if basis2.combine(c) != m2.points()[b] {
            return domain("glue is not a linear isomorphism");
        }
    }
    let extend = |m: &BinaryMatroid, start: Vec<Gf2Point>| {
        let mut e = Echelon::new();
        let mut basis = start;
        for &p in &basis {
            e.insert(p);
        }
        for &p in m.points() {
            if e.insert(p) {
                basis.push(p);
            }
        }
        Gf2Basis::new(basis).expect("independent")
    };
    let full1 = extend(m1, b1);
    let full2 = extend(m2, b2);
    let (r1, r2) = (full1.len(), full2.len());
    let shared = (1u32 << k) - 1;
    let place1 = |p: Gf2Point| full1.coordinates(p).unwrap();
    // the second side's private coordinates sit above the first side's
    let place2 = |p: Gf2Point| {
        let c = full2.coordinates(p).unwrap().0;
        Gf2Point((c & shared) | (c & !shared) << (r1 - k))
    };
    let left_pts: Vec<Gf2Point> = m1.points().iter().map(|&p| place1(p)).collect();
    let right_pts: Vec<Gf2Point> = m2.points().iter().map(|&p| place2(p)).collect();
    let mut all: Vec<Gf2Point> = left_pts.iter().chain(&right_pts).copied().collect();
    all.sort_unstable();
    all.dedup();
    let matroid = BinaryMatroid::new(r1 + r2 - k, all)?;
    let left = left_pts.iter().map(|&p| matroid.index_of(p).unwrap()).collect();
    let right = right_pts.iter().map(|&p| matroid.index_of(p).unwrap()).collect();
    Ok(Gluing { matroid, left, right })
}

/// A coning sequence: `1` is a tipped coning, `0` a tipless one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TargetString(String);

impl TargetString {
    /// Accepts a nonempty string over `{0,1}` starting with `1`, or exactly `"0"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() || !s.chars().all(|c| c == '0' || c == '1') {
            return domain(format!("{s:?} is not a 0-1 string"));
        }
        if s.starts_with('0') && s != "0" {
            return domain(format!("{s:?} must start with 1 (or be exactly \"0\")"));
        }
        if s.len() > 7 || u64::from_str_radix(s, 2).unwrap() > MAX_ELEMENTS as u64 {
            return domain(format!("{s:?} denotes more than {MAX_ELEMENTS} elements"));
        }
        Ok(TargetString(s.to_owned()))
    }

    /// The string for `n` elements: `n` in binary.
    pub fn from_size(n: u32) -> Result<Self> {
        TargetString::parse(&format!("{n:b}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The integer the string denotes in binary.
    pub fn value(&self) -> u64 {
        u64::from_str_radix(&self.0, 2).expect("validated")
    }
}

impl TryFrom<String> for TargetString {
    type Error = crate::error::Error;
    fn try_from(s: String) -> Result<Self> {
        TargetString::parse(&s)
    }
}

impl From<TargetString> for String {
    fn from(t: TargetString) -> String {
        t.0
    }
}

/// Folds conings over any bit sequence, starting from the empty matroid of
/// ambient rank 0. Leading tipless conings leave the matroid empty but still
/// raise the ambient rank.
pub fn coning_sequence(bits: &[bool]) -> BinaryMatroid {
    bits.iter()
        .fold(BinaryMatroid::empty(0), |m, &tipped| cone_unlabeled(&m, tipped))
}

/// The projective target encoded by `s`, re-embedded to its own rank.
pub fn target_from_bits(s: &TargetString) -> BinaryMatroid {
    let bits: Vec<bool> = s.as_str().chars().map(|c| c == '1').collect();
    let m = coning_sequence(&bits);
    if s.as_str() == "0" {
        BinaryMatroid::empty(0)
    } else {
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

/// A full flag `F_0 ⊂ F_1 ⊂ ... ⊂ F_r` of projective flats of `P_r` (in the
/// matroid's re-embedded coordinates) with each layer `F_i - F_{i-1}` inside
/// the matroid (green) or outside it (red).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFlag {
    pub rank: usize,
    /// `flats[i]` lists the points of `F_i`, ascending.
    pub flats: Vec<Vec<Gf2Point>>,
    /// `colors[i]` is the color of `F_{i+1} - F_i`.
    pub colors: Vec<Color>,
}

/// Searches for a target flag of `m` inside `P_r`, `r = rank(m)`.
pub fn is_projective_target(m: &BinaryMatroid) -> Option<TargetFlag> {
    let pts = m.reembedded_points();
    let r = rank_of(&pts);
    let basis: Vec<Gf2Point> = (0..r).map(Gf2Point::unit).collect();
    let mut failed: HashSet<(usize, CanonicalForm)> = HashSet::new();
    let mut layers = Vec::new();
    if !target_search(&basis, &pts, &mut failed, &mut layers) {
        return None;
    }
    // layers arrive bottom-up: (basis of F_i, color of F_i - F_{i-1})
    let mut flats = vec![Vec::new()];
    let mut colors = Vec::new();
    for (b, color) in layers {
        let basis = Gf2Basis::new(b).expect("basis");
        let mut span: Vec<Gf2Point> = (1u32..1 << basis.len())
            .map(|c| basis.combine(Gf2Point(c)))
            .collect();
        span.sort_unstable();
        flats.push(span);
        colors.push(color);
    }
    Some(TargetFlag { rank: r, flats, colors })
}

/// `space` is a basis of the current projective flat and `green` the matroid
/// points inside it. On success, pushes (basis of the flat, color of the flat
/// minus its chosen hyperplane), innermost flat first.
fn target_search(
    space: &[Gf2Point],
    green: &[Gf2Point],
    failed: &mut HashSet<(usize, CanonicalForm)>,
    layers: &mut Vec<(Vec<Gf2Point>, Color)>,
) -> bool {
    let d = space.len();
    if d == 0 {
        return true;
    }
    let local = Gf2Basis::new(space.to_vec()).expect("basis");
    let coords: Vec<Gf2Point> = green.iter().map(|&g| local.coordinates(g).unwrap()).collect();
    let key = (
        d,
        canonical_form(&BinaryMatroid::new(d, coords.clone()).expect("distinct points")),
    );
    if failed.contains(&key) {
        return false;
    }
    let outside_count = 1usize << (d - 1);
    for f in 1u32..1 << d {
        let off: Vec<&Gf2Point> = coords.iter().filter(|c| (c.0 & f).count_ones() % 2 == 1).collect();
        let color = if off.is_empty() {
            Color::Red
        } else if off.len() == outside_count {
            Color::Green
        } else {
            continue;
        };
        // basis of the hyperplane ker f, in local coordinates
        let pivot = f.trailing_zeros();
        let hyper: Vec<Gf2Point> = (0..d as u32)
            .filter(|&i| i != pivot)
            .map(|i| {
                let v = 1u32 << i;
                if f >> i & 1 == 1 {
                    Gf2Point(v | 1 << pivot)
                } else {
                    Gf2Point(v)
                }
            })
            .collect();
        let hyper_ambient: Vec<Gf2Point> = hyper.iter().map(|&h| local.combine(h)).collect();
        let inside: Vec<Gf2Point> = coords
            .iter()
            .filter(|c| (c.0 & f).count_ones() % 2 == 0)
            .map(|&c| local.combine(c))
            .collect();
        if target_search(&hyper_ambient, &inside, failed, layers) {
            layers.push((space.to_vec(), color));
            return true;
        }
    }
    failed.insert(key);
    false
}

/// The binary `r`-spike `[I_r | J_r - I_r | 1]` with tip `t` (the all-ones
/// column). With `cotip`, the column `e_1` is deleted and the third point
/// of the triangle through it and `t` is labelled `t*`. Other columns are
/// labelled `a<i>` (for `e_i`) and `b<i>` (for `1 - e_i`).
pub fn spike(r: usize, cotip: bool) -> Result<BinaryMatroid> {
    if r < 3 {
        return domain(format!("spikes need rank at least 3, got {r}"));
    }
    if r > 31 {
        return domain("spike rank too large");
    }
    let ones = (1u32 << r) - 1;
    let mut pts = Vec::new();
    let mut labels = Vec::new();
    for i in 0..r {
        if !(cotip && i == 0) {
            pts.push(Gf2Point::unit(i));
            labels.push(format!("a{}", i + 1));
        }
    }
    for i in 0..r {
        pts.push(Gf2Point(ones ^ 1 << i));
        labels.push(if cotip && i == 0 {
            "t*".to_string()
        } else {
            format!("b{}", i + 1)
        });
    }
    pts.push(Gf2Point(ones));
    labels.push("t".into());
    BinaryMatroid::with_labels(r, pts, labels)
}

/// Adds `x + y` for every other element `y`: every line through `x` becomes full.
pub fn line_saturate(m: &BinaryMatroid, x: usize) -> Result<BinaryMatroid> {
    if x >= m.len() {
        return domain(format!("element {x} not in a {}-element ground set", m.len()));
    }
    let px = m.points()[x];
    let mut pts: Vec<Gf2Point> = m.points().to_vec();
    pts.extend(m.points().iter().filter(|&&y| y != px).map(|&y| y ^ px));
    pts.sort_unstable();
    pts.dedup();
    BinaryMatroid::new(m.ambient_rank(), pts)
}

// ---------------------------------------------------------------------------
// Families and the named catalog.

/// `AG(r-1, 2)`: the points of `F_2^r` with top coordinate 1.
pub fn affine(r: usize) -> BinaryMatroid {
    if r == 0 {
        return BinaryMatroid::empty(0);
    }
    let top = 1u32 << (r - 1);
    BinaryMatroid::new(r, (top..top << 1).map(Gf2Point).collect()).unwrap()
}

/// The circuit `U_{n-1,n}`: `e_1, ..., e_{n-1}` and their sum.
pub fn circuit(n: usize) -> Result<BinaryMatroid> {
    if n < 3 {
        return domain("circuits need at least three elements to be simple");
    }
    let r = n - 1;
    let mut pts: Vec<Gf2Point> = (0..r).map(Gf2Point::unit).collect();
    pts.push(Gf2Point((1 << r) - 1));
    BinaryMatroid::new(r, pts)
}

/// `M(K_n)`: edge `{i, n}` is `e_i`, edge `{i, j}` is `e_i + e_j`.
pub fn complete_graph(n: usize) -> Result<BinaryMatroid> {
    if n < 1 {
        return domain("complete graphs need a vertex");
    }
    let r = n - 1;
    let mut pts: Vec<Gf2Point> = (0..r).map(Gf2Point::unit).collect();
    for i in 0..r {
        for j in i + 1..r {
            pts.push(Gf2Point(1 << i | 1 << j));
        }
    }
    BinaryMatroid::new(r, pts)
}

/// Cycle matroid of a graph on vertices `0..v`, given by edges. Vertex
/// `v - 1` is grounded; edges must not be loops or repeated.
pub fn graphic(v: usize, edges: &[(usize, usize)]) -> Result<BinaryMatroid> {
    if v == 0 {
        return domain("graph needs a vertex");
    }
    let r = v - 1;
    let vec_of = |x: usize| if x == r { 0 } else { 1u32 << x };
    let pts = edges
        .iter()
        .map(|&(a, b)| {
            if a >= v || b >= v || a == b {
                domain(format!("bad edge ({a}, {b})"))
            } else {
                Ok(Gf2Point(vec_of(a) ^ vec_of(b)))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    BinaryMatroid::new(r, pts).map(|m| m.reembed())
}

/// Simple matroid of a column list known to be simple.
fn simple(v: VectorMatroid) -> BinaryMatroid {
    v.to_simple().expect("catalog matroid is simple")
}

fn k33() -> BinaryMatroid {
    let edges: Vec<(usize, usize)> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    graphic(6, &edges).unwrap()
}

fn wheel(spokes: usize) -> BinaryMatroid {
    // hub is vertex `spokes`
    let mut edges = Vec::new();
    for i in 0..spokes {
        edges.push((i, spokes));
        edges.push((i, (i + 1) % spokes));
    }
    graphic(spokes + 1, &edges).unwrap()
}

fn r10() -> BinaryMatroid {
    // the ten vectors of F_2^5 with exactly three ones
    let pts = (0u32..32).filter(|v| v.count_ones() == 3).map(Gf2Point).collect();
    BinaryMatroid::new(5, pts).unwrap()
}

/// One catalog entry with the figures its self-test checks.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub rank: usize,
    pub size: usize,
    pub triangles: usize,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "F7", description: "Fano plane PG(2,2)", rank: 3, size: 7, triangles: 7 },
    CatalogEntry { name: "F7*", description: "dual of the Fano plane", rank: 4, size: 7, triangles: 0 },
    CatalogEntry { name: "MC4", description: "4-circuit M(C4)", rank: 3, size: 4, triangles: 0 },
    CatalogEntry { name: "MK4e", description: "M(K4\\e)", rank: 3, size: 5, triangles: 2 },
    CatalogEntry { name: "MK4", description: "M(K4)", rank: 3, size: 6, triangles: 4 },
    CatalogEntry { name: "AG32", description: "affine geometry AG(3,2)", rank: 4, size: 8, triangles: 0 },
    CatalogEntry { name: "S8", description: "binary 4-spike with tip and cotip", rank: 4, size: 8, triangles: 3 },
    CatalogEntry { name: "W4", description: "wheel with four spokes", rank: 4, size: 8, triangles: 4 },
    CatalogEntry { name: "R10", description: "ten weight-3 vectors of F_2^5", rank: 5, size: 10, triangles: 0 },
    CatalogEntry { name: "M(K33)", description: "cycle matroid of K_{3,3}", rank: 5, size: 9, triangles: 0 },
    CatalogEntry { name: "M*(K33)", description: "bond matroid of K_{3,3}", rank: 4, size: 9, triangles: 6 },
];

fn parse_param(name: &str, prefixes: &[&str], suffix: &str) -> Option<usize> {
    prefixes.iter().find_map(|p| {
        name.strip_prefix(p)
            .and_then(|rest| rest.strip_suffix(suffix))
            .and_then(|n| n.parse().ok())
    })
}

/// A named matroid. Fixed names are listed in [`CATALOG`]; parametrised
/// families are `PG(k,2)`, `AG(k,2)`, `M(Kn)` (or `MKn`), `M(Cn)` (or
/// `MCn`).
pub fn named(name: &str) -> Result<BinaryMatroid> {
    let m = match name {
        "F7" | "PG(2,2)" => BinaryMatroid::projective(3),
        "F7*" => simple(BinaryMatroid::projective(3).dual()),
        "MC4" | "M(C4)" => circuit(4)?,
        "MK4e" | "M(K4\\e)" | "M(K4-e)" => BinaryMatroid::projective(3).delete(ElementSet::from_indices([5, 6]))?,
        "MK4" | "M(K4)" => complete_graph(4)?,
        "AG32" | "AG(3,2)" => affine(4),
        "S8" => spike(4, true)?.without_labels(),
        "W4" => wheel(4),
        "R10" => r10(),
        "M(K33)" => k33(),
        "M*(K33)" => simple(k33().dual()),
        _ => {
            if let Some(k) = parse_param(name, &["PG("], ",2)") {
                if k + 1 > 16 {
                    return domain("projective geometry too large");
                }
                BinaryMatroid::projective(k + 1)
            } else if let Some(k) = parse_param(name, &["AG("], ",2)") {
                if k + 1 > 7 {
                    return domain("affine geometry too large");
                }
                affine(k + 1)
            } else if let Some(n) = parse_param(name, &["M(K", "MK"], ")").or_else(|| parse_param(name, &["MK"], "")) {
                if n > 11 {
                    return domain("complete graph too large");
                }
                complete_graph(n)?
            } else if let Some(n) = parse_param(name, &["M(C"], ")").or_else(|| parse_param(name, &["MC"], "")) {
                if n > 64 {
                    return domain("circuit too large");
                }
                circuit(n)?
            } else {
                return domain(format!("unknown catalog name {name:?}"));
            }
        }
    };
    Ok(m)
}

/// Runs the self-test of one fixed catalog entry: rank, size and triangle count.
pub fn self_test(entry: &CatalogEntry) -> Result<()> {
    let m = named(entry.name)?;
    let tri = m.triangles(None)?.len();
    if m.rank() != entry.rank || m.len() != entry.size || tri != entry.triangles {
        return domain(format!(
            "{}: expected rank {}, size {}, {} triangles; got {}, {}, {}",
            entry.name,
            entry.rank,
            entry.size,
            entry.triangles,
            m.rank(),
            m.len(),
            tri
        ));
    }
    Ok(())
}

/// All nonzero points of `F_2^r` outside `m`, as a matroid of the same ambient rank.
pub fn complement_in_pg(m: &BinaryMatroid) -> BinaryMatroid {
    let inside: HashSet<Gf2Point> = m.points().iter().copied().collect();
    let pts = pg_points(m.ambient_rank())
        .into_iter()
        .filter(|p| !inside.contains(p))
        .collect();
    BinaryMatroid::new(m.ambient_rank(), pts).unwrap()
}
