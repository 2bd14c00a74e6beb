//! Linear algebra over GF(2) on integer-encoded vectors.
//!
//! A vector of `F_2^r` is stored in the low `r` bits of a `u32`; bit `i`
//! (least significant first) is the coefficient of the `(i+1)`-th basis
//! vector. All elimination works on whole words.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use serde::{Deserialize, Serialize};

/// Largest ambient rank a [`Gf2Point`] can carry.
pub const MAX_AMBIENT_RANK: usize = 32;

/// A vector of `F_2^r`; when nonzero, a point of the projective space `PG(r-1, 2)`.
#[derive(
    Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Gf2Point(pub u32);

impl Gf2Point {
    pub const ZERO: Gf2Point = Gf2Point(0);

    /// The `i`-th standard basis vector, zero-based.
    #[inline]
    pub fn unit(i: usize) -> Self {
        Gf2Point(1 << i)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Number of coordinates needed to hold this vector.
    #[inline]
    pub fn width(self) -> usize {
        (u32::BITS - self.0.leading_zeros()) as usize
    }

    #[inline]
    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }

    /// Column string of length `r`, leftmost character = coordinate `r`.
    pub fn to_column(self, r: usize) -> String {
        (0..r)
            .rev()
            .map(|i| if self.0 >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for Gf2Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

impl fmt::Display for Gf2Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl BitXor for Gf2Point {
    type Output = Gf2Point;
    #[inline]
    fn bitxor(self, rhs: Self) -> Self {
        Gf2Point(self.0 ^ rhs.0)
    }
}

impl BitXorAssign for Gf2Point {
    #[inline]
    fn bitxor_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl From<u32> for Gf2Point {
    fn from(v: u32) -> Self {
        Gf2Point(v)
    }
}

/// Row-echelon form keyed by leading bit. Each stored row remembers which
/// inserted generators were xored into it, so vectors in the span can be
/// written in terms of the generators.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    // (row, combination of inserted generators), indexed by leading bit
    rows: [(u32, u64); 32],
    occupied: u32,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.occupied.count_ones() as usize
    }

    /// Reduce `v` against the stored rows. Returns the residual and the
    /// combination of generators that was subtracted.
    #[inline]
    pub fn reduce(&self, v: Gf2Point) -> (Gf2Point, u64) {
        let mut x = v.0;
        let mut combo = 0u64;
        let mut pending = x & self.occupied;
        while pending != 0 {
            let lead = 31 - (x & self.occupied).leading_zeros();
            let (row, c) = self.rows[lead as usize];
            x ^= row;
            combo ^= c;
            pending = x & self.occupied;
        }
        (Gf2Point(x), combo)
    }

    #[inline]
    pub fn contains(&self, v: Gf2Point) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Insert a generator. Returns `true` when it increased the rank.
    /// Generators are numbered in insertion order, including dependent ones;
    /// at most 64 generators are tracked.
    pub fn insert(&mut self, v: Gf2Point) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let tag = if id < 64 { 1u64 << id } else { 0 };
        let (r, combo) = self.reduce(v);
        if r.is_zero() {
            return false;
        }
        let lead = 31 - r.0.leading_zeros();
        self.rows[lead as usize] = (r.0, combo ^ tag);
        self.occupied |= 1 << lead;
        true
    }

    /// Bitmask of the pivot (leading) positions.
    pub fn pivots(&self) -> u32 {
        self.occupied
    }
}

/// An ordered, linearly independent list of vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Basis {
    vectors: Vec<Gf2Point>,
    echelon: EchelonCoords,
}

/// Echelon whose combination tags are basis positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct EchelonCoords {
    rows: Vec<(u32, u32)>,
    occupied: u32,
}

impl EchelonCoords {
    fn reduce(&self, v: u32) -> (u32, u32) {
        let mut x = v;
        let mut combo = 0u32;
        loop {
            let hit = x & self.occupied;
            if hit == 0 {
                return (x, combo);
            }
            let lead = 31 - hit.leading_zeros();
            let (row, c) = self.rows[lead as usize];
            x ^= row;
            combo ^= c;
        }
    }
}

impl Gf2Basis {
    /// Builds a basis from independent vectors; `None` if they are dependent.
    pub fn new(vectors: Vec<Gf2Point>) -> Option<Self> {
        let mut ech = EchelonCoords {
            rows: vec![(0, 0); 32],
            occupied: 0,
        };
        for (i, v) in vectors.iter().enumerate() {
            let (r, combo) = ech.reduce(v.0);
            if r == 0 {
                return None;
            }
            let lead = 31 - r.leading_zeros();
            ech.rows[lead as usize] = (r, combo ^ (1 << i));
            ech.occupied |= 1 << lead;
        }
        Some(Gf2Basis {
            vectors,
            echelon: ech,
        })
    }

    /// Greedy basis: scans `points` in order and keeps each vector that is
    /// independent of those already kept.
    pub fn greedy(points: &[Gf2Point]) -> Self {
        let mut kept = Vec::new();
        let mut ech = Echelon::new();
        for &p in points {
            if ech.insert(p) {
                kept.push(p);
            }
        }
        Gf2Basis::new(kept).expect("greedy selection is independent")
    }

    pub fn vectors(&self) -> &[Gf2Point] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Coordinates of `v` with respect to this basis, if `v` lies in its span.
    pub fn coordinates(&self, v: Gf2Point) -> Option<Gf2Point> {
        let (r, combo) = self.echelon.reduce(v.0);
        (r == 0).then_some(Gf2Point(combo))
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: Gf2Point) -> Gf2Point {
        let mut out = Gf2Point::ZERO;
        let mut c = coords.0;
        while c != 0 {
            let i = c.trailing_zeros() as usize;
            out ^= self.vectors[i];
            c &= c - 1;
        }
        out
    }
}

/// Dimension of the span of `points`.
pub fn rank_of(points: &[Gf2Point]) -> usize {
    let mut ech = Echelon::new();
    for &p in points {
        ech.insert(p);
    }
    ech.rank()
}

/// Whether `v` is a GF(2) combination of `generators`.
pub fn in_span(v: Gf2Point, generators: &[Gf2Point]) -> bool {
    let mut ech = Echelon::new();
    for &g in generators {
        ech.insert(g);
    }
    ech.contains(v)
}

/// All `2^r - 1` nonzero vectors of `F_2^r`, ascending.
pub fn pg_points(r: usize) -> Vec<Gf2Point> {
    assert!(r < MAX_AMBIENT_RANK, "ambient rank {r} too large");
    (1..1u32 << r).map(Gf2Point).collect()
}

/// A linear surjection `F_2^r -> F_2^(r - rank(X))` whose kernel is `span(X)`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source_rank: usize,
    target_rank: usize,
    echelon: Echelon,
    // surviving (non-pivot) source coordinates, ascending
    kept: Vec<u32>,
}

impl QuotientMap {
    pub fn source_rank(&self) -> usize {
        self.source_rank
    }

    pub fn target_rank(&self) -> usize {
        self.target_rank
    }

    /// Image of `v`. Reduction modulo a fixed echelon basis is linear, and
    /// the residual vanishes on every pivot coordinate, so dropping those
    /// coordinates gives a surjection with kernel exactly `span(X)`.
    pub fn apply(&self, v: Gf2Point) -> Gf2Point {
        let (r, _) = self.echelon.reduce(v);
        let mut out = 0u32;
        for (j, &bit) in self.kept.iter().enumerate() {
            out |= (r.0 >> bit & 1) << j;
        }
        Gf2Point(out)
    }
}

/// Quotient of `F_2^r` by the span of `x`.
pub fn quotient_map(x: &[Gf2Point], r: usize) -> QuotientMap {
    let mut echelon = Echelon::new();
    for &p in x {
        echelon.insert(p);
    }
    let pivots = echelon.pivots();
    let kept: Vec<u32> = (0..r as u32).filter(|b| pivots >> b & 1 == 0).collect();
    QuotientMap {
        source_rank: r,
        target_rank: kept.len(),
        echelon,
        kept,
    }
}
