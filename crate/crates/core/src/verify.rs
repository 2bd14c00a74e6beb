//! Exhaustive enumeration of simple binary matroids up to isomorphism and a
//! registry of checks, one per structural result, run over the enumeration.
//!
//! Ranks up to 4 come from the orbit table on subsets of PG(3,2) and are
//! complete. Rank 5 is grown one point at a time up to a size cap and is
//! always reported as partial.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructs::{
    self, affine, coning_sequence, cone, cone_unlabeled, gpc_across_pg, is_projective_target, line_saturate,
    spike, target_from_bits, Color, TargetFlag, TargetString,
};
use crate::elements::ElementSet;
use crate::error::{domain, Error, Result};
use crate::format::MatroidDocument;
use crate::gf2::{pg_points, rank_of, Gf2Basis, Gf2Point};
use crate::isomorph::{canonical_form, table_representatives, CanonicalForm, FormCache};
use crate::matroid::BinaryMatroid;
use crate::minors::{
    exim_member, has_induced_minor, induced_minor_forms, intervals_of_rank, is_regular, is_series_parallel,
    shape_tags, PatternSet, ShapeTag,
};

/// Highest rank the enumeration supports.
pub const MAX_RANK: usize = 5;
/// Largest ground set for rank-5 enumeration.
pub const RANK5_MAX_ELEMENTS: usize = 16;
/// Default size cap for rank-5 enumeration.
pub const RANK5_DEFAULT_ELEMENTS: usize = 12;
/// Largest ground set accepted by [`enumerate_by_size`].
pub const BY_SIZE_MAX_ELEMENTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Filter {
    #[serde(rename = "connected")]
    Connected,
    #[serde(rename = "3-connected")]
    ThreeConnected,
    #[serde(rename = "triangle-free")]
    TriangleFree,
    /// Only matroids whose rank equals the scope's `max_rank`.
    #[serde(rename = "top-rank")]
    TopRank,
}

impl Filter {
    pub const ALL: [Filter; 4] = [Filter::Connected, Filter::ThreeConnected, Filter::TriangleFree, Filter::TopRank];

    pub fn as_str(self) -> &'static str {
        match self {
            Filter::Connected => "connected",
            Filter::ThreeConnected => "3-connected",
            Filter::TriangleFree => "triangle-free",
            Filter::TopRank => "top-rank",
        }
    }

    fn keeps(self, m: &BinaryMatroid, max_rank: usize) -> bool {
        match self {
            Filter::Connected => m.is_connected(),
            Filter::ThreeConnected => m.connectivity().three_connected,
            Filter::TriangleFree => m.is_triangle_free(),
            Filter::TopRank => m.rank() == max_rank,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Filter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Filter::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Domain(format!("unknown filter {s:?}")))
    }
}

/// Which matroids an enumeration covers: rank at most `max_rank`, at most
/// `max_elements` elements, and every filter satisfied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationScope {
    pub max_rank: usize,
    pub max_elements: usize,
    #[serde(default)]
    pub filters: Vec<Filter>,
}

impl EnumerationScope {
    /// All classes of rank at most `max_rank`; rank 5 is capped at
    /// [`RANK5_DEFAULT_ELEMENTS`].
    pub fn new(max_rank: usize) -> Self {
        let max_elements = if max_rank >= MAX_RANK {
            RANK5_DEFAULT_ELEMENTS
        } else {
            (1usize << max_rank) - 1
        };
        EnumerationScope {
            max_rank,
            max_elements,
            filters: Vec::new(),
        }
    }

    pub fn with_max_elements(mut self, n: usize) -> Self {
        self.max_elements = n;
        self
    }

    pub fn with_filters(mut self, filters: &[Filter]) -> Self {
        self.filters = filters.to_vec();
        self.filters.sort_unstable();
        self.filters.dedup();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_rank > MAX_RANK {
            return domain(format!("enumeration supports rank at most {MAX_RANK}, got {}", self.max_rank));
        }
        if self.max_rank == MAX_RANK && self.max_elements > RANK5_MAX_ELEMENTS {
            return domain(format!(
                "rank-5 enumeration supports at most {RANK5_MAX_ELEMENTS} elements, got {}",
                self.max_elements
            ));
        }
        Ok(())
    }

    /// Whether some class of rank at most `max_rank` is left out by the size cap.
    pub fn is_partial(&self) -> bool {
        self.max_elements < (1usize << self.max_rank) - 1
    }

    fn admits(&self, m: &BinaryMatroid) -> bool {
        m.rank() <= self.max_rank
            && m.len() <= self.max_elements
            && self.filters.iter().all(|f| f.keeps(m, self.max_rank))
    }
}

fn mask_matroid(mask: u16) -> BinaryMatroid {
    let pts = (0..15).filter(|i| mask >> i & 1 == 1).map(|i| Gf2Point(i + 1)).collect();
    BinaryMatroid::new(4, pts).expect("distinct points").reembed()
}

/// One-point extensions of every class, grown size by size up to
/// `max_elements`, deduplicated by canonical form. A class of rank `r` is
/// kept spanning `F_2^r`; a child adds either a point of that space or the
/// next unit vector, which covers every extension up to isomorphism.
fn grow(max_rank: usize, max_elements: usize) -> Vec<BinaryMatroid> {
    let mut level = vec![BinaryMatroid::empty(0)];
    let mut all = level.clone();
    for _ in 0..max_elements {
        let children: Vec<(CanonicalForm, BinaryMatroid)> = level
            .par_iter()
            .flat_map_iter(|m| {
                let r = m.ambient_rank();
                let mut out = Vec::new();
                for v in 1u32..1 << r {
                    if !m.contains_point(Gf2Point(v)) {
                        let mut pts = m.points().to_vec();
                        pts.push(Gf2Point(v));
                        out.push(BinaryMatroid::new(r, pts).expect("new point"));
                    }
                }
                if r < max_rank {
                    let mut pts = m.points().to_vec();
                    pts.push(Gf2Point::unit(r));
                    out.push(BinaryMatroid::new(r + 1, pts).expect("new point"));
                }
                out.into_iter().map(|c| (canonical_form(&c), c))
            })
            .collect();
        let mut seen = HashSet::new();
        level = children
            .into_iter()
            .filter_map(|(f, c)| seen.insert(f).then_some(c))
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

/// One representative per isomorphism class in scope, ordered by rank, size
/// and canonical form.
pub fn enumerate_matroids(scope: &EnumerationScope) -> Result<Vec<BinaryMatroid>> {
    scope.validate()?;
    let mut out: Vec<BinaryMatroid> = table_representatives()
        .into_iter()
        .filter(|m| (m.count_ones() as usize) <= scope.max_elements)
        .map(mask_matroid)
        .collect();
    if scope.max_rank >= MAX_RANK {
        out.extend(grow(MAX_RANK, scope.max_elements).into_iter().filter(|m| m.rank() == MAX_RANK));
    }
    Ok(sorted_classes(out.into_par_iter().filter(|m| scope.admits(m)).collect()))
}

/// One representative per class of every rank with at most `max_elements`
/// elements.
pub fn enumerate_by_size(max_elements: usize) -> Result<Vec<BinaryMatroid>> {
    if max_elements > BY_SIZE_MAX_ELEMENTS {
        return domain(format!(
            "enumeration by size supports at most {BY_SIZE_MAX_ELEMENTS} elements, got {max_elements}"
        ));
    }
    Ok(sorted_classes(grow(max_elements, max_elements)))
}

fn sorted_classes(ms: Vec<BinaryMatroid>) -> Vec<BinaryMatroid> {
    let mut keyed: Vec<(usize, usize, CanonicalForm, BinaryMatroid)> = ms
        .into_par_iter()
        .map(|m| (m.rank(), m.len(), canonical_form(&m), m))
        .collect();
    keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    keyed.into_iter().map(|k| k.3).collect()
}

// ---------------------------------------------------------------------------
// Reports.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// The scope as written into a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopeRecord {
    pub max_rank: usize,
    pub max_elements: usize,
    pub filters: Vec<Filter>,
    /// True when the size cap leaves classes of rank at most `max_rank` out.
    pub partial: bool,
}

impl From<&EnumerationScope> for ScopeRecord {
    fn from(s: &EnumerationScope) -> Self {
        ScopeRecord {
            max_rank: s.max_rank,
            max_elements: s.max_elements,
            filters: s.filters.clone(),
            partial: s.is_partial(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub matroid: MatroidDocument,
    pub witness: Value,
}

impl Violation {
    pub fn new(m: &BinaryMatroid, witness: Value) -> Self {
        Violation {
            matroid: MatroidDocument::from(m),
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub scope: ScopeRecord,
    pub population: usize,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u64,
    pub verdict: Verdict,
    /// What the population counts and any scope the check sets itself.
    #[serde(default)]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn write_report(report: &VerificationReport, path: &Path) -> Result<()> {
    fs::write(path, report.to_json() + "\n").map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_report(path: &Path) -> Result<VerificationReport> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))
}

// ---------------------------------------------------------------------------
// Registry.

pub struct CheckInfo {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub statement: &'static str,
}

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo { id: "T-1.1", aliases: &[], statement: "EXIM(C4,K4) = closure of projective geometries under GPC across projective geometries" },
    CheckInfo { id: "T-1.2", aliases: &[], statement: "connected EXIM(K4\\e,K4) = projective geometries, affine geometries of rank >= 3, circuits" },
    CheckInfo { id: "T-1.3", aliases: &[], statement: "connected EXIM(K4\\e,F7) = F7*, M(Cn), M(Kn) with n >= 3" },
    CheckInfo { id: "T-1.4", aliases: &[], statement: "connected EXIM(C4,K4\\e) = projective geometries, PG minus a point, M(Kn)" },
    CheckInfo { id: "T-1.7", aliases: &[], statement: "3-connected M, e with no M(K4) induced minor in M or M\\e: e is in a triangle with every other element" },
    CheckInfo { id: "T-2.1", aliases: &[], statement: "chordal iff no M(C4) induced minor" },
    CheckInfo { id: "T-2.2", aliases: &[], statement: "EXIM(C4,F7) = chordal regular matroids" },
    CheckInfo { id: "T-2.3", aliases: &[], statement: "connected EXIM(K4,F7) = connected matroids with no M(K4) minor" },
    CheckInfo { id: "T-2.4", aliases: &[], statement: "connected, not 3-connected, |E| >= 5: circuit with M(C4), or M(K4\\e) induced minor" },
    CheckInfo { id: "T-2.9", aliases: &[], statement: "EXIM(C4,K4\\e) members are disconnected or round" },
    CheckInfo { id: "T-2.11", aliases: &[], statement: "3-connected, |E| >= 4: connected hyperplane containing f and avoiding g" },
    CheckInfo { id: "T-3.x", aliases: &["T-3.1", "T-3.2", "T-1.5"], statement: "coning hyperplane laws; conings of induced-minor-closed classes stay closed" },
    CheckInfo { id: "T-3.5", aliases: &[], statement: "tipless conings give affine geometries" },
    CheckInfo { id: "T-3.6", aliases: &[], statement: "projective targets = coning-sequence matroids" },
    CheckInfo { id: "T-3.8", aliases: &["T-3.7"], statement: "exactly one projective target on n elements" },
    CheckInfo { id: "T-4.2", aliases: &[], statement: "coning point plus an M(K4) flat spans PG(3,2) minus two points" },
    CheckInfo { id: "T-4.3", aliases: &[], statement: "line saturation preserves EXIM(K4)" },
    CheckInfo { id: "T-4.6", aliases: &[], statement: "EXIM(K4) closed under GPC, tipped coning, tipless coning of triangle-free members" },
    CheckInfo { id: "T-4.8", aliases: &[], statement: "3-connected EXIM(K4) members have no triad" },
    CheckInfo { id: "T-4.9", aliases: &[], statement: "vertical 3-separation with a shared element: both filled-in sides are induced minors" },
    CheckInfo { id: "T-4.10", aliases: &["T-4.11", "T-4.10/4.11"], statement: "M/e with a basis of 2-circuit elements and another element: spike with tip and cotip, and M(K4), induced" },
    CheckInfo { id: "T-round", aliases: &["T-roundness-equivalence"], statement: "roundness by definition = every cocircuit spanning" },
];

/// The registered id for `id` or one of its aliases.
pub fn resolve_id(id: &str) -> Option<&'static str> {
    CHECKS
        .iter()
        .find(|c| c.id == id || c.aliases.contains(&id))
        .map(|c| c.id)
}

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.id).collect()
}

struct Outcome {
    population: usize,
    violations: Vec<Violation>,
    notes: Vec<String>,
}

impl Outcome {
    fn new(population: usize, violations: Vec<Violation>) -> Self {
        Outcome {
            population,
            violations,
            notes: Vec::new(),
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

/// A scope with its population, computed on first use and shared by every
/// check run through it.
pub struct Verifier {
    scope: EnumerationScope,
    population: OnceLock<Vec<BinaryMatroid>>,
    cache: FormCache,
}

impl Verifier {
    pub fn new(scope: EnumerationScope) -> Result<Self> {
        scope.validate()?;
        Ok(Verifier {
            scope,
            population: OnceLock::new(),
            cache: FormCache::new(),
        })
    }

    /// A verifier over a population enumerated earlier for the same scope.
    pub fn with_population(scope: EnumerationScope, population: Vec<BinaryMatroid>) -> Result<Self> {
        let v = Self::new(scope)?;
        let _ = v.population.set(population);
        Ok(v)
    }

    pub fn scope(&self) -> &EnumerationScope {
        &self.scope
    }

    pub fn population(&self) -> &[BinaryMatroid] {
        self.population
            .get_or_init(|| enumerate_matroids(&self.scope).expect("validated scope"))
    }

    pub fn verify(&self, id: &str) -> Result<VerificationReport> {
        let Some(id) = resolve_id(id) else {
            return domain(format!("unknown theorem id {id:?}"));
        };
        let start = Instant::now();
        let outcome = match id {
            "T-1.1" => self.t1_1(),
            "T-1.2" => self.t1_2(),
            "T-1.3" => self.t1_3(),
            "T-1.4" => self.t1_4(),
            "T-1.7" => self.t1_7(),
            "T-2.1" => self.t2_1(),
            "T-2.2" => self.t2_2(),
            "T-2.3" => self.t2_3(),
            "T-2.4" => self.t2_4(),
            "T-2.9" => self.t2_9(),
            "T-2.11" => self.t2_11(),
            "T-3.x" => self.t3_x()?,
            "T-3.5" => self.t3_5(),
            "T-3.6" => self.t3_6(),
            "T-3.8" => self.t3_8(),
            "T-4.2" => self.t4_2(),
            "T-4.3" => self.t4_3(),
            "T-4.6" => self.t4_6(),
            "T-4.8" => self.t4_8(),
            "T-4.9" => self.t4_9(),
            "T-4.10" => self.t4_10(),
            "T-round" => self.t_round(),
            _ => unreachable!("registry and dispatch agree"),
        };
        let mut violations = outcome.violations;
        violations.sort_by_cached_key(|v| (serde_json::to_string(&v.matroid).unwrap(), v.witness.to_string()));
        Ok(VerificationReport {
            theorem_id: id.to_string(),
            scope: ScopeRecord::from(&self.scope),
            population: outcome.population,
            verdict: if violations.is_empty() { Verdict::Pass } else { Verdict::Fail },
            violations,
            elapsed_ms: start.elapsed().as_millis() as u64,
            notes: outcome.notes,
        })
    }

    pub fn verify_all(&self) -> Vec<VerificationReport> {
        CHECKS.iter().map(|c| self.verify(c.id).expect("registered")).collect()
    }

    fn form(&self, m: &BinaryMatroid) -> CanonicalForm {
        self.cache.form(m)
    }

    /// Runs `f` over the members that pass `keep`; returns the count examined
    /// and one violation per failing member.
    fn scan<K, F>(&self, keep: K, f: F) -> Outcome
    where
        K: Fn(&BinaryMatroid) -> bool + Sync,
        F: Fn(&BinaryMatroid) -> Option<Value> + Sync,
    {
        let (count, violations) = self
            .population()
            .par_iter()
            .filter(|m| keep(m))
            .map(|m| (1usize, f(m).map(|w| Violation::new(m, w))))
            .fold(
                || (0usize, Vec::new()),
                |(n, mut v), (one, viol)| {
                    v.extend(viol);
                    (n + one, v)
                },
            )
            .reduce(
                || (0, Vec::new()),
                |(a, mut va), (b, vb)| {
                    va.extend(vb);
                    (a + b, va)
                },
            );
        Outcome::new(count, violations)
    }
}

pub fn verify_theorem(id: &str, scope: &EnumerationScope) -> Result<VerificationReport> {
    Verifier::new(scope.clone())?.verify(id)
}

// ---------------------------------------------------------------------------
// Shared predicates.

struct Patterns {
    c4: CanonicalForm,
    k4e: CanonicalForm,
    k4: CanonicalForm,
    f7: CanonicalForm,
    f7_dual: CanonicalForm,
    pg4_minus_two: CanonicalForm,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| {
        let pg4 = BinaryMatroid::projective(4);
        Patterns {
            c4: canonical_form(&constructs::named("MC4").unwrap()),
            k4e: canonical_form(&constructs::named("MK4e").unwrap()),
            k4: canonical_form(&constructs::named("MK4").unwrap()),
            f7: canonical_form(&constructs::named("F7").unwrap()),
            f7_dual: canonical_form(&constructs::named("F7*").unwrap()),
            pg4_minus_two: canonical_form(&pg4.delete(ElementSet::from_indices([0, 1])).unwrap()),
        }
    })
}

/// Which of the four connected rank-3 matroids occur as induced minors.
#[derive(Clone, Copy, Debug, Default, Serialize)]
struct Rank3Hits {
    c4: bool,
    k4e: bool,
    k4: bool,
    f7: bool,
}

fn rank3_hits(m: &BinaryMatroid) -> Rank3Hits {
    let p = patterns();
    let mut h = Rank3Hits::default();
    for (_, _, c) in intervals_of_rank(m, 3) {
        let slot = match c.len() {
            4 => (&mut h.c4, &p.c4),
            5 => (&mut h.k4e, &p.k4e),
            6 => (&mut h.k4, &p.k4),
            7 => (&mut h.f7, &p.f7),
            _ => continue,
        };
        if !*slot.0 && canonical_form(&c) == *slot.1 {
            *slot.0 = true;
        }
    }
    h
}

fn has_k4_induced(m: &BinaryMatroid) -> bool {
    rank3_hits(m).k4
}

fn tag_names(tags: &[ShapeTag]) -> Vec<&'static str> {
    tags.iter().map(|t| t.as_str()).collect()
}

fn is_circuit(m: &BinaryMatroid) -> bool {
    m.len() >= 3 && m.len() == m.rank() + 1 && m.circuits(None).len() == 1
}

// ---------------------------------------------------------------------------
// Checks.

impl Verifier {
    fn t1_1(&self) -> Outcome {
        let cap = self.scope.max_elements.max(15);
        let generated = gpc_closure(self.scope.max_rank, cap);
        let forms: HashSet<CanonicalForm> = generated.par_iter().map(|m| self.form(m)).collect();
        let mut violations: Vec<Violation> = generated
            .par_iter()
            .filter_map(|m| {
                let h = rank3_hits(m);
                (h.c4 || h.k4).then(|| {
                    Violation::new(m, json!({"direction": "generated member has an excluded induced minor", "hits": h}))
                })
            })
            .collect();
        let mut out = self.scan(
            |_| true,
            |m| {
                let h = rank3_hits(m);
                (!h.c4 && !h.k4 && !forms.contains(&self.form(m)))
                    .then(|| json!({"direction": "EXIM(C4,K4) member not generated"}))
            },
        );
        violations.append(&mut out.violations);
        out.violations = violations;
        out.note(format!(
            "{} classes generated from projective geometries by GPC across projective geometries (rank <= {}, <= {} elements)",
            generated.len(),
            self.scope.max_rank,
            cap
        ))
    }

    fn t1_2(&self) -> Outcome {
        self.scan(
            |m| !m.is_empty() && m.is_connected(),
            |m| {
                let h = rank3_hits(m);
                let member = !h.k4e && !h.k4;
                let tags = shape_tags(m);
                let family = tags.iter().any(|t| match t {
                    ShapeTag::ProjectiveGeometry => true,
                    ShapeTag::AffineGeometry => m.rank() >= 3,
                    ShapeTag::Circuit => m.len() >= 3,
                    _ => false,
                });
                (member != family).then(|| json!({"exim": member, "family": family, "tags": tag_names(&tags)}))
            },
        )
        .note("connected nonempty members")
    }

    fn t1_3(&self) -> Outcome {
        let f7_dual = &patterns().f7_dual;
        self.scan(
            |m| m.len() >= 2 && m.is_connected(),
            |m| {
                let h = rank3_hits(m);
                let member = !h.k4e && !h.f7;
                let tags = shape_tags(m);
                let family = self.form(m) == *f7_dual
                    || tags.contains(&ShapeTag::Circuit)
                    || tags.contains(&ShapeTag::CompleteGraphCycle);
                (member != family).then(|| json!({"exim": member, "family": family, "tags": tag_names(&tags)}))
            },
        )
        .note("connected members with at least two elements; one point is M(K2), outside n >= 3")
    }

    fn t1_4(&self) -> Outcome {
        self.scan(
            |m| !m.is_empty() && m.is_connected(),
            |m| {
                let h = rank3_hits(m);
                let member = !h.c4 && !h.k4e;
                let tags = shape_tags(m);
                let family = tags.iter().any(|t| {
                    matches!(
                        t,
                        ShapeTag::ProjectiveGeometry | ShapeTag::PgMinusPoint | ShapeTag::CompleteGraphCycle
                    )
                });
                (member != family).then(|| json!({"exim": member, "family": family, "tags": tag_names(&tags)}))
            },
        )
        .note("connected nonempty members")
    }

    fn t1_7(&self) -> Outcome {
        let mut hypotheses = std::sync::atomic::AtomicUsize::new(0);
        let out = self.scan(
            |m| m.connectivity().three_connected,
            |m| {
                if has_k4_induced(m) {
                    return None;
                }
                for e in 0..m.len() {
                    let del = m.delete(ElementSet::singleton(e)).unwrap();
                    if has_k4_induced(&del) {
                        continue;
                    }
                    hypotheses.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let mut covered = ElementSet::singleton(e);
                    for t in m.triangles(Some(e)).unwrap() {
                        covered = covered.union(ElementSet::from_indices(t));
                    }
                    if covered != m.ground_set() {
                        let missing = m.ground_set().difference(covered).to_vec();
                        return Some(json!({"e": e, "not_in_triangle_with_e": missing}));
                    }
                }
                None
            },
        );
        let n = *hypotheses.get_mut();
        out.note(format!("3-connected members; {n} pairs (M, e) met the hypothesis"))
    }

    fn t2_1(&self) -> Outcome {
        let c4 = PatternSet::named(&["MC4"]).expect("catalog");
        self.scan(
            |_| true,
            |m| {
                let chordal = m.is_chordal();
                let free = exim_member(m, &c4);
                (chordal != free).then(|| json!({"chordal": chordal, "c4_free": free}))
            },
        )
    }

    fn t2_2(&self) -> Outcome {
        self.scan(
            |_| true,
            |m| {
                let h = rank3_hits(m);
                let member = !h.c4 && !h.f7;
                let chordal = m.is_chordal();
                let regular = is_regular(m);
                (member != (chordal && regular))
                    .then(|| json!({"exim": member, "chordal": chordal, "regular": regular}))
            },
        )
    }

    fn t2_3(&self) -> Outcome {
        self.scan(
            |m| m.is_connected(),
            |m| {
                let h = rank3_hits(m);
                let member = !h.k4 && !h.f7;
                let sp = is_series_parallel(m);
                (member != sp).then(|| json!({"exim": member, "series_parallel": sp}))
            },
        )
        .note("connected members")
    }

    fn t2_4(&self) -> Outcome {
        self.scan(
            |m| m.len() >= 5 && m.is_connected() && !m.connectivity().three_connected,
            |m| {
                let h = rank3_hits(m);
                let circuit = is_circuit(m);
                let ok = if circuit { h.c4 } else { h.k4e };
                (!ok).then(|| json!({"circuit": circuit, "hits": h}))
            },
        )
        .note("connected, not 3-connected, at least 5 elements")
    }

    fn t2_9(&self) -> Outcome {
        self.scan(
            |m| {
                let h = rank3_hits(m);
                !h.c4 && !h.k4e
            },
            |m| (m.is_connected() && !m.is_round()).then(|| json!({"connected": true, "round": false})),
        )
        .note("members of EXIM(C4,K4\\e)")
    }

    fn t2_11(&self) -> Outcome {
        self.scan(
            |m| m.len() >= 4 && m.connectivity().three_connected,
            |m| {
                let connected: Vec<ElementSet> = m
                    .hyperplanes()
                    .into_iter()
                    .filter(|&h| m.restrict_to(h).unwrap().is_connected())
                    .collect();
                for f in 0..m.len() {
                    for g in 0..m.len() {
                        if f != g && !connected.iter().any(|h| h.contains(f) && !h.contains(g)) {
                            return Some(json!({"f": f, "g": g}));
                        }
                    }
                }
                None
            },
        )
        .note("3-connected members with at least 4 elements")
    }

    fn t3_x(&self) -> Result<Outcome> {
        let small = enumerate_by_size(8)?;
        let mut violations: Vec<Violation> = small.par_iter().flat_map_iter(coning_laws).collect();
        let low = enumerate_matroids(&EnumerationScope::new(3))?;
        violations.par_extend(low.par_iter().flat_map_iter(coning_closure));
        Ok(Outcome::new(small.len() + low.len(), violations)
            .note(format!("coning laws (a)-(d) over all {} classes with at most 8 elements", small.len()))
            .note(format!(
                "induced minors of tipped and tipless conings over all {} classes of rank at most 3",
                low.len()
            )))
    }

    fn t3_5(&self) -> Outcome {
        let r = self.scope.max_rank;
        let mut violations = Vec::new();
        let mut count = 0;
        for k in 0..=r {
            count += 1;
            let literal = coning_sequence(&vec![false; k]);
            if !literal.is_empty() {
                violations.push(Violation::new(&literal, json!({"sequence": "0".repeat(k), "expected": "empty"})));
            }
        }
        for k in 0..r {
            count += 1;
            let mut bits = vec![false; k + 1];
            bits[0] = true;
            let m = coning_sequence(&bits);
            if self.form(&m) != self.form(&affine(k + 1)) {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                violations.push(Violation::new(&m, json!({"sequence": s, "expected": format!("AG({k},2)")})));
            }
        }
        for k in 1..r {
            count += 1;
            let m = cone_unlabeled(&affine(k), false);
            if self.form(&m) != self.form(&affine(k + 1)) {
                violations.push(Violation::new(&m, json!({"tipless_cone_of": format!("AG({},2)", k - 1)})));
            }
        }
        Outcome::new(count, violations)
            .note("tipless conings of the empty matroid stay empty; after one tipped coning they give AG(k,2)")
    }

    fn t3_6(&self) -> Outcome {
        let scope = &self.scope;
        let mut coned: BTreeMap<CanonicalForm, BinaryMatroid> = BTreeMap::new();
        for len in 0..=scope.max_rank {
            for v in 0u32..1 << len {
                let bits: Vec<bool> = (0..len).rev().map(|i| v >> i & 1 == 1).collect();
                let m = coning_sequence(&bits).reembed();
                if scope.admits(&m) {
                    coned.entry(self.form(&m)).or_insert(m);
                }
            }
        }
        let targets: Vec<(CanonicalForm, Option<TargetFlag>, &BinaryMatroid)> = self
            .population()
            .par_iter()
            .map(|m| (self.form(m), is_projective_target(m), m))
            .collect();
        let mut violations = Vec::new();
        let mut target_forms = HashSet::new();
        for (form, flag, m) in &targets {
            let Some(flag) = flag else { continue };
            target_forms.insert(form.clone());
            if let Err(why) = check_flag(m, flag) {
                violations.push(Violation::new(m, json!({"invalid_flag": why})));
            }
            if !coned.contains_key(form) {
                violations.push(Violation::new(m, json!({"side": "target without a coning sequence"})));
            }
        }
        for (form, m) in &coned {
            if !target_forms.contains(form) {
                violations.push(Violation::new(m, json!({"side": "coning sequence that is not a target"})));
            }
        }
        Outcome::new(self.population().len(), violations).note(format!(
            "{} target classes; {} coning-sequence classes in scope",
            target_forms.len(),
            coned.len()
        ))
    }

    fn t3_8(&self) -> Outcome {
        let r = self.scope.max_rank;
        let expected: Vec<CanonicalForm> = (0u32..1 << r)
            .map(|n| self.form(&target_from_bits(&TargetString::from_size(n).expect("at most 31"))))
            .collect();
        let mut violations = Vec::new();
        // every 0-1 string of length at most r, leading zeros included
        for len in 0..=r {
            for v in 0u32..1 << len {
                let bits: Vec<bool> = (0..len).rev().map(|i| v >> i & 1 == 1).collect();
                let m = coning_sequence(&bits);
                if m.len() != v as usize || self.form(&m) != expected[v as usize] {
                    violations.push(Violation::new(&m, json!({"string": bits_string(&bits), "value": v})));
                }
            }
        }
        // every coloring of every complete flag of PG(r-1,2)
        let flags = complete_flags(r);
        let mut sets: BTreeSet<Vec<u32>> = BTreeSet::new();
        for layers in &flags {
            for c in 0u32..1 << r {
                let mut g: Vec<u32> = (0..r)
                    .filter(|i| c >> i & 1 == 1)
                    .flat_map(|i| layers[i].iter().copied())
                    .collect();
                g.sort_unstable();
                sets.insert(g);
            }
        }
        let sets: Vec<Vec<u32>> = sets.into_iter().collect();
        let census: Vec<(usize, CanonicalForm, BinaryMatroid)> = sets
            .par_iter()
            .map(|g| {
                let m = BinaryMatroid::new(r, g.iter().map(|&v| Gf2Point(v)).collect()).unwrap();
                (g.len(), canonical_form(&m), m)
            })
            .collect();
        let mut classes: BTreeMap<usize, BTreeSet<CanonicalForm>> = BTreeMap::new();
        for (n, form, m) in &census {
            if classes.entry(*n).or_default().insert(form.clone()) && *form != expected[*n] {
                violations.push(Violation::new(m, json!({"flag_target_size": n, "differs_from": format!("{n:b}")})));
            }
        }
        for n in 0..1usize << r {
            if !classes.contains_key(&n) {
                violations.push(Violation::new(
                    &BinaryMatroid::empty(0),
                    json!({"missing_target_size": n}),
                ));
            }
        }
        // targets recognized in the population match the string of their size
        for m in self.population() {
            if m.len() < expected.len() && is_projective_target(m).is_some() && self.form(m) != expected[m.len()] {
                violations.push(Violation::new(m, json!({"recognized_target_size": m.len()})));
            }
        }
        let nonempty = classes.keys().filter(|&&n| n > 0).count();
        Outcome::new(nonempty, violations)
            .note(format!("{nonempty} nonempty target classes, sizes 1..{}", (1usize << r) - 1))
            .note(format!(
                "{} complete flags of PG({},2) x {} colorings, {} distinct green sets",
                flags.len(),
                r as isize - 1,
                1 << r,
                sets.len()
            ))
    }

    fn t4_2(&self) -> Outcome {
        let p = patterns();
        self.scan(
            |_| true,
            |m| {
                let n = m.len();
                let flats = m.flats();
                let k4_flats: Vec<ElementSet> = flats
                    .get(3)
                    .map(|fs| {
                        fs.iter()
                            .filter(|f| f.elements.len() == 6)
                            .filter(|f| canonical_form(&m.restrict_to(f.elements).unwrap()) == p.k4)
                            .map(|f| f.elements)
                            .collect()
                    })
                    .unwrap_or_default();
                if k4_flats.is_empty() {
                    return None;
                }
                for x in 0..n {
                    if 2 * m.triangles(Some(x)).unwrap().len() != n - 1 {
                        continue;
                    }
                    for &f in &k4_flats {
                        let cl = m.closure(f.with(x)).unwrap();
                        if canonical_form(&m.restrict_to(cl.elements).unwrap()) != p.pg4_minus_two {
                            return Some(json!({"x": x, "flat": f.to_vec()}));
                        }
                    }
                }
                None
            },
        )
    }

    fn t4_3(&self) -> Outcome {
        self.scan(
            |m| !has_k4_induced(m),
            |m| {
                (0..m.len()).find_map(|x| {
                    let n = line_saturate(m, x).unwrap();
                    has_k4_induced(&n).then(|| json!({"x": x, "saturated": MatroidDocument::from(&n)}))
                })
            },
        )
        .note("members of EXIM(K4)")
    }

    fn t4_6(&self) -> Outcome {
        let base: Vec<BinaryMatroid> = enumerate_matroids(&EnumerationScope::new(3))
            .expect("rank 3")
            .into_iter()
            .filter(|m| !has_k4_induced(m))
            .collect();
        let mut violations = Vec::new();
        let mut results: HashMap<CanonicalForm, (BinaryMatroid, Value)> = HashMap::new();
        for (i, a) in base.iter().enumerate() {
            for b in &base[i..] {
                for (m, glue) in all_gpcs(a, b, usize::MAX, usize::MAX) {
                    let w = json!({"operation": "gpc", "left": MatroidDocument::from(a), "right": MatroidDocument::from(b), "glue": glue});
                    results.entry(self.form(&m)).or_insert((m, w));
                }
            }
            results
                .entry(self.form(&cone_unlabeled(a, true)))
                .or_insert_with(|| (cone_unlabeled(a, true), json!({"operation": "tipped cone", "of": MatroidDocument::from(a)})));
            if a.is_triangle_free() {
                let t = cone_unlabeled(a, false);
                results
                    .entry(self.form(&t))
                    .or_insert_with(|| (t, json!({"operation": "tipless cone", "of": MatroidDocument::from(a)})));
            }
        }
        let mut results: Vec<(BinaryMatroid, Value)> = results.into_values().collect();
        results.sort_by_cached_key(|(m, _)| (m.rank(), m.len(), canonical_form(m)));
        violations.extend(
            results
                .par_iter()
                .filter(|(m, _)| has_k4_induced(m))
                .map(|(m, w)| Violation::new(m, w.clone()))
                .collect::<Vec<_>>(),
        );
        Outcome::new(results.len(), violations).note(format!(
            "all {} EXIM(K4) classes of rank at most 3 as inputs; population counts distinct results",
            base.len()
        ))
    }

    fn t4_8(&self) -> Outcome {
        self.scan(
            |m| m.connectivity().three_connected && !has_k4_induced(m),
            |m| {
                m.cocircuits()
                    .into_iter()
                    .find(|c| c.len() == 3)
                    .map(|c| json!({"triad": c.to_vec()}))
            },
        )
        .note("3-connected members of EXIM(K4)")
    }

    fn t4_9(&self) -> Outcome {
        self.scan(
            |m| m.connectivity().three_connected,
            |m| {
                let r = m.ambient_rank();
                for (x, y) in m.vertical_separations(3) {
                    let (cx, cy) = (m.closure(x).unwrap(), m.closure(y).unwrap());
                    if cx.elements.intersection(cy.elements).is_empty() {
                        continue;
                    }
                    let (px, py) = (m.points_of(x), m.points_of(y));
                    let gp: Vec<Gf2Point> = pg_points(r)
                        .into_iter()
                        .filter(|&v| crate::gf2::in_span(v, &px) && crate::gf2::in_span(v, &py))
                        .collect();
                    for side in [cx.elements, cy.elements] {
                        let mut pts = m.points_of(side);
                        pts.extend(gp.iter().copied());
                        pts.sort_unstable();
                        pts.dedup();
                        let filled = BinaryMatroid::new(r, pts).unwrap();
                        if has_induced_minor(m, &filled).is_none() {
                            return Some(json!({"x": x.to_vec(), "y": y.to_vec(), "side": side.to_vec()}));
                        }
                    }
                }
                None
            },
        )
        .note("3-connected members")
    }

    fn t4_10(&self) -> Outcome {
        let spikes: Vec<BinaryMatroid> = (3..=self.scope.max_rank).map(|k| spike(k, true).unwrap().without_labels()).collect();
        let hypotheses = std::sync::atomic::AtomicUsize::new(0);
        let out = self.scan(
            |_| true,
            |m| {
                let r = m.rank();
                for e in 0..m.len() {
                    let c = m.contract_unsimplified(ElementSet::singleton(e)).unwrap();
                    // M/e lives on E - e; the contracted element is only kept as a loop
                    let rest = c.ground_set().without(e);
                    let doubled = c.in_two_circuits();
                    if doubled == rest || c.rank_of_set(doubled) != c.rank() {
                        continue;
                    }
                    hypotheses.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    let spiked = spikes
                        .iter()
                        .filter(|s| s.rank() <= r)
                        .any(|s| has_induced_minor(m, s).is_some());
                    let k4 = r < 3 || has_k4_induced(m);
                    if !spiked || !k4 {
                        return Some(json!({"e": e, "spike_with_tip_and_cotip": spiked, "k4": k4}));
                    }
                }
                None
            },
        );
        let n = hypotheses.load(std::sync::atomic::Ordering::Relaxed);
        out.note(format!("{n} pairs (M, e) met the hypothesis; contraction without simplification"))
    }

    fn t_round(&self) -> Outcome {
        self.scan(
            |m| m.len() <= 16,
            |m| {
                let d = m.is_round_by_definition();
                let c = m.is_round_by_cocircuits();
                (d != c).then(|| json!({"definition": d, "cocircuits": c}))
            },
        )
        .note("members with at most 16 elements")
    }
}

fn bits_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Checks a target flag independently of the search that produced it.
fn check_flag(m: &BinaryMatroid, flag: &TargetFlag) -> std::result::Result<(), String> {
    let green: HashSet<Gf2Point> = m.reembedded_points().into_iter().collect();
    if flag.flats.len() != flag.rank + 1 || flag.colors.len() != flag.rank {
        return Err("wrong number of layers".into());
    }
    for (i, f) in flag.flats.iter().enumerate() {
        if f.len() != (1 << i) - 1 || rank_of(f) != i {
            return Err(format!("F_{i} is not a projective flat of rank {i}"));
        }
        if i > 0 {
            let prev = &flag.flats[i - 1];
            if !prev.iter().all(|p| f.contains(p)) {
                return Err(format!("F_{} is not inside F_{i}", i - 1));
            }
            let want = flag.colors[i - 1] == Color::Green;
            if f.iter().filter(|p| !prev.contains(p)).any(|p| green.contains(p) != want) {
                return Err(format!("layer {i} is not monochromatic"));
            }
        }
    }
    Ok(())
}

/// Layers `F_i - F_{i-1}` of every complete flag of `PG(r-1,2)`.
fn complete_flags(r: usize) -> Vec<Vec<Vec<u32>>> {
    fn rec(r: usize, flat: &[u32], layers: &mut Vec<Vec<u32>>, out: &mut Vec<Vec<Vec<u32>>>) {
        if layers.len() == r {
            out.push(layers.clone());
            return;
        }
        for x in 1u32..1 << r {
            if flat.contains(&x) {
                continue;
            }
            let mut layer: Vec<u32> = flat.iter().map(|&f| f ^ x).collect();
            layer.push(x);
            // each new flat once: through the least point of its new layer
            if layer.iter().any(|&y| y < x) {
                continue;
            }
            let mut next = flat.to_vec();
            next.extend(&layer);
            layers.push(layer);
            rec(r, &next, layers, out);
            layers.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, &[], &mut Vec::new(), &mut out);
    out
}

/// Every GPC of `a` and `b` across a proper projective flat of each (the
/// empty flat included), over every linear identification, within the
/// rank and size caps. Gluing along a whole side returns the other side and
/// is skipped.
fn all_gpcs(a: &BinaryMatroid, b: &BinaryMatroid, max_rank: usize, max_size: usize) -> Vec<(BinaryMatroid, Vec<(usize, usize)>)> {
    let (fa, fb) = (a.flats(), b.flats());
    let mut out = Vec::new();
    for k in 0..fa.len().min(fb.len()) {
        if a.rank() + b.rank() - k > max_rank || a.len() + b.len() > max_size.saturating_add((1 << k) - 1) {
            continue;
        }
        let proj = |m: &BinaryMatroid, f: &crate::matroid::Flat| {
            f.elements.len() + 1 == 1 << k && f.elements != m.ground_set()
        };
        for f1 in fa[k].iter().filter(|f| proj(a, f)) {
            let pts1 = a.points_of(f1.elements);
            let basis1 = Gf2Basis::greedy(&pts1);
            for f2 in fb[k].iter().filter(|f| proj(b, f)) {
                let pts2 = b.points_of(f2.elements);
                for images in ordered_bases(&pts2, k) {
                    let basis2 = Gf2Basis::new(images).expect("independent");
                    let glue: Vec<(usize, usize)> = f1
                        .elements
                        .iter()
                        .map(|i| {
                            let c = basis1.coordinates(a.points()[i]).unwrap();
                            (i, b.index_of(basis2.combine(c)).unwrap())
                        })
                        .collect();
                    let g = gpc_across_pg(a, b, &glue).expect("valid gluing");
                    out.push((g.matroid, glue));
                }
            }
        }
    }
    out
}

/// Ordered independent `k`-tuples drawn from `pts`.
fn ordered_bases(pts: &[Gf2Point], k: usize) -> Vec<Vec<Gf2Point>> {
    fn rec(pts: &[Gf2Point], k: usize, cur: &mut Vec<Gf2Point>, out: &mut Vec<Vec<Gf2Point>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for &p in pts {
            if !crate::gf2::in_span(p, cur) {
                cur.push(p);
                rec(pts, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(pts, k, &mut Vec::new(), &mut out);
    out
}

/// Projective geometries closed under GPC across projective geometries,
/// up to isomorphism, within the caps.
pub fn gpc_closure(max_rank: usize, max_size: usize) -> Vec<BinaryMatroid> {
    let mut members: Vec<BinaryMatroid> = Vec::new();
    let mut forms: HashSet<CanonicalForm> = HashSet::new();
    let mut frontier: Vec<BinaryMatroid> = (0..=max_rank)
        .filter(|&k| (1usize << k) - 1 <= max_size)
        .map(BinaryMatroid::projective)
        .collect();
    for m in &frontier {
        forms.insert(canonical_form(m));
    }
    while !frontier.is_empty() {
        members.extend(frontier.iter().cloned());
        let found: Vec<(CanonicalForm, BinaryMatroid)> = frontier
            .par_iter()
            .flat_map_iter(|a| {
                members
                    .iter()
                    .flat_map(|b| all_gpcs(a, b, max_rank, max_size))
                    .map(|(m, _)| (canonical_form(&m), m))
                    .collect::<Vec<_>>()
            })
            .collect();
        frontier = found
            .into_iter()
            .filter_map(|(f, m)| forms.insert(f).then_some(m))
            .collect();
    }
    sorted_classes(members)
}

/// Coning laws for `A(N)` with tip `p`: (a) each element other than `p` lies
/// in a hyperplane isomorphic to `N`; (b) `si(A/p) ≅ N`; (c) `si(A/e) ≅
/// A(si(N/x))` where `e` is `x` or its lift; (d) each flat avoiding `p` lies
/// in such a hyperplane avoiding `p`.
fn coning_laws(n: &BinaryMatroid) -> Vec<Violation> {
    let coned = cone(n, true);
    let a = coned.matroid.without_labels();
    let p = coned.tip.expect("tipped");
    let apex = a.points()[p];
    let nf = canonical_form(n);
    let mut out = Vec::new();
    let mut fail = |law: &str, extra: Value| {
        out.push(Violation::new(n, json!({"law": law, "detail": extra})));
    };
    let copies: Vec<ElementSet> = a
        .hyperplanes()
        .into_iter()
        .filter(|&h| h.len() == n.len() && canonical_form(&a.restrict_to(h).unwrap()) == nf)
        .collect();
    for e in (0..a.len()).filter(|&e| e != p) {
        if !copies.iter().any(|h| h.contains(e)) {
            fail("a", json!({"element": e}));
        }
    }
    let (at_tip, _) = a.contract_simplify(ElementSet::singleton(p)).unwrap();
    if canonical_form(&at_tip) != nf {
        fail("b", json!({}));
    }
    for e in (0..a.len()).filter(|&e| e != p) {
        let base = a.points()[e].bits() & !apex.bits();
        let x = n.index_of(Gf2Point(base)).expect("element of N or its lift");
        let (lhs, _) = a.contract_simplify(ElementSet::singleton(e)).unwrap();
        let (nx, _) = n.contract_simplify(ElementSet::singleton(x)).unwrap();
        if canonical_form(&lhs) != canonical_form(&cone_unlabeled(&nx, true)) {
            fail("c", json!({"element": e}));
        }
    }
    let avoiding: Vec<ElementSet> = copies.iter().copied().filter(|h| !h.contains(p)).collect();
    for f in a.flats().into_iter().flatten() {
        if !f.elements.contains(p) && !avoiding.iter().any(|h| f.elements.is_subset(*h)) {
            fail("d", json!({"flat": f.elements.to_vec()}));
            break;
        }
    }
    out
}

/// Induced minors of `A(N)` lie in `IM(N) ∪ A(IM(N))`; those of the tipless
/// coning also may be tipless conings of members of `IM(N)`.
fn coning_closure(n: &BinaryMatroid) -> Vec<Violation> {
    let im: Vec<BinaryMatroid> = {
        let mut by_form: BTreeMap<CanonicalForm, BinaryMatroid> = BTreeMap::new();
        for k in 0..=n.rank() {
            for (_, _, c) in intervals_of_rank(n, k) {
                by_form.entry(canonical_form(&c)).or_insert(c);
            }
        }
        by_form.into_values().collect()
    };
    let base: HashSet<CanonicalForm> = im.iter().map(canonical_form).collect();
    let tipped: HashSet<CanonicalForm> = im.iter().map(|q| canonical_form(&cone_unlabeled(q, true))).collect();
    let tipless: HashSet<CanonicalForm> = im.iter().map(|q| canonical_form(&cone_unlabeled(q, false))).collect();
    let mut out = Vec::new();
    for (tip, allowed) in [(true, vec![&base, &tipped]), (false, vec![&base, &tipped, &tipless])] {
        let a = cone_unlabeled(n, tip);
        for f in induced_minor_forms(&a) {
            if !allowed.iter().any(|s| s.contains(&f)) {
                out.push(Violation::new(
                    n,
                    json!({"coning": if tip { "tipped" } else { "tipless" }, "induced_minor_form": f.hex()}),
                ));
            }
        }
    }
    out
}
