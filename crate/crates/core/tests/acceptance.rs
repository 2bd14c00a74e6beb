//! One line per acceptance criterion. Counts are exact; each criterion also
//! has a wall-clock budget.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use binmat::constructs::{coning_sequence, named, spike};
use binmat::isomorph::{are_isomorphic, canonical_form};
use binmat::minors::{has_induced_minor, induced_minor_forms};
use binmat::verify::{enumerate_by_size, enumerate_matroids, verify_theorem, EnumerationScope, VerificationReport};
use binmat::ElementSet;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, Box<dyn Fn() -> Outcome>);

fn report_line(r: &VerificationReport) -> String {
    let partial = if r.scope.partial { ", partial" } else { "" };
    format!(
        "{} rank<={} n<={}{}: population {}, {} violations",
        r.theorem_id,
        r.scope.max_rank,
        r.scope.max_elements,
        partial,
        r.population,
        r.violations.len()
    )
}

/// Runs each check on each scope; fails on the first violation.
fn checks(ids: &[&str], scopes: &[EnumerationScope]) -> Outcome {
    let mut lines = Vec::new();
    for scope in scopes {
        for id in ids {
            let r = verify_theorem(id, scope).map_err(|e| e.to_string())?;
            let line = report_line(&r);
            if !r.passed() {
                return Err(format!("{line}; first witness {}", r.violations[0].witness));
            }
            lines.push(line);
        }
    }
    Ok(lines.join("; "))
}

fn rank4() -> EnumerationScope {
    EnumerationScope::new(4)
}

fn rank5_partial() -> EnumerationScope {
    EnumerationScope::new(5).with_max_elements(12)
}

fn enumeration_soundness() -> Outcome {
    let classes = enumerate_matroids(&rank4()).map_err(|e| e.to_string())?;
    let orbits: u64 = common::burnside_by_size(4).iter().sum();
    if classes.len() as u64 == orbits {
        Ok(format!("{} classes, {} Burnside orbits on subsets of PG(3,2)", classes.len(), orbits))
    } else {
        Err(format!("{} classes but {} orbits", classes.len(), orbits))
    }
}

fn chordality() -> Outcome {
    let r = verify_theorem("T-2.1", &rank4()).map_err(|e| e.to_string())?;
    let expected = enumerate_matroids(&rank4()).unwrap().len();
    match (r.passed(), r.population == expected) {
        (true, true) => Ok(report_line(&r)),
        _ => Err(report_line(&r)),
    }
}

fn targets() -> Outcome {
    let mut out = vec![checks(&["T-3.5", "T-3.6"], &[rank4()])?];
    out.push(checks(&["T-3.8"], &[EnumerationScope::new(5)])?);
    let mut strings = 0;
    for len in 0..=5 {
        for v in 0u32..1 << len {
            let bits: Vec<bool> = (0..len).rev().map(|i| v >> i & 1 == 1).collect();
            if coning_sequence(&bits).len() != v as usize {
                return Err(format!("string {bits:?} does not have {v} elements"));
            }
            strings += 1;
        }
    }
    out.push(format!("size law exact on all {strings} strings of length <= 5"));
    Ok(out.join("; "))
}

fn spikes() -> Outcome {
    let k4 = named("MK4").unwrap();
    if !are_isomorphic(&spike(3, true).unwrap().without_labels(), &k4) {
        return Err("spike(3, cotip) is not M(K4)".into());
    }
    for r in 3..=5 {
        let s = spike(r, true).unwrap();
        let dual = s.dual().to_simple().ok_or(format!("dual of the {r}-spike is not simple"))?;
        if !are_isomorphic(&dual, &s) {
            return Err(format!("{r}-spike with tip and cotip is not self-dual"));
        }
    }
    for r in 3..=6 {
        let s = spike(r, false).unwrap();
        let t = s.find_label("t").unwrap();
        let c = s.contract_unsimplified(ElementSet::singleton(t)).unwrap();
        let classes = c.parallel_classes();
        let pairs = classes.iter().filter(|p| p.len() == 2).count();
        if c.loops() != ElementSet::singleton(t) || pairs != r || classes.len() != r {
            return Err(format!("{r}-spike / t is not {r} parallel pairs"));
        }
        let (si, _) = c.simplify();
        let circuit = binmat::constructs::circuit(r).unwrap();
        if !are_isomorphic(&si, &circuit) {
            return Err(format!("si({r}-spike / t) is not an {r}-circuit"));
        }
    }
    Ok("spike(3) = M(K4); r-spikes with cotip self-dual for r = 3..5; M_r / t = r-circuit doubled for r = 3..6".into())
}

fn catalog() -> Outcome {
    let r10 = named("R10").unwrap();
    let target = named("M*(K33)").unwrap();
    for x in 0..r10.len() {
        let (c, _) = r10.contract_simplify(ElementSet::singleton(x)).unwrap();
        if !are_isomorphic(&c, &target) {
            return Err(format!("si(R10/{x}) is not M*(K33)"));
        }
    }
    if has_induced_minor(&named("F7*").unwrap(), &named("MC4").unwrap()).is_none() {
        return Err("F7* has no M(C4) induced minor".into());
    }
    Ok("si(R10/x) = M*(K33) for all 10 x; F7* has an M(C4) induced minor".into())
}

fn interval_equivalence() -> Outcome {
    let hosts = enumerate_by_size(9).map_err(|e| e.to_string())?;
    let patterns = enumerate_matroids(&EnumerationScope::new(3)).unwrap();
    let pattern_forms: Vec<_> = patterns.iter().map(canonical_form).collect();
    let mut oracle = common::FixpointOracle::new();
    let mut disagreements = 0;
    for m in &hosts {
        let reachable = oracle.closure(m);
        if induced_minor_forms(m) != reachable {
            disagreements += 1;
            continue;
        }
        for (p, f) in patterns.iter().zip(&pattern_forms) {
            if has_induced_minor(m, p).is_some() != reachable.contains(f) {
                disagreements += 1;
            }
        }
    }
    let line = format!(
        "{} hosts with |E| <= 9 x {} patterns of rank <= 3: {disagreements} disagreements",
        hosts.len(),
        patterns.len()
    );
    if disagreements == 0 {
        Ok(line)
    } else {
        Err(line)
    }
}

fn main() -> ExitCode {
    let min = |m: u64| Duration::from_secs(60 * m);
    let criteria: Vec<Criterion> = vec![
        ("enumeration soundness", min(5), Box::new(enumeration_soundness)),
        ("chordal iff no M(C4) induced minor", min(10), Box::new(chordality)),
        (
            "pair classes EXIM(K4\\e,K4), EXIM(K4\\e,F7), EXIM(C4,K4\\e)",
            min(10),
            Box::new(|| checks(&["T-1.2", "T-1.3", "T-1.4"], &[rank4(), rank5_partial()])),
        ),
        (
            "structure lemmas",
            min(10),
            Box::new(|| checks(&["T-2.2", "T-2.3", "T-2.4", "T-2.9", "T-2.11", "T-4.8"], &[rank4()])),
        ),
        ("coning laws", min(5), Box::new(|| checks(&["T-3.x"], &[rank4()]))),
        ("projective targets", min(10), Box::new(targets)),
        ("spike identities", min(1), Box::new(spikes)),
        ("catalog self-tests", min(1), Box::new(catalog)),
        (
            "triangles through e and spikes with tip and cotip",
            min(10),
            Box::new(|| checks(&["T-1.7", "T-4.10"], &[rank4(), rank5_partial()])),
        ),
        ("interval equivalence", min(10), Box::new(interval_equivalence)),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} [{:>2}] {name} ({:.1}s of {}s): {detail}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
