//! Drivers that check each module's claims over a parameter grid and collect
//! per-case results into a JSON report.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::divisor::{brute_force_positions, generic_divisor, is_generic, p_d, p_d_at, p_d_poly};
use crate::enumeration::{
    binomial, enumerate_family, enumerate_family_structured, enumerate_nearhook_all, enumerate_single_length,
    enumerate_syt, enumerate_track_systems, generic_census, run_families,
};
use crate::error::{Error, Result};
use crate::near_hook::{
    classify_near_hook, nearhook_generic_divisor, quadratic_divisor, rotation_period, runsonly_divisor,
};
use crate::promotion::{count_fixed_from_lengths, orbit_partition, period, promote};
use crate::qseries::{csp_fixed_count, csp_polynomial, divisors, eval_at_primitive_root, maj_gf};
use crate::runs::classify;
use crate::tableau::{Partition, Tableau};
use crate::tracks::{rotate_tracks, tableau_to_tracks, track_lengths, tracks_to_tableau};

pub const REPORT_VERSION: &str = "1.0";

/// Theorem ids accepted by [`verify`], with the check each one runs.
pub const THEOREMS: &[(&str, &str)] = &[
    ("csp", "fixed points of promotion powers equal the sieving polynomial at roots of unity"),
    ("orbit-divides", "single-length orbit lengths divide n - l"),
    ("maj", "shifted sieving polynomial equals the l-major-index generating function"),
    ("family-size", "family sizes equal the closed-form count"),
    ("round-trip", "track encoding and decoding are inverse"),
    ("commutation", "promotion rotates tracks and preserves gap data"),
    ("p_d", "admissible track positions are counted by P_d, which orbit lengths divide"),
    ("generic", "generic orbit lengths divide the lcm bound and the census is exact"),
    ("near-hook", "near-hook orbit lengths divide their linear or quadratic bounds"),
];

/// Parameters for a verification run. Empty vectors select defaults.
///
/// For `csp`, `orbit-divides` and `maj`, every pair from `ells x rs` is a
/// separate family. The track theorems read `ells`/`rs` as one family
/// `(l⃗, r⃗)`, or every family at each `n` when both are empty.
#[derive(Debug, Clone, Default)]
pub struct Grid {
    pub ns: Vec<u32>,
    pub ells: Vec<u32>,
    pub rs: Vec<u32>,
    pub shapes: Vec<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub version: &'static str,
    pub theorem: String,
    pub check: &'static str,
    pub passed: bool,
    pub cases: Vec<CaseResult>,
    /// Grid points whose preconditions fail, with the reason.
    pub skipped: Vec<String>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

enum Outcome {
    Checked(CaseResult),
    Skipped(String),
}

fn case(key: String, witness: Option<String>) -> Outcome {
    Outcome::Checked(CaseResult { case: key, passed: witness.is_none(), witness })
}

fn skip_or_raise(key: String, e: Error) -> Result<Outcome> {
    match e {
        Error::PreconditionViolated(_) | Error::TrackCapacity { .. } => Ok(Outcome::Skipped(format!("{key}: {e}"))),
        other => Err(other),
    }
}

pub fn check_name(theorem: &str) -> Result<&'static str> {
    THEOREMS
        .iter()
        .find(|(id, _)| *id == theorem)
        .map(|(_, c)| *c)
        .ok_or_else(|| Error::UnknownTheorem(theorem.to_string()))
}

/// Run `theorem` over `grid`. Cases run in parallel and are reported in grid
/// order. Fails with `PreconditionViolated` when no grid point is valid.
pub fn verify(theorem: &str, grid: &Grid) -> Result<VerifyReport> {
    let check = check_name(theorem)?;
    let outcomes: Vec<Outcome> = match theorem {
        "csp" | "orbit-divides" | "maj" => {
            let points = single_length_points(grid);
            points.par_iter().map(|&(n, l, r)| single_length_case(theorem, n, l, r)).collect::<Result<_>>()?
        }
        "family-size" | "round-trip" | "commutation" | "p_d" => {
            let points = family_points(grid)?;
            points.par_iter().map(|(n, l, r)| family_case(theorem, *n, l, r)).collect::<Result<_>>()?
        }
        "generic" => {
            let shapes = if grid.shapes.is_empty() { small_partitions(3) } else { grid.shapes.clone() };
            let points: Vec<(Partition, u32)> =
                shapes.iter().flat_map(|s| grid.ns.clone().into_iter().map(move |n| (s.clone(), n))).collect();
            points.par_iter().map(|(s, n)| generic_case(s, *n)).collect::<Result<_>>()?
        }
        "near-hook" => {
            let mut out: Vec<Outcome> =
                grid.ns.clone().par_iter().map(|&n| near_hook_cases(n)).collect::<Result<Vec<Vec<_>>>>()?.into_iter().flatten().collect();
            out.push(inner_hook_case());
            out
        }
        _ => unreachable!("theorem ids are checked above"),
    };
    let mut cases = Vec::new();
    let mut skipped = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Checked(c) => cases.push(c),
            Outcome::Skipped(s) => skipped.push(s),
        }
    }
    if cases.is_empty() {
        return Err(Error::PreconditionViolated(if skipped.is_empty() {
            "empty parameter grid".to_string()
        } else {
            skipped.join("; ")
        }));
    }
    let passed = cases.iter().all(|c| c.passed);
    Ok(VerifyReport { version: REPORT_VERSION, theorem: theorem.to_string(), check, passed, cases, skipped })
}

fn single_length_points(grid: &Grid) -> Vec<(u32, u32, u32)> {
    let ells = if grid.ells.is_empty() { vec![1, 2, 3] } else { grid.ells.clone() };
    let rs = if grid.rs.is_empty() { vec![1, 2, 3] } else { grid.rs.clone() };
    let mut out = Vec::new();
    for &l in &ells {
        for &r in &rs {
            out.extend(grid.ns.iter().map(|&n| (n, l, r)));
        }
    }
    out
}

fn family_points(grid: &Grid) -> Result<Vec<(u32, Vec<u32>, Vec<u32>)>> {
    if grid.ells.len() != grid.rs.len() {
        return Err(Error::Domain("need one multiplicity per run length".into()));
    }
    let mut out = Vec::new();
    for &n in &grid.ns {
        if grid.ells.is_empty() {
            out.extend(run_families(n).into_iter().map(|(l, r)| (n, l, r)));
        } else {
            out.push((n, grid.ells.clone(), grid.rs.clone()));
        }
    }
    Ok(out)
}

fn single_length_case(theorem: &str, n: u32, l: u32, r: u32) -> Result<Outcome> {
    let key = format!("n={n} l={l} r={r}");
    let family = match enumerate_single_length(n, l, r) {
        Ok(f) => f,
        Err(e) => return skip_or_raise(key, e),
    };
    let orbits = orbit_partition(&family)?;
    let lengths: Vec<u64> = orbits.iter().map(|o| o.period).collect();
    let (n64, l64, r64) = (n as i64, l as i64, r as i64);
    let witness = match theorem {
        "csp" => {
            let f = csp_polynomial(n64, l64, r64)?;
            let mut bad = None;
            for d in divisors((n - l) as u64) {
                let brute = BigInt::from(count_fixed_from_lengths(&lengths, (n - l) as u64 / d));
                let root = eval_at_primitive_root(&f, d)?;
                let closed = csp_fixed_count(n64, l64, r64, d as i64)?;
                if brute != root || root != closed {
                    bad = Some(format!("d={d}: enumerated {brute}, root of unity {root}, closed form {closed}"));
                    break;
                }
            }
            bad
        }
        "orbit-divides" => orbits
                .iter()
                .find(|o| !((n - l) as u64).is_multiple_of(o.period))
                .map(|o| format!("{} has period {}", o.canonical_rep.canonical(), o.period)),
        "maj" => {
            let lhs = csp_polynomial(n64, l64, r64)?.shift((r * r * l) as usize);
            let rhs = maj_gf(&family, l as u64);
            (lhs != rhs).then(|| format!("shifted polynomial {lhs}, generating function {rhs}"))
        }
        _ => unreachable!(),
    };
    Ok(case(key, witness))
}

/// `p_d * prod C(n_i - 2 r_i l_i + r_i - 1, r_i - 1) / r_i`.
pub fn family_size_formula(n: u32, ells: &[u32], rs: &[u32]) -> Result<BigInt> {
    let nv = track_lengths(n as i64, ells, rs);
    let mut total = p_d_at(n as i64, ells, rs)?;
    for i in 0..ells.len() {
        let (l, r) = (ells[i] as i64, rs[i] as i64);
        total *= BigInt::from(binomial(nv[i] - 2 * r * l + r - 1, r - 1));
        total /= r;
    }
    Ok(total)
}

fn family_case(theorem: &str, n: u32, ells: &[u32], rs: &[u32]) -> Result<Outcome> {
    let key = format!("n={n} l={ells:?} r={rs:?}");
    let family = match enumerate_family(n, ells, rs) {
        Ok(f) => f,
        Err(e) => return skip_or_raise(key, e),
    };
    let witness = match theorem {
        "family-size" => {
            let expected = family_size_formula(n, ells, rs)?;
            let mut structured = enumerate_family_structured(n, ells, rs)?;
            structured.sort();
            let mut filtered = family.clone();
            filtered.sort();
            if BigInt::from(family.len()) != expected {
                Some(format!("enumerated {}, formula {expected}", family.len()))
            } else if ells.len() == 1 && BigInt::from(enumerate_single_length(n, ells[0], rs[0])?.len()) != expected {
                Some("direct single-length generation disagrees".to_string())
            } else if structured != filtered {
                Some(format!("track generation gives {} tableaux, filtering {}", structured.len(), filtered.len()))
            } else {
                None
            }
        }
        "round-trip" => {
            let mut bad = None;
            for t in &family {
                let back = tableau_to_tracks(t).and_then(|ts| tracks_to_tableau(&ts));
                if back.as_ref() != Ok(t) {
                    bad = Some(format!("{} decodes to {back:?}", t.canonical()));
                    break;
                }
            }
            bad
        }
        "commutation" => commutation_witness(&family, ells, rs)?,
        "p_d" => p_d_witness(n, ells, rs, &family)?,
        _ => unreachable!(),
    };
    Ok(case(key, witness))
}

fn commutation_witness(family: &[Tableau], ells: &[u32], rs: &[u32]) -> Result<Option<String>> {
    for t in family {
        let ts = tableau_to_tracks(t)?;
        let p = promote(t);
        let rd = classify(&p)?;
        if rd.lengths != ells || rd.mults != rs {
            return Ok(Some(format!("{} leaves the family", t.canonical())));
        }
        let next = tableau_to_tracks(&p)?;
        if next.normalized() != rotate_tracks(&ts).normalized() {
            return Ok(Some(format!("{}: promoted tracks differ from rotated tracks", t.canonical())));
        }
        if next.gap_data() != ts.gap_data() {
            return Ok(Some(format!("{}: gap data changes under promotion", t.canonical())));
        }
    }
    Ok(None)
}

fn p_d_witness(n: u32, ells: &[u32], rs: &[u32], family: &[Tableau]) -> Result<Option<String>> {
    let nv: Vec<i64> = track_lengths(n as i64, ells, rs);
    let big: Vec<BigInt> = nv.iter().map(|&x| BigInt::from(x)).collect();
    let expected = p_d(&big, ells, rs)?;
    let symbolic = p_d_poly(ells, rs)?.eval(&BigInt::from(n));
    if symbolic != expected {
        return Ok(Some(format!("polynomial gives {symbolic}, recursion {expected}")));
    }
    let small: Vec<u32> = nv.iter().map(|&x| x as u32).collect();
    let gaps: BTreeSet<Vec<Vec<u32>>> = enumerate_track_systems(n, ells, rs)?.iter().map(|ts| ts.gap_data()).collect();
    for g in &gaps {
        let count = BigInt::from(brute_force_positions(&small, ells, rs, g)?);
        if count != expected {
            return Ok(Some(format!("gaps {g:?}: {count} positions, P_d = {expected}")));
        }
    }
    for o in orbit_partition(family)? {
        if !(&expected % BigInt::from(o.period)).is_zero() {
            return Ok(Some(format!("{} has period {} not dividing {expected}", o.canonical_rep.canonical(), o.period)));
        }
    }
    Ok(None)
}

/// Partitions of `1..=max` in reverse lexicographic order per size.
pub fn small_partitions(max: u32) -> Vec<Partition> {
    fn rec(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=left.min(cap)).rev() {
            cur.push(p);
            rec(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for k in 1..=max {
        rec(k, k, &mut Vec::new(), &mut out);
    }
    out.into_iter().map(|p| Partition::new(p).expect("generated partitions are valid")).collect()
}

fn generic_case(shape: &Partition, n: u32) -> Result<Outcome> {
    let key = format!("shape={shape} n={n}");
    let full = match shape.extend(n as usize) {
        Ok(f) => f,
        Err(e) => return Ok(Outcome::Skipped(format!("{key}: {e}"))),
    };
    let census = match generic_census(shape, n) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::Skipped(format!("{key}: {e}"))),
    };
    let all = enumerate_syt(&full)?;
    let mut generic = 0u64;
    for tn in &all {
        let lower = tn.lower().expect("shape has a lower part");
        if !is_generic(&lower, n)? {
            continue;
        }
        generic += 1;
        let bound = generic_divisor(&lower, n)?.bound;
        let p = period(tn);
        if !(&bound % BigUint::from(p)).is_zero() {
            return Ok(case(key, Some(format!("{} has period {p} not dividing {bound}", tn.canonical()))));
        }
    }
    let witness = (BigUint::from(generic) != census.generic)
        .then(|| format!("filtered count {generic}, closed form {}", census.generic));
    Ok(case(key, witness))
}

type GroupKey = (usize, usize, (Vec<(u32, u32)>, Vec<u32>));

/// Failures split by whether adjacent runs are separated by at least 3.
#[derive(Default)]
struct Tally {
    total: usize,
    separated: usize,
    first: Option<String>,
}

impl Tally {
    fn add(&mut self, separated: bool, msg: impl FnOnce() -> String) {
        self.total += 1;
        self.separated += separated as usize;
        if self.first.is_none() {
            self.first = Some(msg());
        }
    }

    fn witness(self) -> Option<String> {
        let first = self.first?;
        Some(format!(
            "{} failures, {} with runs separated by at least 3; first: {first}",
            self.total, self.separated
        ))
    }
}

/// Cases for one `n`: generic, runs-only and mixed divisibility, closure
/// of `(r, s)`, constancy of the gap data, and sizes of fixed-gap subsets.
fn near_hook_cases(n: u32) -> Result<Vec<Outcome>> {
    let all = enumerate_nearhook_all(n)?;
    let orbits = orbit_partition(&all)?;
    let mut generic = None;
    let mut runs_only = None;
    let mut closure = None;
    let mut mixed = Tally::default();
    let mut gaps = Tally::default();
    let mut groups: BTreeMap<GroupKey, (u64, bool)> = BTreeMap::new();
    for o in &orbits {
        let members = o.members.as_ref().expect("orbit_partition keeps members");
        let t = &members[0];
        let p = classify_near_hook(t)?;
        let lower = t.lower().expect("near-hooks have a lower part");
        let show = |bound: String| format!("{} has period {} not dividing {bound}", t.canonical(), o.period);
        if is_generic(&lower, n)? {
            let d = nearhook_generic_divisor(&lower, n)?;
            if !(&d % BigUint::from(o.period)).is_zero() {
                generic.get_or_insert_with(|| show(d.to_string()));
            }
        }
        if p.is_runs_only() {
            let d = runsonly_divisor(p.r as u64, n as u64);
            if !(&d % BigUint::from(o.period)).is_zero() {
                runs_only.get_or_insert_with(|| show(d.to_string()));
            }
        }
        let profiles: Vec<_> = members.iter().map(classify_near_hook).collect::<Result<_>>()?;
        if profiles.iter().any(|q| (q.r, q.s) != (p.r, p.s)) {
            closure.get_or_insert_with(|| format!("(r, s) changes along the orbit of {}", t.canonical()));
        }
        if p.is_mixed() {
            let separated = p.in_scope();
            let q = quadratic_divisor(n as i64, p.r as i64, p.s as i64)?;
            if q % o.period as i64 != 0 {
                mixed.add(separated, || format!("(r={}, s={}) {}", p.r, p.s, show(q.to_string())));
            }
            let k = p.gap_key();
            if profiles.iter().any(|q| q.gap_key() != k) {
                gaps.add(separated, || format!("gap data changes along the orbit of {}", t.canonical()));
            }
            let entry = groups.entry((p.r, p.s, k)).or_insert((0, separated));
            entry.0 += o.period;
        }
    }
    let mut sizes = Tally::default();
    for ((r, s, k), (size, separated)) in &groups {
        let q = quadratic_divisor(n as i64, *r as i64, *s as i64)?;
        let expected = q * (rotation_period(&k.0) * rotation_period(&k.1)) as i64;
        if expected != (*size as i64) * (*r * *s) as i64 {
            sizes.add(*separated, || format!("r={r} s={s} gaps {k:?}: {size} tableaux, quadratic bound {q}"));
        }
    }
    Ok(vec![
        case(format!("n={n} generic"), generic),
        case(format!("n={n} runs-only"), runs_only),
        case(format!("n={n} mixed"), mixed.witness()),
        case(format!("n={n} profile closure"), closure),
        case(format!("n={n} gap data"), gaps.witness()),
        case(format!("n={n} fixed-gap subset sizes"), sizes.witness()),
    ])
}

/// `pr(T) = |T| - 1` for `T` of shape `(2, 1^(k-2))`, `3 <= k <= 6`.
fn inner_hook_case() -> Outcome {
    let mut witness = None;
    for k in 3..=6u32 {
        let shape = Partition::new(std::iter::once(2).chain(std::iter::repeat_n(1, k as usize - 2)).collect())
            .expect("hook shape");
        let syt = enumerate_syt(&shape).expect("small shape");
        if let Some(t) = syt.iter().find(|t| period(t) != (k - 1) as u64) {
            witness = Some(format!("{} has period {}", t.canonical(), period(t)));
            break;
        }
    }
    case("inner hook periods".to_string(), witness)
}
