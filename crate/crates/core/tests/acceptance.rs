//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use promolab::divisor::{brute_force_positions, p_d, p_d_poly};
use promolab::enumeration::{
    enumerate_family, enumerate_family_structured, enumerate_single_length, enumerate_syt, enumerate_track_systems, enumerate_two_row,
    generic_census,
};
use promolab::fitter::fit_quasipolynomial;
use promolab::promotion::{orbit_lengths, orbit_partition, period, promote};
use promolab::runs::classify;
use promolab::tracks::{rotate_tracks, tableau_to_tracks, track_lengths, tracks_to_tableau};
use promolab::verify::{small_partitions, verify, Grid};
use promolab::{orbit, NPoly, Partition, Tableau};

type Check = std::result::Result<String, String>;

fn t(rows: &[&[u32]]) -> Tableau {
    Tableau::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn tn(n: u32, bottom: &[u32]) -> Tableau {
    Tableau::validate(vec![bottom.to_vec()]).unwrap().extend_first_row(n).unwrap()
}

fn binom(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The position-count recursion, written out independently over `i128`.
fn pd_oracle(nv: &[i128], ells: &[i128], rs: &[i128]) -> i128 {
    let d = nv.len();
    let mut total: i128 = nv.iter().product();
    for i in 0..d {
        let sub_n: Vec<i128> = (0..i).map(|k| nv[k] - 2 * rs[k] * ells[i]).collect();
        let sub_l: Vec<i128> = (0..i).map(|k| ells[k] - ells[i]).collect();
        let inner = pd_oracle(&sub_n, &sub_l, &rs[..i]);
        for j in i + 1..d {
            let middle: i128 = (i + 1..j).map(|k| nv[k] - 2 * rs[k] * ells[k]).product();
            let tail: i128 = nv[j + 1..].iter().product();
            total -= 4 * rs[i] * rs[j] * ells[j] * ells[j] * inner * middle * tail;
        }
    }
    total
}

fn family_count_oracle(n: u32, ells: &[u32], rs: &[u32]) -> i128 {
    let nv: Vec<i128> = track_lengths(n as i64, ells, rs).into_iter().map(|x| x as i128).collect();
    let l: Vec<i128> = ells.iter().map(|&x| x as i128).collect();
    let r: Vec<i128> = rs.iter().map(|&x| x as i128).collect();
    let mut total = pd_oracle(&nv, &l, &r);
    for i in 0..ells.len() {
        total = total * binom((nv[i] - 2 * r[i] * l[i] + r[i] - 1) as i64, (r[i] - 1) as i64) as i128 / r[i];
    }
    total
}

fn grid(ns: impl IntoIterator<Item = u32>, ells: &[u32], rs: &[u32]) -> Grid {
    Grid { ns: ns.into_iter().collect(), ells: ells.to_vec(), rs: rs.to_vec(), shapes: vec![] }
}

fn run_verify(theorem: &str, g: &Grid) -> Check {
    let report = verify(theorem, g).map_err(|e| e.to_string())?;
    let failures: Vec<_> = report.failures().collect();
    let Some(f) = failures.first() else {
        return Ok(format!("{} cases, {} grid points skipped by precondition", report.cases.len(), report.skipped.len()));
    };
    Err(format!(
        "{} of {} cases fail; first {}: {}",
        failures.len(),
        report.cases.len(),
        f.case,
        f.witness.clone().unwrap_or_default()
    ))
}

fn worked_example() -> Check {
    let a = t(&[&[2, 5, 9], &[6, 7]]);
    let s = t(&[&[1, 2, 5], &[3, 4]]);
    let expected_t = vec![a.clone(), t(&[&[2, 6, 7], &[5, 9]]), t(&[&[2, 5, 6], &[7, 9]])];
    let expected_s = vec![s.clone(), t(&[&[1, 3, 4], &[2, 5]]), t(&[&[1, 2, 3], &[4, 5]])];
    if promote(&a) != expected_t[1] {
        return Err(format!("P(T) = {}", promote(&a)));
    }
    if a.to_syt() != s {
        return Err(format!("SYT(T) = {}", a.to_syt()));
    }
    let (ot, os) = (orbit(&a), orbit(&s));
    if ot.members.as_ref() != Some(&expected_t) || os.members.as_ref() != Some(&expected_s) {
        return Err("orbit members differ".into());
    }
    if ot.period != 3 || os.period != 3 || period(&a) != 3 {
        return Err(format!("periods {} and {}", ot.period, os.period));
    }
    Ok("both 3-cycles reproduced".into())
}

fn spectrum() -> Check {
    let shape = Partition::new(vec![8, 6]).unwrap();
    let all = enumerate_syt(&shape).map_err(|e| e.to_string())?;
    if BigUint::from(all.len()) != shape.hook_count() || all.len() != 1001 {
        return Err(format!("{} tableaux, hook formula {}", all.len(), shape.hook_count()));
    }
    let lcm = orbit_lengths(&all)
        .map_err(|e| e.to_string())?
        .into_iter()
        .fold(1u64, |acc, p| acc / gcd(acc, p) * p);
    if lcm != 7_554_844_752 {
        return Err(format!("lcm {lcm}"));
    }
    Ok("1001 tableaux, lcm 7554844752".into())
}

fn cardinalities() -> Check {
    let mut singles = 0;
    for ell in 1..=3u32 {
        for r in 1..=3u32 {
            for n in (2 * r + 1) * ell..=28 {
                let got = enumerate_single_length(n, ell, r).map_err(|e| e.to_string())?.len() as u128;
                let (n, l, r) = (n as i64, ell as i64, r as i64);
                let want = (n - l) as u128 * binom(n - l - 2 * r * l + r - 1, r - 1) / r as u128;
                if got != want {
                    return Err(format!("n={n} l={l} r={r}: {got} vs {want}"));
                }
                singles += 1;
            }
        }
    }
    let mut families = 0;
    for n in 3..=16u32 {
        // every two-row tableau with a track encoding lands in exactly one family
        let mut classified = 0usize;
        let mut seen = BTreeSet::new();
        for m in 1..=(n - 1) / 2 {
            for t in enumerate_two_row(n, m).map_err(|e| e.to_string())? {
                if tableau_to_tracks(&t).is_ok() {
                    let rd = classify(&t).map_err(|e| e.to_string())?;
                    classified += 1;
                    seen.insert((rd.lengths, rd.mults));
                }
            }
        }
        let mut total = 0usize;
        for (l, r) in &seen {
            let got = enumerate_family(n, l, r).map_err(|e| e.to_string())?.len();
            let want = family_count_oracle(n, l, r);
            if got as i128 != want {
                return Err(format!("n={n} l={l:?} r={r:?}: {got} vs {want}"));
            }
            total += got;
            families += 1;
        }
        if total != classified {
            return Err(format!("n={n}: families hold {total} tableaux, {classified} have tracks"));
        }
    }
    Ok(format!("{singles} single-length and {families} general families"))
}

/// Every two-row `T[n]` with `n <= 16` whose family has room on its tracks,
/// and the number of those whose family does not.
fn two_row_sweep() -> (Vec<Tableau>, usize) {
    let mut inside = Vec::new();
    let mut outside = 0;
    for n in 3..=16u32 {
        for m in 1..=(n - 1) / 2 {
            for t in enumerate_two_row(n, m).unwrap() {
                if tableau_to_tracks(&t).is_ok() {
                    inside.push(t);
                } else {
                    outside += 1;
                }
            }
        }
    }
    (inside, outside)
}

fn round_trip(sweep: &(Vec<Tableau>, usize)) -> Check {
    for t in &sweep.0 {
        let back = tableau_to_tracks(t).and_then(|ts| tracks_to_tableau(&ts));
        if back.as_ref() != Ok(t) {
            return Err(format!("{} gives {back:?}", t.canonical()));
        }
    }
    let ex = tn(20, &[2, 9, 10, 12, 13, 17, 18, 20]);
    let ts = tableau_to_tracks(&ex).map_err(|e| e.to_string())?;
    if ts.tracks[0].track_len != 13 || tracks_to_tableau(&ts).as_ref() != Ok(&ex) {
        return Err(format!("worked example gives track lengths {:?}", ts.lengths()));
    }
    Ok(format!("{} tableaux ({} over track capacity); worked example n1 = 13", sweep.0.len(), sweep.1))
}

fn commutation(sweep: &(Vec<Tableau>, usize)) -> Check {
    for t in &sweep.0 {
        let ts = tableau_to_tracks(t).map_err(|e| e.to_string())?;
        let next = tableau_to_tracks(&promote(t)).map_err(|e| e.to_string())?;
        if next.normalized() != rotate_tracks(&ts).normalized() {
            return Err(format!("{}: promotion and rotation disagree", t.canonical()));
        }
        if next.gap_data() != ts.gap_data() {
            return Err(format!("{}: gap data changes", t.canonical()));
        }
    }
    Ok(format!("{} tableaux", sweep.0.len()))
}

fn position_counts() -> Check {
    let (mut lines, mut total_choices) = (0, 0);
    for ells in [[2u32, 1], [3, 1], [3, 2]] {
        for rs in [[1u32, 1], [1, 2], [2, 1], [2, 2]] {
            let (l1, l2, r1, r2) = (ells[0] as i64, ells[1] as i64, rs[0] as i64, rs[1] as i64);
            let printed = NPoly::from_i64(&[
                l1 * l2 + 2 * r1 * l1 * l2 + 2 * r2 * l2 * l2,
                -(l1 + l2 + 2 * r2 * l2 + 2 * r1 * l2),
                1,
            ]);
            let factored = &(&NPoly::linear(BigInt::from(-(l1 + 2 * r2 * l2)))
                * &NPoly::linear(BigInt::from(-(l2 + 2 * r1 * l2))))
                - &NPoly::constant(BigInt::from(4 * r1 * r2 * l2 * l2));
            let poly = p_d_poly(&ells, &rs).map_err(|e| e.to_string())?;
            if poly != printed || poly != factored {
                return Err(format!("l={ells:?} r={rs:?}: {poly} vs printed {printed}"));
            }
            // with every r_i = 1 the gaps are forced, so choices accumulate over n
            let forced = rs.iter().all(|&r| r == 1);
            let (mut checked, mut choices) = (0, 0);
            for n in 4..=24u32 {
                let Ok(systems) = enumerate_track_systems(n, &ells, &rs) else { continue };
                let gaps: BTreeSet<Vec<Vec<u32>>> = systems.iter().map(|s| s.gap_data()).collect();
                if !forced && gaps.len() < 3 {
                    continue;
                }
                choices += gaps.len();
                let nv: Vec<u32> = track_lengths(n as i64, &ells, &rs).into_iter().map(|x| x as u32).collect();
                let want = p_d(&nv.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), &ells, &rs).unwrap();
                let oracle = pd_oracle(
                    &nv.iter().map(|&x| x as i128).collect::<Vec<_>>(),
                    &[l1 as i128, l2 as i128],
                    &[r1 as i128, r2 as i128],
                );
                if want != BigInt::from(oracle) || poly.eval(&BigInt::from(n)) != want {
                    return Err(format!("n={n} l={ells:?} r={rs:?}: P_d {want}, oracle {oracle}"));
                }
                for g in &gaps {
                    let count = BigInt::from(brute_force_positions(&nv, &ells, &rs, g).unwrap());
                    if count != want {
                        return Err(format!("n={n} l={ells:?} r={rs:?} gaps {g:?}: {count} positions vs {want}"));
                    }
                }
                for o in orbit_partition(&enumerate_family_structured(n, &ells, &rs).unwrap()).unwrap() {
                    if !(&want % BigInt::from(o.period)).is_zero() {
                        return Err(format!("{} has period {} not dividing {want}", o.canonical_rep, o.period));
                    }
                }
                checked += 1;
                if checked == 3 {
                    break;
                }
            }
            if checked == 0 || choices < 3 {
                return Err(format!("l={ells:?} r={rs:?}: only {choices} gap choices up to n = 24"));
            }
            total_choices += choices;
            lines += 1;
        }
    }
    Ok(format!("{lines} families, {total_choices} (n, gap) choices, printed P_2 matched"))
}

fn is_generic_oracle(entries: &[u32], n: u32) -> bool {
    let mut e = entries.to_vec();
    e.sort_unstable();
    e.windows(2).all(|w| w[1] >= w[0] + 2) && !(e.contains(&2) && e.contains(&n))
}

fn generic_case() -> Check {
    let mut cases = 0;
    for shape in small_partitions(3) {
        let k = shape.size() as u64;
        for n in 1..=14u32 {
            let Ok(full) = shape.extend(n as usize) else { continue };
            let mut count = 0u64;
            for tn in enumerate_syt(&full).map_err(|e| e.to_string())? {
                let lower = tn.lower().unwrap();
                if !is_generic_oracle(&lower.sorted_entries(), n) {
                    continue;
                }
                count += 1;
                let inner = period(&lower);
                let bound = inner / gcd(k, inner) * (n as u64 - 1);
                if !bound.is_multiple_of(period(&tn)) {
                    return Err(format!("{} has period {} not dividing {bound}", tn.canonical(), period(&tn)));
                }
            }
            let census = generic_census(&shape, n).map_err(|e| e.to_string())?;
            if census.generic != BigUint::from(count) {
                return Err(format!("shape {shape} n={n}: filtered {count}, closed form {}", census.generic));
            }
            cases += 1;
        }
        let ratios: Vec<f64> = [50u32, 100, 200]
            .iter()
            .map(|&n| generic_census(&shape, n).unwrap().ratio.to_f64().unwrap())
            .collect();
        // for a single box every tableau is generic and the ratio is exactly 1
        let increasing = if ratios[0] == 1.0 {
            ratios.iter().all(|&r| r == 1.0)
        } else {
            ratios[0] < ratios[1] && ratios[1] < ratios[2] && ratios[2] < 1.0
        };
        if !increasing {
            return Err(format!("shape {shape}: ratios {ratios:?}"));
        }
    }
    Ok(format!("{cases} (shape, n) cases; ratios increase toward 1 at n = 50, 100, 200"))
}

fn near_hook() -> Check {
    run_verify("near-hook", &grid(5..=16, &[], &[]))
}

fn fitter() -> Check {
    let seed = Tableau::validate(vec![vec![2, 5, 6]]).unwrap();
    let rd = classify(&seed.extend_first_row(20).unwrap()).map_err(|e| e.to_string())?;
    if rd.lengths != [2, 1] || rd.mults != [1, 1] {
        return Err(format!("seed reads as l={:?} r={:?}", rd.lengths, rd.mults));
    }
    let pd = p_d_poly(&rd.lengths, &rd.mults).unwrap();
    let fit = fit_quasipolynomial(&seed, 10..=40, 4).map_err(|e| e.to_string())?;
    if fit.modulus != 1 || fit.degree != 2 || fit.class_poly(0).as_ref() != Some(&pd) {
        return Err(format!("modulus {}, degree {}, P_d {pd}", fit.modulus, fit.degree));
    }
    if fit.classes[0].held_out < 2 {
        return Err("fewer than 2 held-out confirmations".into());
    }
    // a seed whose periods alternate between P_d and a proper divisor
    let other = Tableau::validate(vec![vec![4, 5, 6, 9]]).unwrap();
    let pd2 = p_d_poly(&[3, 1], &[1, 1]).unwrap();
    let fit2 = fit_quasipolynomial(&other, 10..=40, 4).map_err(|e| e.to_string())?;
    for &(n, p) in &fit2.data {
        if n >= fit2.onset && pd2.eval(&BigInt::from(n)) % BigInt::from(p) != BigInt::zero() {
            return Err(format!("n={n}: period {p} does not divide P_d"));
        }
    }
    if fit2.degree != 2 {
        return Err(format!("second seed fits with degree {}", fit2.degree));
    }
    Ok(format!(
        "fit {pd} from n = {} with {} held out; second seed degree 2 at modulus {}",
        fit.onset, fit.classes[0].held_out, fit2.modulus
    ))
}

fn main() {
    let mut failed = 0;
    let mut report = |id: u32, name: &str, limit: Option<Duration>, f: &dyn Fn() -> Check| {
        let start = Instant::now();
        let result = f();
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.1?}, limit {l:?}")),
            (r, _) => r,
        };
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {id:>2} {name}: {detail} [{:.2}s]", took.as_secs_f64());
    };
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    let sl = |th: &'static str| move || run_verify(th, &grid(1..=28, &[1, 2, 3], &[1, 2, 3]));
    report(1, "worked example", Some(Duration::from_secs(1)), &worked_example);
    report(2, "spectrum of (8,6)", min(1), &spectrum);
    report(3, "fixed-point counts three ways", min(5), &sl("csp"));
    report(4, "single-length orbit divisibility", None, &sl("orbit-divides"));
    report(5, "major-index identity", None, &sl("maj"));
    report(6, "family cardinalities", None, &cardinalities);
    let sweep = two_row_sweep();
    report(7, "track round trip", None, &|| round_trip(&sweep));
    report(8, "promotion rotates tracks", None, &|| commutation(&sweep));
    report(9, "position counts", min(5), &position_counts);
    report(10, "generic case", None, &generic_case);
    report(11, "near-hook bounds", min(10), &near_hook);
    report(12, "quasipolynomial fit", None, &fitter);
    if failed > 0 {
        println!("{failed} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
