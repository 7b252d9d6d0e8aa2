//! Generators for tableau families and the generic-case census.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::near_hook::classify_near_hook;
use crate::runs::classify;
use crate::tableau::{Partition, Tableau};
use crate::tracks::{tableau_to_tracks, track_lengths, tracks_to_tableau, Track, TrackSystem};

pub const DEFAULT_CAP: usize = 24;

/// Largest tableau size exhaustive sweeps accept (`PROMOLAB_CAP` overrides).
pub fn enumeration_cap() -> usize {
    std::env::var("PROMOLAB_CAP").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_CAP)
}

fn check_cap(size: usize) -> Result<()> {
    let cap = enumeration_cap();
    if size > cap {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// All SYT of a shape, ordered lexicographically by the sequence of rows
/// that `1, 2, ..., n` are placed in.
pub fn enumerate_syt(shape: &Partition) -> Result<Vec<Tableau>> {
    check_cap(shape.size())?;
    let parts: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let mut rows: Vec<Vec<u32>> = parts.iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut out = Vec::new();
    fill(&parts, &mut rows, 1, shape.size() as u32, &mut out);
    Ok(out)
}

fn fill(parts: &[usize], rows: &mut Vec<Vec<u32>>, next: u32, n: u32, out: &mut Vec<Tableau>) {
    if next > n {
        out.push(Tableau::from_rows_unchecked(rows.clone()));
        return;
    }
    for i in 0..parts.len() {
        let len = rows[i].len();
        if len < parts[i] && (i == 0 || rows[i - 1].len() > len) {
            rows[i].push(next);
            fill(parts, rows, next + 1, n, out);
            rows[i].pop();
        }
    }
}

/// Second rows of all two-row SYT of shape `(n - m, m)`.
pub fn two_row_bottoms(n: u32, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m as usize);
    bottoms(n, m, 1, &mut cur, &mut out);
    out
}

fn bottoms(n: u32, m: u32, from: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let k = cur.len() as u32;
    if k == m {
        out.push(cur.clone());
        return;
    }
    // the (k+1)-th bottom entry must be at least 2(k+1)
    let lo = from.max(2 * (k + 1));
    let hi = n - (m - k - 1);
    for x in lo..=hi {
        cur.push(x);
        bottoms(n, m, x + 1, cur, out);
        cur.pop();
    }
}

pub fn two_row(n: u32, bottom: &[u32]) -> Tableau {
    let mut top = Vec::with_capacity(n as usize - bottom.len());
    let mut b = bottom.iter().peekable();
    for x in 1..=n {
        if b.peek() == Some(&&x) {
            b.next();
        } else {
            top.push(x);
        }
    }
    Tableau::from_rows_unchecked(vec![top, bottom.to_vec()])
}

/// Two-row `T[n]` with `|T| = m`; needs `n > 2m`.
pub fn enumerate_two_row(n: u32, m: u32) -> Result<Vec<Tableau>> {
    check_cap(n as usize)?;
    if m == 0 || n <= 2 * m {
        return Err(Error::Domain(format!("two-row T[{n}] with |T| = {m} needs n > 2|T|")));
    }
    Ok(two_row_bottoms(n, m).into_iter().map(|b| two_row(n, &b)).collect())
}

/// `T(n, l, r)` from run-start sequences `l <= s_1 < ... < s_r <= n-1`,
/// `s_{k+1} >= s_k + 2l`, `s_r <= s_1 + n - 3l`; run `k` starts at `s_k + 1`.
pub fn enumerate_single_length(n: u32, ell: u32, r: u32) -> Result<Vec<Tableau>> {
    if ell == 0 || r == 0 || n < (2 * r + 1) * ell {
        return Err(Error::PreconditionViolated(format!(
            "need n >= (2r+1)l, got n = {n}, l = {ell}, r = {r}"
        )));
    }
    let mut out = Vec::new();
    let mut s = Vec::with_capacity(r as usize);
    starts(n, ell, r, &mut s, &mut out);
    Ok(out)
}

fn starts(n: u32, ell: u32, r: u32, s: &mut Vec<u32>, out: &mut Vec<Tableau>) {
    if s.len() as u32 == r {
        let mut dots: Vec<u32> = s
            .iter()
            .flat_map(|&sk| {
                (1..=ell).map(move |o| {
                    // a run starting at n-l+k+1 continues with k+1..2k
                    let v = sk + o;
                    if v > n { v + sk + ell - 2 * n } else { v }
                })
            })
            .collect();
        dots.sort_unstable();
        out.push(two_row(n, &dots));
        return;
    }
    let lo = match s.last() {
        None => ell,
        Some(&p) => p + 2 * ell,
    };
    let hi = match s.first() {
        None => n - 1,
        Some(&s1) => (n - 1).min(s1 + n - 3 * ell),
    };
    for v in lo..=hi {
        s.push(v);
        starts(n, ell, r, s, out);
        s.pop();
    }
}

/// `T(n, l⃗, r⃗)` by classifying every two-row `T[n]` of the right size.
pub fn enumerate_family(n: u32, ells: &[u32], rs: &[u32]) -> Result<Vec<Tableau>> {
    check_capacity(n, ells, rs)?;
    let m: u32 = ells.iter().zip(rs).map(|(l, r)| l * r).sum();
    if n <= 2 * m {
        return Ok(Vec::new());
    }
    Ok(enumerate_two_row(n, m)?
        .into_iter()
        .filter(|t| classify(t).is_ok_and(|rd| rd.lengths == ells && rd.mults == rs))
        .collect())
}

fn check_capacity(n: u32, ells: &[u32], rs: &[u32]) -> Result<()> {
    if ells.is_empty() || ells.len() != rs.len() || ells.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Domain("lengths must strictly decrease and match mults".into()));
    }
    for (i, &ni) in track_lengths(n as i64, ells, rs).iter().enumerate() {
        let need = 2 * rs[i] as i64 * ells[i] as i64;
        if ni < need {
            return Err(Error::TrackCapacity { track: i, track_len: ni, needed: need });
        }
    }
    Ok(())
}

/// Every `(l⃗, r⃗)` with strictly decreasing lengths whose tracks at `n` have
/// room for their runs, in the order they are generated.
pub fn run_families(n: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    grow_families(n, n, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

fn grow_families(
    n: u32,
    max_len: u32,
    used: u32,
    ells: &mut Vec<u32>,
    rs: &mut Vec<u32>,
    out: &mut Vec<(Vec<u32>, Vec<u32>)>,
) {
    if !ells.is_empty() && check_capacity(n, ells, rs).is_ok() {
        out.push((ells.clone(), rs.clone()));
    }
    for ell in (1..max_len).rev() {
        let mut r = 1;
        while 2 * (used + ell * r) < n {
            ells.push(ell);
            rs.push(r);
            grow_families(n, ell, used + ell * r, ells, rs, out);
            ells.pop();
            rs.pop();
            r += 1;
        }
    }
}

/// Compositions of `total` into `parts` values, each at least `min`.
pub fn gap_sequences(total: u32, parts: u32, min: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if parts == 0 || total < parts * min {
        return out;
    }
    let mut cur = Vec::with_capacity(parts as usize);
    compose(total, parts, min, &mut cur, &mut out);
    out
}

fn compose(left: u32, parts: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        cur.push(left);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for g in min..=left - (parts - 1) * min {
        cur.push(g);
        compose(left - g, parts - 1, min, cur, out);
        cur.pop();
    }
}

/// Every valid track system for `(n, l⃗, r⃗)`, one per tableau (normalized).
pub fn enumerate_track_systems(n: u32, ells: &[u32], rs: &[u32]) -> Result<Vec<TrackSystem>> {
    check_capacity(n, ells, rs)?;
    let nl: Vec<u32> = track_lengths(n as i64, ells, rs).into_iter().map(|x| x as u32).collect();
    let per_track: Vec<Vec<Track>> = (0..ells.len())
        .map(|i| {
            let mut v: Vec<Track> = Vec::new();
            for gaps in gap_sequences(nl[i], rs[i], 2 * ells[i]) {
                for pos in 1..=nl[i] {
                    let t = Track { length: ells[i], mult: rs[i], track_len: nl[i], pos, gaps: gaps.clone() };
                    v.push(t.normalized());
                }
            }
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(ells.len());
    product(&per_track, &mut cur, &mut |tracks| {
        let ts = TrackSystem { n, tracks: tracks.to_vec() };
        if ts.check_bottleneck() {
            out.push(ts);
        }
    });
    Ok(out)
}

fn product(per: &[Vec<Track>], cur: &mut Vec<Track>, f: &mut impl FnMut(&[Track])) {
    if cur.len() == per.len() {
        f(cur);
        return;
    }
    for t in &per[cur.len()] {
        cur.push(t.clone());
        product(per, cur, f);
        cur.pop();
    }
}

/// `T(n, l⃗, r⃗)` built by merging every valid track system.
pub fn enumerate_family_structured(n: u32, ells: &[u32], rs: &[u32]) -> Result<Vec<Tableau>> {
    enumerate_track_systems(n, ells, rs)?.iter().map(tracks_to_tableau).collect()
}

/// Track system of a two-row tableau given its bottom row.
pub fn tracks_of(n: u32, bottom: &[u32]) -> Result<TrackSystem> {
    tableau_to_tracks(&two_row(n, bottom))
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

/// Generic-case census for shape `λ[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub generic: BigUint,
    pub total: BigUint,
    pub ratio: BigRational,
}

/// Closed-form count of generic `T` among all `T[n]` of shape `λ[n]`:
/// `f^λ * (C(n - k, k) - C(n - k - 2, k - 2))` with `k = |λ|`. The second
/// term counts spread-out entry sets containing both `2` and `n`.
pub fn generic_census(shape: &Partition, n: u32) -> Result<Census> {
    let size = shape.size() as i64;
    let full = shape.extend(n as usize).map_err(|e| Error::Domain(e.to_string()))?;
    let n = n as i64;
    let choose = binomial(n - size, size) - binomial(n - size - 2, size - 2);
    let generic = shape.hook_count() * choose;
    let total = full.hook_count();
    let ratio = BigRational::new(BigInt::from(generic.clone()), BigInt::from(total.clone()));
    Ok(Census { generic, total, ratio })
}

/// Every near-hook `T[n]` (lower part of shape `(2, 1, ..., 1)`, at least two boxes).
pub fn enumerate_nearhook_all(n: u32) -> Result<Vec<Tableau>> {
    check_cap(n as usize)?;
    let mut out = Vec::new();
    for k in 2..n.saturating_sub(2) {
        let shape = Partition::new(vec![n - k, 2].into_iter().chain(std::iter::repeat_n(1, k as usize - 2)).collect())?;
        out.extend(enumerate_syt(&shape)?);
    }
    Ok(out)
}

/// Near-hook `T[n]` whose profile has `r` runs and `s` singletons.
pub fn enumerate_nearhook(n: u32, r: usize, s: usize) -> Result<Vec<Tableau>> {
    Ok(enumerate_nearhook_all(n)?
        .into_iter()
        .filter(|t| classify_near_hook(t).is_ok_and(|p| p.r == r && p.s == s))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn syt_counts_match_hooks() {
        for shape in [vec![2, 1], vec![4], vec![3, 2], vec![2, 2, 1], vec![3, 3], vec![4, 2, 1]] {
            let s = p(&shape);
            assert_eq!(BigUint::from(enumerate_syt(&s).unwrap().len()), s.hook_count());
        }
    }

    #[test]
    fn syt_order_is_row_word_lex() {
        let v = enumerate_syt(&p(&[2, 1])).unwrap();
        assert_eq!(v[0].rows(), &[vec![1, 2], vec![3]]);
        assert_eq!(v[1].rows(), &[vec![1, 3], vec![2]]);
    }

    #[test]
    fn cap_enforced() {
        assert!(matches!(
            enumerate_syt(&p(&[30, 2])),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), 10u32.into());
        assert_eq!(binomial(3, -1), BigUint::zero());
        assert_eq!(binomial(-2, 0), BigUint::zero());
    }

    #[test]
    fn gap_compositions() {
        assert_eq!(gap_sequences(9, 2, 4), vec![vec![4, 5], vec![5, 4]]);
    }
}
