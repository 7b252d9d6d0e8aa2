//! Near-hook tableaux: `T[n]` of shape `(n - k, 2, 1, ..., 1)`.
//!
//! Values `2..=n` of the lower part are read on a cycle of length `n - 1`
//! (so `n` is followed by `2`). The first column of `T` is split into runs of
//! consecutive values and singletons; a column entry followed two steps later
//! by the next column entry is a singleton nested inside a run, and a gap of
//! three or more separates runs. The entry in the top-right box of `T` joins
//! an adjacent run or stands alone as a singleton.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::divisor::is_generic;
use crate::error::{Error, Result};
use crate::tableau::Tableau;

/// Which box of the run track's state machine `T` sits in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunTrackState {
    /// The top-right entry starts or ends a run.
    Run,
    /// The top-right entry is a singleton, or follows a nested singleton.
    Singleton,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearHookProfile {
    pub r: usize,
    pub s: usize,
    /// Runs in cyclic order, each listed from its first entry.
    pub runs: Vec<Vec<u32>>,
    pub singletons: Vec<u32>,
    pub state: RunTrackState,
    #[serde(skip)]
    pub n: u32,
    #[serde(skip)]
    pub top_right: u32,
    /// Per run: its first and last entry in the first column.
    #[serde(skip)]
    pub column_ends: Vec<(u32, u32)>,
}

impl NearHookProfile {
    pub fn run_lengths(&self) -> Vec<u32> {
        self.runs.iter().map(|r| r.len() as u32).collect()
    }

    pub fn is_runs_only(&self) -> bool {
        self.s == 0 && self.r >= 1
    }

    pub fn is_mixed(&self) -> bool {
        self.s >= 1 && self.r >= 1
    }

    /// Distance (mod `n - 1`) from the last first-column entry of the
    /// previous run to the first first-column entry of each run, less the
    /// singletons in between: two numbers each, one for a top-right singleton.
    pub fn run_gaps(&self) -> Vec<u32> {
        let m = self.n - 1;
        let r = self.r;
        (0..r)
            .map(|i| {
                let (from, to) = (self.column_ends[(i + r - 1) % r].1, self.column_ends[i].0);
                let skipped: u32 = self
                    .singletons
                    .iter()
                    .filter(|&&x| strictly_between(from, to, x, m))
                    .map(|&x| if x == self.top_right { 1 } else { 2 })
                    .sum();
                cyclic_dist(from, to, m) - skipped
            })
            .collect()
    }

    /// Distance from each singleton to the next, less two numbers for every
    /// last first-column entry of a run in between.
    pub fn singleton_gaps(&self) -> Vec<u32> {
        let m = self.n - 1;
        let k = self.s;
        (0..k)
            .map(|j| {
                let (from, to) = (self.singletons[j], self.singletons[(j + 1) % k]);
                let ends = self.column_ends.iter().filter(|e| strictly_between(from, to, e.1, m)).count() as u32;
                cyclic_dist(from, to, m) - 2 * ends
            })
            .collect()
    }

    /// Gap data fixed along the orbit: (run length, run gap) pairs and
    /// singleton gaps, each as its least rotation.
    pub fn gap_key(&self) -> (Vec<(u32, u32)>, Vec<u32>) {
        let pairs: Vec<(u32, u32)> = self.run_lengths().into_iter().zip(self.run_gaps()).collect();
        (least_rotation(&pairs), least_rotation(&self.singleton_gaps()))
    }

    /// Runs at least 3 apart and singletons at least 2 apart, as read by
    /// [`run_gaps`](Self::run_gaps) and [`singleton_gaps`](Self::singleton_gaps).
    /// Outside this range a run closes up on itself around its nested
    /// singletons and the quadratic count does not apply.
    pub fn in_scope(&self) -> bool {
        self.run_gaps().iter().all(|&g| g >= 3) && self.singleton_gaps().iter().all(|&h| h >= 2)
    }
}

/// Distance from `a` forward to `b` on a cycle of length `m`, in `1..=m`.
fn cyclic_dist(a: u32, b: u32, m: u32) -> u32 {
    let d = (b + m - a % m) % m;
    if d == 0 { m } else { d }
}

fn strictly_between(a: u32, b: u32, x: u32, m: u32) -> bool {
    x % m != a % m && cyclic_dist(a, x, m) < cyclic_dist(a, b, m)
}

/// The lower part `T` of a near-hook `T[n]`, as (first column, top-right entry).
fn near_hook_parts(tn: &Tableau) -> Result<(u32, Vec<u32>, u32)> {
    let rows = tn.rows();
    if !tn.is_standard() || rows.len() < 2 || rows[1].len() != 2 || rows[2..].iter().any(|r| r.len() != 1) {
        return Err(Error::NotNearHook);
    }
    let col: Vec<u32> = rows[1..].iter().map(|r| r[0]).collect();
    Ok((tn.size() as u32, col, rows[1][1]))
}

pub fn is_near_hook(tn: &Tableau) -> bool {
    near_hook_parts(tn).is_ok()
}

pub fn classify_near_hook(tn: &Tableau) -> Result<NearHookProfile> {
    let (n, col, b) = near_hook_parts(tn)?;
    Ok(classify_parts(n, &col, b))
}

fn classify_parts(n: u32, col: &[u32], b: u32) -> NearHookProfile {
    let m = n - 1;
    let c = |v: u32| v - 2;
    let k = col.len();
    let d: Vec<u32> = (0..k)
        .map(|i| if k == 1 { m } else { (c(col[(i + 1) % k]) + m - c(col[i])) % m })
        .collect();
    let nested: Vec<bool> = d.iter().map(|&x| x == 2).collect();
    let first_break = (0..k).find(|&i| d[i] >= 3).unwrap_or_else(|| {
        let max = *d.iter().max().unwrap();
        d.iter().position(|&x| x == max).unwrap()
    });
    // segments of column indices, each ending at a break
    let mut segments: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    for step in 1..=k {
        let i = (first_break + step) % k;
        cur.push(i);
        if d[i] >= 3 || i == first_break {
            segments.push(std::mem::take(&mut cur));
        }
    }
    let seg_of = |i: usize| segments.iter().position(|s| s.contains(&i)).unwrap();
    let col_index = |v: u32| col.iter().position(|&x| x == v);
    let prev = if b == 2 { n } else { b - 1 };
    let next = if b == n { 2 } else { b + 1 };
    // (segment, sort key) for the top-right entry when it joins a run
    let attach = match (col_index(prev), col_index(next)) {
        (Some(i), _) if !nested[i] => Some((seg_of(i), i, 1i64)),
        (_, Some(j)) => Some((seg_of(j), j, -1i64)),
        _ => None,
    };
    let offset = |seg: &[usize], i: usize| {
        let start = c(col[seg[0]]);
        ((c(col[i]) + m - start) % m) as i64
    };
    let mut runs = Vec::new();
    let mut column_ends = Vec::new();
    let mut singletons: Vec<u32> = (0..k).filter(|&i| nested[i]).map(|i| col[i]).collect();
    let mut b_in_run = false;
    for (si, seg) in segments.iter().enumerate() {
        let mut members: Vec<(i64, u32)> =
            seg.iter().filter(|&&i| !nested[i]).map(|&i| (2 * offset(seg, i), col[i])).collect();
        let col_members: Vec<u32> = members.iter().map(|x| x.1).collect();
        if let Some((s, i, side)) = attach {
            if s == si {
                members.push((2 * offset(seg, i) + side, b));
            }
        }
        if members.len() >= 2 {
            members.sort();
            b_in_run |= members.iter().any(|x| x.1 == b);
            runs.push(members.into_iter().map(|x| x.1).collect::<Vec<u32>>());
            column_ends.push((col_members[0], *col_members.last().unwrap()));
        } else {
            singletons.extend(members.into_iter().map(|x| x.1));
        }
    }
    if !b_in_run && !singletons.contains(&b) {
        singletons.push(b);
    }
    singletons.sort_unstable();
    let prev_nested = col_index(prev).is_some_and(|i| nested[i]);
    let state = if singletons.contains(&b) || (b_in_run && prev_nested) {
        RunTrackState::Singleton
    } else {
        RunTrackState::Run
    };
    NearHookProfile { r: runs.len(), s: singletons.len(), runs, singletons, state, n, top_right: b, column_ends }
}

/// `(|T| - 1)(n - 1)` for a generic near-hook.
pub fn nearhook_generic_divisor(t: &Tableau, n: u32) -> Result<BigUint> {
    let rows = t.rows();
    if rows[0].len() != 2 || rows[1..].iter().any(|r| r.len() != 1) {
        return Err(Error::NotNearHook);
    }
    if !is_generic(t, n)? {
        return Err(Error::NotGeneric(n));
    }
    Ok(BigUint::from(t.size() as u64 - 1) * BigUint::from(n - 1))
}

/// `(2r - 1) n - 2r` for runs-only near-hooks.
pub fn runsonly_divisor(r: u64, n: u64) -> BigUint {
    BigUint::from((2 * r - 1) * n - 2 * r)
}

/// `(n - 2r - 1)((2r + s - 1)(n - 2s) - 2r) - 2rs(4r + 2s - 3)` for `r, s >= 1`.
pub fn quadratic_divisor(n: i64, r: i64, s: i64) -> Result<i64> {
    if r < 1 || s < 1 {
        return Err(Error::Domain(format!("mixed case needs r, s >= 1, got r = {r}, s = {s}")));
    }
    Ok((n - 2 * r - 1) * ((2 * r + s - 1) * (n - 2 * s) - 2 * r) - 2 * r * s * (4 * r + 2 * s - 3))
}

/// A circular track with dots at `positions` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleTrack {
    pub len: u32,
    pub positions: Vec<u32>,
    /// Distance from each dot to the next one.
    pub gaps: Vec<u32>,
}

impl CycleTrack {
    /// Dots placed on the numbers in `keep`; a dot on a skipped number sits at
    /// the last kept number before it.
    fn place(keep: &[u32], dots: &[u32], gaps: Vec<u32>) -> CycleTrack {
        let len = keep.len() as u32;
        let positions = dots
            .iter()
            .map(|d| match keep.partition_point(|x| x <= d) as u32 {
                0 => len,
                p => p,
            })
            .collect();
        CycleTrack { len, positions, gaps }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearHookTracks {
    /// Dots at the first first-column entry of each run; gaps run from each
    /// run's last first-column entry to the next run's first.
    pub run_track: CycleTrack,
    pub singleton_track: CycleTrack,
    pub state: RunTrackState,
    pub run_lengths: Vec<u32>,
}

impl NearHookTracks {
    /// Same data as [`NearHookProfile::gap_key`].
    pub fn gap_key(&self) -> (Vec<(u32, u32)>, Vec<u32>) {
        let pairs: Vec<(u32, u32)> =
            self.run_lengths.iter().copied().zip(self.run_track.gaps.iter().copied()).collect();
        (least_rotation(&pairs), least_rotation(&self.singleton_track.gaps))
    }
}

/// Lexicographically least cyclic rotation.
pub fn least_rotation<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    (0..v.len().max(1))
        .map(|a| {
            let mut w = v.to_vec();
            if !w.is_empty() {
                w.rotate_left(a);
            }
            w
        })
        .min()
        .unwrap_or_default()
}

/// Number of distinct rotations of `v`.
pub fn rotation_period<T: PartialEq>(v: &[T]) -> usize {
    let k = v.len();
    (1..=k).find(|&p| k.is_multiple_of(p) && (0..k).all(|i| v[i] == v[(i + p) % k])).unwrap_or(k.max(1))
}

/// Numbers `1..=n` minus `skip`, minus the smallest survivor.
fn track_numbers(n: u32, skip: &BTreeSet<u32>) -> Vec<u32> {
    let mut keep: Vec<u32> = (1..=n).filter(|x| !skip.contains(x)).collect();
    if !keep.is_empty() {
        keep.remove(0);
    }
    keep
}

fn wrap_n(v: u32, n: u32) -> u32 {
    if v > n { v - n } else { v }
}

/// Run track and singleton track of a mixed near-hook.
pub fn nearhook_tracks(tn: &Tableau) -> Result<NearHookTracks> {
    let p = classify_near_hook(tn)?;
    tracks_of_profile(&p)
}

pub fn tracks_of_profile(p: &NearHookProfile) -> Result<NearHookTracks> {
    if !p.is_mixed() {
        return Err(Error::NotMixed);
    }
    let n = p.n;
    let mut skip = BTreeSet::new();
    for &(_, last) in &p.column_ends {
        skip.insert(wrap_n(last + 1, n));
        skip.insert(wrap_n(last + 2, n));
    }
    let singleton_track = CycleTrack::place(&track_numbers(n, &skip), &p.singletons, p.singleton_gaps());
    let short = if p.singletons.contains(&p.top_right) {
        Some(p.top_right)
    } else if p.state == RunTrackState::Singleton {
        Some(p.top_right - 1)
    } else {
        None
    };
    let mut skip = BTreeSet::new();
    for &x in &p.singletons {
        skip.insert(x);
        if Some(x) != short {
            skip.insert(wrap_n(x + 1, n));
        }
    }
    let firsts: Vec<u32> = p.column_ends.iter().map(|e| e.0).collect();
    let run_track = CycleTrack::place(&track_numbers(n, &skip), &firsts, p.run_gaps());
    Ok(NearHookTracks { run_track, singleton_track, state: p.state, run_lengths: p.run_lengths() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near_hook(n: u32, col: &[u32], b: u32) -> Tableau {
        let mut lower = vec![vec![col[0], b]];
        lower.extend(col[1..].iter().map(|&x| vec![x]));
        Tableau::validate(lower).unwrap().extend_first_row(n).unwrap()
    }

    fn example() -> Tableau {
        near_hook(15, &[3, 5, 8, 9, 11, 14, 15], 4)
    }

    #[test]
    fn worked_example_profile() {
        let p = classify_near_hook(&example()).unwrap();
        assert_eq!(p.singletons, vec![3, 9, 15]);
        assert_eq!(p.runs, vec![vec![8, 11], vec![14, 4, 5]]);
        assert_eq!((p.r, p.s), (2, 3));
        assert_eq!(p.state, RunTrackState::Singleton);
    }

    #[test]
    fn worked_example_tracks() {
        let t = nearhook_tracks(&example()).unwrap();
        assert_eq!(t.run_track.len, 9);
        assert_eq!(t.singleton_track.len, 10);
        assert_eq!(t.singleton_track.positions, vec![2, 6, 10]);
        assert_eq!(t.run_lengths, vec![2, 3]);
        assert_eq!(t.run_track.gaps, vec![3, 3]);
    }

    #[test]
    fn run_crossing_pauses() {
        use crate::promotion::promote;
        let mut t = near_hook(15, &[2, 3, 5, 7, 10, 11, 13], 6);
        let mut cur = example();
        while cur != t {
            cur = promote(&cur);
        }
        let shifted = |tr: &CycleTrack| {
            let mut v: Vec<u32> = tr.positions.iter().map(|&p| if p == 1 { tr.len } else { p - 1 }).collect();
            v.sort_unstable();
            v
        };
        let sorted = |tr: &CycleTrack| {
            let mut v = tr.positions.clone();
            v.sort_unstable();
            v
        };
        let mut moved = Vec::new();
        let mut tr = nearhook_tracks(&t).unwrap();
        for _ in 0..9 {
            t = promote(&t);
            let next = nearhook_tracks(&t).unwrap();
            assert_eq!(next.gap_key(), tr.gap_key());
            assert_eq!((next.run_track.len, next.singleton_track.len), (9, 10));
            let run = sorted(&next.run_track);
            let single = sorted(&next.singleton_track);
            assert!(run == sorted(&tr.run_track) || run == shifted(&tr.run_track));
            assert!(single == sorted(&tr.singleton_track) || single == shifted(&tr.singleton_track));
            moved.push((run != sorted(&tr.run_track), single != sorted(&tr.singleton_track)));
            tr = next;
        }
        let (b, r, s) = ((true, true), (true, false), (false, true));
        assert_eq!(moved, vec![b, s, b, s, s, b, r, r, b]);
    }

    #[test]
    fn spread_out_entries_are_singletons() {
        let p = classify_near_hook(&near_hook(20, &[3, 6, 12], 9)).unwrap();
        assert_eq!((p.r, p.s), (0, 4));
        assert_eq!(p.state, RunTrackState::Singleton);
    }

    #[test]
    fn runs_only_profile() {
        // runs (11,12) and (5,6,7), with 7 in the top-right box
        let p = classify_near_hook(&near_hook(16, &[5, 6, 11, 12], 7)).unwrap();
        assert_eq!(p.runs, vec![vec![11, 12], vec![5, 6, 7]]);
        assert_eq!(p.s, 0);
        assert_eq!(p.state, RunTrackState::Run);
        let total: u32 = p.run_lengths().iter().sum::<u32>() + p.run_gaps().iter().sum::<u32>();
        assert_eq!(total, 16 + 2);
    }

    #[test]
    fn wraparound_run() {
        // 15, 16, 2 wrap around the 15-cycle of values 2..=16
        let p = classify_near_hook(&near_hook(16, &[2, 7, 8, 15, 16], 11)).unwrap();
        assert_eq!(p.runs, vec![vec![7, 8], vec![15, 16, 2]]);
        assert_eq!(p.singletons, vec![11]);
    }

    #[test]
    fn divisor_formulas() {
        assert_eq!(runsonly_divisor(1, 12), BigUint::from(10u32));
        assert_eq!(quadratic_divisor(15, 2, 3).unwrap(), 10 * (6 * 9 - 4) - 12 * 11);
        assert!(quadratic_divisor(15, 2, 0).is_err());
        let t = Tableau::validate(vec![vec![3, 6], vec![9]]).unwrap();
        assert_eq!(nearhook_generic_divisor(&t, 12).unwrap(), BigUint::from(22u32));
    }

    #[test]
    fn rotations() {
        assert_eq!(least_rotation(&[3, 1, 2]), vec![1, 2, 3]);
        assert_eq!(rotation_period(&[1, 2, 1, 2]), 2);
        assert_eq!(rotation_period(&[4]), 1);
    }
}
