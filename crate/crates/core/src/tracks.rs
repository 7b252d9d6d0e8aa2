//! Circular tracks for two-row tableaux.
//!
//! All runs of length `l_i` live on a circular track of length
//! `n_i = n - l_i - 2 * sum_{j != i} r_j * min(l_i, l_j)`, described by the
//! start `p_i` of a representative run and the gaps between consecutive run
//! starts. Positions are 1-based and position `n_i` is the boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::promotion::demote;
use crate::runs::{build_arc_diagram, classify, read_runs, two_row_dots, RunDecomposition};
use crate::tableau::Tableau;

/// `n_i` for every length class. Values may be negative for tiny `n`.
pub fn track_lengths(n: i64, ells: &[u32], rs: &[u32]) -> Vec<i64> {
    (0..ells.len())
        .map(|i| {
            let others: i64 = (0..ells.len())
                .filter(|&j| j != i)
                .map(|j| rs[j] as i64 * ells[i].min(ells[j]) as i64)
                .sum();
            n - ells[i] as i64 - 2 * others
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Track {
    pub length: u32,
    pub mult: u32,
    pub track_len: u32,
    pub pos: u32,
    pub gaps: Vec<u32>,
}

impl Track {
    /// Start positions of the runs, beginning with the representative.
    pub fn starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.gaps.len());
        let mut s = self.pos;
        for &g in &self.gaps {
            out.push(s);
            s = wrap(s as i64 + g as i64, self.track_len);
        }
        out
    }

    /// End positions of the runs, in the same order as [`Track::starts`].
    pub fn ends(&self) -> Vec<u32> {
        self.starts()
            .into_iter()
            .map(|s| wrap(s as i64 + self.length as i64 - 1, self.track_len))
            .collect()
    }

    /// Choose the representative minimizing `(gaps, pos)`.
    pub fn normalized(&self) -> Track {
        let starts = self.starts();
        let r = self.gaps.len();
        (0..r)
            .map(|a| {
                let mut gaps = self.gaps.clone();
                gaps.rotate_left(a);
                Track { pos: starts[a], gaps, ..self.clone() }
            })
            .min_by(|x, y| (&x.gaps, x.pos).cmp(&(&y.gaps, y.pos)))
            .unwrap()
    }
}

/// Map `x` into `1..=m`.
fn wrap(x: i64, m: u32) -> u32 {
    ((x - 1).rem_euclid(m as i64) + 1) as u32
}

/// `pos` within `m` steps of the boundary: `n - m + 1, ..., n, 1, ..., m`.
fn in_window(pos: u32, track_len: u32, m: u32) -> bool {
    pos <= m || pos + m > track_len
}

/// The same window moved one step back: `n - m, ..., n, 1, ..., m - 1`.
fn in_lead_window(pos: u32, track_len: u32, m: u32) -> bool {
    pos < m || pos + m >= track_len
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TrackSystem {
    pub n: u32,
    pub tracks: Vec<Track>,
}

impl TrackSystem {
    pub fn lengths(&self) -> Vec<u32> {
        self.tracks.iter().map(|t| t.length).collect()
    }

    pub fn mults(&self) -> Vec<u32> {
        self.tracks.iter().map(|t| t.mult).collect()
    }

    pub fn normalized(&self) -> TrackSystem {
        TrackSystem { n: self.n, tracks: self.tracks.iter().map(Track::normalized).collect() }
    }

    /// Gap sequences of all tracks after normalization.
    pub fn gap_data(&self) -> Vec<Vec<u32>> {
        self.tracks.iter().map(|t| t.normalized().gaps).collect()
    }

    /// Check lengths, gap bounds, positions and the bottleneck rule.
    pub fn check(&self) -> Result<()> {
        let ells = self.lengths();
        let rs = self.mults();
        if ells.windows(2).any(|w| w[0] <= w[1]) || ells.contains(&0) {
            return Err(Error::InvariantViolated("lengths must strictly decrease".into()));
        }
        let expect = track_lengths(self.n as i64, &ells, &rs);
        for (i, t) in self.tracks.iter().enumerate() {
            if t.track_len as i64 != expect[i] {
                return Err(Error::InvariantViolated(format!(
                    "track {i} has length {} but n_i = {}",
                    t.track_len, expect[i]
                )));
            }
            if t.gaps.len() != t.mult as usize || t.mult == 0 {
                return Err(Error::InvariantViolated(format!("track {i}: gap count != mult")));
            }
            if t.gaps.iter().map(|&g| g as u64).sum::<u64>() != t.track_len as u64 {
                return Err(Error::InvariantViolated(format!("track {i}: gaps do not sum to n_i")));
            }
            if t.gaps.iter().any(|&g| g < 2 * t.length) {
                return Err(Error::InvariantViolated(format!("track {i}: gap below 2 l_i")));
            }
            if t.pos == 0 || t.pos > t.track_len {
                return Err(Error::InvariantViolated(format!("track {i}: position out of range")));
            }
        }
        if !self.check_bottleneck() {
            return Err(Error::InvariantViolated("bottleneck rule broken".into()));
        }
        Ok(())
    }

    /// At most one run may pass the shared boundary region at a time: for
    /// `l_i > l_j` and `m = l_j`, no length-`l_i` run may end in
    /// `n_i - m, ..., n_i, 1, ..., m - 1` while a length-`l_j` run ends in
    /// `n_j - m + 1, ..., n_j, 1, ..., m`.
    pub fn check_bottleneck(&self) -> bool {
        let ends: Vec<Vec<u32>> = self.tracks.iter().map(Track::ends).collect();
        for (i, a) in self.tracks.iter().enumerate() {
            for (j, b) in self.tracks.iter().enumerate() {
                if a.length <= b.length {
                    continue;
                }
                let m = b.length;
                let hit_a = ends[i].iter().any(|&e| in_lead_window(e, a.track_len, m));
                let hit_b = ends[j].iter().any(|&e| in_window(e, b.track_len, m));
                if hit_a && hit_b {
                    return false;
                }
            }
        }
        true
    }

    /// No run ends near its boundary on any track that shares the boundary
    /// with another track. The plain merge is exact on such systems.
    pub fn is_clear(&self) -> bool {
        self.tracks.iter().enumerate().all(|(i, t)| {
            let m = self
                .tracks
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, o)| o.length.min(t.length))
                .max();
            match m {
                None => true,
                Some(m) => t.ends().iter().all(|&e| !in_window(e, t.track_len, m)),
            }
        })
    }
}

/// Tracks read directly off the arc diagram of `T[n]`.
pub fn read_tracks(tn: &Tableau) -> Result<TrackSystem> {
    let rd = read_runs(tn)?;
    let (n, dots) = two_row_dots(tn)?;
    tracks_from_runs(n, &dots, &rd)
}

/// No arc wraps past `n` and the tracks read off the arc diagram are valid.
/// Away from such tableaux the direct reading can disagree with the dynamics.
pub fn is_settled(tn: &Tableau) -> bool {
    let Ok(diag) = build_arc_diagram(tn) else { return false };
    diag.k.is_none() && read_tracks(tn).is_ok_and(|ts| ts.check().is_ok())
}

/// The nearest settled tableau at or before `tn` in its orbit, with the
/// number of promotions leading from it to `tn`.
pub fn anchor(tn: &Tableau) -> Result<Option<(Tableau, u32)>> {
    two_row_dots(tn)?;
    let mut cur = tn.clone();
    let mut steps = 0;
    loop {
        if is_settled(&cur) {
            return Ok(Some((cur, steps)));
        }
        cur = demote(&cur);
        steps += 1;
        if &cur == tn {
            return Ok(None);
        }
    }
}

fn overflows(tn: &Tableau) -> bool {
    matches!(read_tracks(tn), Err(Error::TrackCapacity { .. }))
}

/// Where the runs of `tn` are read off, with the number of promotions from
/// there to `tn`: the [`anchor`] if there is one, else the least member of the
/// orbit whose direct reading overflows a track. Every orbit without a settled
/// member has such a member, so orbits lying outside all track families are
/// labelled by one out-of-range class.
pub(crate) fn reference(tn: &Tableau) -> Result<(Tableau, u32)> {
    if let Some(a) = anchor(tn)? {
        return Ok(a);
    }
    let mut best: Option<(Tableau, u32)> = None;
    let mut cur = tn.clone();
    let mut steps = 0;
    loop {
        if overflows(&cur) && best.as_ref().is_none_or(|(b, _)| &cur < b) {
            best = Some((cur.clone(), steps));
        }
        cur = demote(&cur);
        steps += 1;
        if &cur == tn {
            break;
        }
    }
    Ok(best.unwrap_or((tn.clone(), 0)))
}

/// The second-row entry promoted into the first row by the step `tn -> next`.
pub(crate) fn promoted_dot(tn: &Tableau, next: &Tableau) -> Option<u32> {
    let n = tn.size() as u32;
    let after = &next.rows()[1];
    if after.last() != Some(&n) {
        return None;
    }
    tn.rows()[1].iter().copied().find(|&x| after.binary_search(&(x - 1)).is_err())
}

/// Positions and gaps of a two-row `T[n]`: read off the arc diagram at the
/// nearest settled tableau before it, then carried forward by [`rotate_tracks`].
pub fn tableau_to_tracks(tn: &Tableau) -> Result<TrackSystem> {
    match anchor(tn)? {
        Some((a, steps)) => {
            let mut ts = read_tracks(&a)?;
            for _ in 0..steps {
                ts = rotate_tracks(&ts);
            }
            Ok(ts)
        }
        None => {
            let (n, dots) = two_row_dots(tn)?;
            let ts = tracks_from_runs(n, &dots, &classify(tn)?)?;
            ts.check()?;
            Ok(ts)
        }
    }
}

pub(crate) fn tracks_from_runs(n: u32, dots: &[u32], rd: &RunDecomposition) -> Result<TrackSystem> {
    let nl = track_lengths(n as i64, &rd.lengths, &rd.mults);
    for (i, &ni) in nl.iter().enumerate() {
        let need = 2 * rd.mults[i] as i64 * rd.lengths[i] as i64;
        if ni < need {
            return Err(Error::TrackCapacity { track: i, track_len: ni, needed: need });
        }
    }
    let nn = n as usize;
    let mut is_dot = vec![false; nn + 1];
    for &d in dots {
        is_dot[d as usize] = true;
    }
    let mut tracks = Vec::with_capacity(rd.lengths.len());
    for (i, &ell) in rd.lengths.iter().enumerate() {
        let mut skip = vec![false; nn + 1];
        for run in rd.runs.iter().filter(|r| r.length != ell) {
            let m = ell.min(run.length) as usize;
            let lj = run.length as usize;
            for &x in &run.rainbow[lj - m..lj + m] {
                skip[x as usize] = true;
            }
        }
        let mut extra = 0;
        for x in 1..=nn {
            if extra == ell {
                break;
            }
            if !skip[x] && !is_dot[x] {
                skip[x] = true;
                extra += 1;
            }
        }
        let mut pos = vec![0u32; nn + 1];
        let mut c = 0;
        for x in 1..=nn {
            if !skip[x] {
                c += 1;
                pos[x] = c;
            }
        }
        let ni = nl[i] as u32;
        if c != ni {
            return Err(Error::InvariantViolated(format!("track {i} numbered {c} of {ni} positions")));
        }
        let mut starts = Vec::new();
        for run in rd.runs.iter().filter(|r| r.length == ell) {
            let ps: Vec<u32> = run.entries.iter().map(|&e| pos[e as usize]).collect();
            if ps.contains(&0) {
                return Err(Error::InvariantViolated(format!("dot of run {:?} skipped", run.entries)));
            }
            let first = ps
                .iter()
                .copied()
                .find(|&q| !ps.contains(&wrap(q as i64 - 1, ni)))
                .ok_or_else(|| Error::InvariantViolated("run fills its track".into()))?;
            let consecutive = (0..ell).all(|t| ps.contains(&wrap(first as i64 + t as i64, ni)));
            if !consecutive {
                return Err(Error::InvariantViolated(format!(
                    "run {:?} not consecutive on track {i}",
                    run.entries
                )));
            }
            starts.push(first);
        }
        starts.sort_unstable();
        let r = starts.len();
        let gaps = (0..r)
            .map(|a| {
                if r == 1 {
                    ni
                } else {
                    (starts[(a + 1) % r] as i64 - starts[a] as i64).rem_euclid(ni as i64) as u32
                }
            })
            .collect();
        let t = Track { length: ell, mult: rd.mults[i], track_len: ni, pos: starts[0], gaps };
        tracks.push(t.normalized());
    }
    Ok(TrackSystem { n, tracks })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Space,
    Dot,
    End,
}

/// Merge the tracks back into a tableau `T[n]`. Systems with a run near the
/// shared boundary are first rotated to a clear one, merged there, and the
/// result is taken back by inverse promotion.
pub fn tracks_to_tableau(ts: &TrackSystem) -> Result<Tableau> {
    ts.check()?;
    let start = ts.normalized();
    let mut cur = ts.clone();
    let mut steps = 0;
    while !cur.is_clear() {
        cur = rotate_tracks(&cur);
        steps += 1;
        if cur.normalized() == start {
            return merge(ts);
        }
    }
    let mut t = merge(&cur)?;
    for _ in 0..steps {
        t = demote(&t);
    }
    Ok(t)
}

/// The merge itself, exact on clear systems.
pub fn merge(ts: &TrackSystem) -> Result<Tableau> {
    ts.check()?;
    let n = ts.n as usize;
    let d = ts.tracks.len();
    let base: Vec<Vec<Cell>> = ts.tracks.iter().map(padded_track).collect();
    let mut front = vec![0usize; d];
    for _ in 0..=2 * d + 2 {
        let (lines, wanted) = merge_pass(ts, &base, &front);
        if wanted == front {
            return finish(ts, n, &lines);
        }
        front = wanted;
    }
    Err(Error::InvariantViolated("boundary insertions did not settle".into()))
}

/// The track as cells with its `l_i` extra spaces at the front.
fn padded_track(t: &Track) -> Vec<Cell> {
    let ni = t.track_len as usize;
    let mut cells = vec![Cell::Space; ni];
    for s in t.starts() {
        for o in 0..t.length {
            let p = wrap(s as i64 + o as i64, t.track_len) as usize;
            cells[p - 1] = if o + 1 == t.length { Cell::End } else { Cell::Dot };
        }
    }
    let lead = cells.iter().take_while(|c| **c != Cell::Space).count().min(t.length as usize);
    let lead = if lead == ni { 0 } else { lead };
    let mut out = Vec::with_capacity(ni + t.length as usize);
    out.extend(std::iter::repeat_n(Cell::Space, lead));
    out.extend_from_slice(&cells[..lead]);
    out.extend(std::iter::repeat_n(Cell::Space, t.length as usize - lead));
    out.extend_from_slice(&cells[lead..]);
    out
}

fn merge_pass(ts: &TrackSystem, base: &[Vec<Cell>], front: &[usize]) -> (Vec<Vec<Cell>>, Vec<usize>) {
    let n = ts.n as i64;
    let d = base.len();
    let mut lines: Vec<Vec<Cell>> = base
        .iter()
        .zip(front)
        .map(|(b, &f)| {
            let mut v = vec![Cell::Space; f];
            v.extend_from_slice(b);
            v
        })
        .collect();
    let mut tail = vec![0usize; d];
    let mut wanted = vec![0usize; d];
    let mut k = 1i64;
    while k <= n {
        for i in 0..d {
            if lines[i].get(k as usize - 1) != Some(&Cell::End) {
                continue;
            }
            lines[i][k as usize - 1] = Cell::Dot;
            for j in 0..d {
                if j == i {
                    continue;
                }
                let m = ts.tracks[i].length.min(ts.tracks[j].length) as i64;
                let lo = k - m + 1;
                let hi = k + m;
                let mut count = 2 * m;
                let mut at = lo - 1;
                if lo < 1 {
                    tail[j] += (1 - lo) as usize;
                    count -= 1 - lo;
                    at = 0;
                }
                if hi > n {
                    wanted[j] += (hi - n) as usize;
                    count -= hi - n;
                }
                let at = (at as usize).min(lines[j].len());
                lines[j].splice(at..at, std::iter::repeat_n(Cell::Space, count as usize));
            }
        }
        k += 1;
    }
    for (line, &t) in lines.iter_mut().zip(&tail) {
        line.extend(std::iter::repeat_n(Cell::Space, t));
    }
    (lines, wanted)
}

fn finish(ts: &TrackSystem, n: usize, lines: &[Vec<Cell>]) -> Result<Tableau> {
    let mut dots = Vec::new();
    for x in 0..n {
        let hits = lines.iter().filter(|l| l.get(x).is_some_and(|c| *c != Cell::Space)).count();
        if hits > 1 {
            return Err(Error::InvariantViolated(format!("two tracks put a dot at {}", x + 1)));
        }
        if hits == 1 {
            dots.push(x as u32 + 1);
        }
    }
    if let Some((i, l)) = lines.iter().enumerate().find(|(_, l)| l.len() != n) {
        return Err(Error::InvariantViolated(format!("track {i} merged to length {}", l.len())));
    }
    let expected: u32 = ts.tracks.iter().map(|t| t.length * t.mult).sum();
    if dots.len() as u32 != expected || dots.is_empty() {
        return Err(Error::InvariantViolated("dot count mismatch after merge".into()));
    }
    Tableau::validate(vec![dots])
        .and_then(|t| t.extend_first_row(ts.n))
        .map_err(|e| Error::InvariantViolated(format!("merge is not an SYT: {e}")))
}

/// One promotion step on the tracks: every track moves one position toward
/// its boundary unless a run of another track is passing the boundary region.
/// When runs of two tracks are in the region together, the shorter run goes
/// first and the longer one waits.
pub fn rotate_tracks(ts: &TrackSystem) -> TrackSystem {
    let ends: Vec<Vec<u32>> = ts.tracks.iter().map(Track::ends).collect();
    let near = |i: usize, m: u32| ends[i].iter().any(|&e| in_window(e, ts.tracks[i].track_len, m));
    let tracks = ts
        .tracks
        .iter()
        .enumerate()
        .map(|(j, tj)| {
            let paused = ts.tracks.iter().enumerate().any(|(i, ti)| {
                i != j && {
                    let m = ti.length.min(tj.length);
                    near(i, m) && !(tj.length < ti.length && near(j, m))
                }
            });
            let mut t = tj.clone();
            if !paused {
                t.pos = wrap(t.pos as i64 - 1, t.track_len);
            }
            t.normalized()
        })
        .collect();
    TrackSystem { n: ts.n, tracks }
}
