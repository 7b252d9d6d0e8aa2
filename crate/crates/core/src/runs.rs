//! Arc diagrams and run decompositions of two-row tableaux `T[n]`.
//!
//! The entries of the second row are *dots* on the line `1..=n`, everything
//! else is a *space*. Dots are matched to spaces by a noncrossing pairing,
//! possibly after moving a prefix `1..=j` behind `n`; nested blocks of arcs
//! (rainbows) then determine which dots travel together as runs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::promotion::promote;
use crate::tableau::Tableau;
use crate::tracks::{promoted_dot, reference};

/// Completed dot/space pairing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDiagram {
    pub n: u32,
    pub dots: Vec<u32>,
    /// `(dot, space)` pairs.
    pub pairs: Vec<(u32, u32)>,
    /// Length of the prefix moved behind `n` (0 if none).
    pub j: u32,
    /// Smallest dot left unpaired by the first greedy pass.
    pub k: Option<u32>,
    /// The numbers `1..=n` in rearranged order.
    #[serde(skip)]
    pub line: Vec<u32>,
}

impl ArcDiagram {
    pub fn is_dot(&self, x: u32) -> bool {
        self.dots.binary_search(&x).is_ok()
    }

    /// Partner of every number (0 when unpaired), indexed by number.
    pub fn partner_table(&self) -> Vec<u32> {
        let mut partner = vec![0u32; self.n as usize + 1];
        for &(d, s) in &self.pairs {
            partner[d as usize] = s;
            partner[s as usize] = d;
        }
        partner
    }
}

/// Bottom row of a two-row `T[n]` whose first row is strictly longer.
pub fn two_row_dots(tn: &Tableau) -> Result<(u32, Vec<u32>)> {
    let rows = tn.rows();
    if rows.len() != 2 || rows[0].len() <= rows[1].len() || !tn.is_standard() {
        return Err(Error::NotTwoRow);
    }
    Ok((tn.size() as u32, rows[1].clone()))
}

/// Run the four-step pairing procedure on `T[n]`.
pub fn build_arc_diagram(tn: &Tableau) -> Result<ArcDiagram> {
    let (n, dots) = two_row_dots(tn)?;
    Ok(arc_diagram_from_dots(n, &dots))
}

pub(crate) fn arc_diagram_from_dots(n: u32, dots: &[u32]) -> ArcDiagram {
    let nn = n as usize;
    let mut is_dot = vec![false; nn + 1];
    for &d in dots {
        is_dot[d as usize] = true;
    }
    let mut partner = vec![0u32; nn + 1];
    // Greedy pass: a dot pairs with the next unpaired number if it is a space.
    let mut stack: Vec<u32> = Vec::new();
    for x in 1..=n {
        if is_dot[x as usize] {
            stack.push(x);
        } else if let Some(d) = stack.pop() {
            partner[d as usize] = x;
            partner[x as usize] = d;
        }
    }
    if stack.is_empty() {
        let mut pairs: Vec<(u32, u32)> =
            dots.iter().map(|&d| (d, partner[d as usize])).collect();
        pairs.sort_unstable();
        return ArcDiagram { n, dots: dots.to_vec(), pairs, j: 0, k: None, line: (1..=n).collect() };
    }
    let k = stack[0];
    let mut balance: i64 = (k..=n).map(|x| if is_dot[x as usize] { 1 } else { -1 }).sum();
    let mut j = 0;
    while balance != 0 {
        j += 1;
        balance += if is_dot[j as usize] { 1 } else { -1 };
    }
    for x in 1..=j {
        let p = partner[x as usize];
        if p != 0 {
            partner[p as usize] = 0;
            partner[x as usize] = 0;
        }
    }
    // Inside the moved prefix, dots pair with the closest unpaired space before them.
    let mut open: Vec<u32> = Vec::new();
    for x in 1..=j {
        if is_dot[x as usize] {
            let s = open.pop().expect("prefix pairing cannot fail on an SYT");
            partner[x as usize] = s;
            partner[s as usize] = x;
        } else {
            open.push(x);
        }
    }
    // Remaining dots of k..n pair with remaining prefix spaces, outermost last.
    let mut tail_dots: Vec<u32> =
        (k..=n).filter(|&x| is_dot[x as usize] && partner[x as usize] == 0).collect();
    let mut free: Vec<u32> = (1..=j).filter(|&x| partner[x as usize] == 0).collect();
    free.reverse();
    while let Some(d) = tail_dots.pop() {
        let s = free.pop().expect("balanced prefix");
        partner[d as usize] = s;
        partner[s as usize] = d;
    }
    let mut pairs: Vec<(u32, u32)> = dots.iter().map(|&d| (d, partner[d as usize])).collect();
    pairs.sort_unstable();
    let line = (j + 1..=n).chain(1..=j).collect();
    ArcDiagram { n, dots: dots.to_vec(), pairs, j, k: Some(k), line }
}

/// One run: its dots and the `2 * length` numbers of its rainbow, both in line order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Run {
    pub length: u32,
    pub entries: Vec<u32>,
    #[serde(skip)]
    pub rainbow: Vec<u32>,
}

/// Distinct run lengths (decreasing), their multiplicities, and the runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunDecomposition {
    pub lengths: Vec<u32>,
    pub mults: Vec<u32>,
    pub runs: Vec<Run>,
}

impl RunDecomposition {
    /// `(length class, index within class)` for every dot.
    pub fn assignment(&self) -> BTreeMap<u32, (usize, usize)> {
        let mut out = BTreeMap::new();
        let mut seen = vec![0usize; self.lengths.len()];
        for run in &self.runs {
            let class = self.lengths.iter().position(|&l| l == run.length).unwrap();
            for &e in &run.entries {
                out.insert(e, (class, seen[class]));
            }
            seen[class] += 1;
        }
        out
    }

    /// Runs of the given class, in line order.
    pub fn class_runs(&self, class: usize) -> impl Iterator<Item = &Run> {
        let l = self.lengths[class];
        self.runs.iter().filter(move |r| r.length == l)
    }
}

/// Read the runs off a completed arc diagram by repeated rainbow removal.
pub fn extract_runs(diag: &ArcDiagram) -> RunDecomposition {
    let partner = diag.partner_table();
    let mut line: Vec<u32> = diag.line.clone();
    // (line index of first number, run)
    let mut found: Vec<(usize, Run)> = Vec::new();
    let line_index: Vec<usize> = {
        let mut idx = vec![0usize; diag.n as usize + 1];
        for (i, &x) in diag.line.iter().enumerate() {
            idx[x as usize] = i;
        }
        idx
    };
    let make_run = |nums: &[u32]| -> (usize, Run) {
        let entries: Vec<u32> = nums.iter().copied().filter(|&x| diag.is_dot(x)).collect();
        (
            line_index[nums[0] as usize],
            Run { length: entries.len() as u32, entries, rainbow: nums.to_vec() },
        )
    };
    loop {
        let rainbows = find_rainbows(&line, &partner);
        if rainbows.is_empty() {
            break;
        }
        let mut remove = vec![false; rainbows.len()];
        let mut any = false;
        let mut a = 0;
        while a < rainbows.len() {
            let mut b = a;
            while b + 1 < rainbows.len() && rainbows[b + 1].0 == rainbows[b].1 + 1 {
                b += 1;
            }
            if b > a {
                let size = |t: &(usize, usize)| t.1 - t.0;
                let keep = (a..=b).fold(a, |best, c| {
                    if size(&rainbows[c]) > size(&rainbows[best]) { c } else { best }
                });
                for (c, flag) in remove.iter_mut().enumerate().take(b + 1).skip(a) {
                    if c != keep {
                        *flag = true;
                        any = true;
                    }
                }
            }
            a = b + 1;
        }
        if !any {
            for &(s, e) in &rainbows {
                found.push(make_run(&line[s..=e]));
            }
            let covered: usize = rainbows.iter().map(|&(s, e)| e - s + 1).sum();
            debug_assert_eq!(
                line.iter().filter(|&&x| partner[x as usize] != 0).count(),
                covered,
                "every paired number lies in a final rainbow"
            );
            break;
        }
        let mut drop = vec![false; line.len()];
        for (idx, &(s, e)) in rainbows.iter().enumerate() {
            if remove[idx] {
                found.push(make_run(&line[s..=e]));
                for flag in drop.iter_mut().take(e + 1).skip(s) {
                    *flag = true;
                }
            }
        }
        line = line.into_iter().zip(drop).filter(|(_, d)| !d).map(|(x, _)| x).collect();
    }
    found.sort_by(|a, b| b.1.length.cmp(&a.1.length).then(a.0.cmp(&b.0)));
    let mut lengths: Vec<u32> = Vec::new();
    let mut mults: Vec<u32> = Vec::new();
    for (_, r) in &found {
        if lengths.last() == Some(&r.length) {
            *mults.last_mut().unwrap() += 1;
        } else {
            lengths.push(r.length);
            mults.push(1);
        }
    }
    RunDecomposition { lengths, mults, runs: found.into_iter().map(|(_, r)| r).collect() }
}

/// Maximal rainbows on the current line as inclusive index ranges, left to right.
fn find_rainbows(line: &[u32], partner: &[u32]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..line.len().saturating_sub(1) {
        if partner[line[i] as usize] != line[i + 1] {
            continue;
        }
        let (mut s, mut e) = (i, i + 1);
        while s > 0 && e + 1 < line.len() && partner[line[s - 1] as usize] == line[e + 1] {
            s -= 1;
            e += 1;
        }
        out.push((s, e));
    }
    out
}

/// Runs read directly off the arc diagram of `T[n]`.
pub fn read_runs(tn: &Tableau) -> Result<RunDecomposition> {
    Ok(extract_runs(&build_arc_diagram(tn)?))
}

/// Run decomposition of a two-row `T[n]`. Read off the arc diagram at the
/// nearest settled tableau before it in its orbit (see
/// [`is_settled`](crate::tracks::is_settled)), then carried forward by
/// following each dot through the promotions in between. Orbits without a
/// settled member are read at a fixed member instead, chosen so that the
/// resulting class lies outside every track family.
///
/// When the carried runs agree with the direct reading of `tn`, the direct
/// reading is returned. Otherwise runs are listed as in [`extract_runs`] but
/// carry no rainbow.
pub fn classify(tn: &Tableau) -> Result<RunDecomposition> {
    let (mut cur, steps) = reference(tn)?;
    let mut rd = read_runs(&cur)?;
    if steps == 0 {
        return Ok(rd);
    }
    let n = tn.size() as u32;
    for _ in 0..steps {
        let next = promote(&cur);
        let hop = promoted_dot(&cur, &next);
        for run in rd.runs.iter_mut() {
            for e in run.entries.iter_mut() {
                *e = if Some(*e) == hop { n } else { *e - 1 };
            }
        }
        cur = next;
    }
    let diag = build_arc_diagram(tn)?;
    let direct = extract_runs(&diag);
    let key = |d: &RunDecomposition| {
        let mut v: Vec<Vec<u32>> = d.runs.iter().map(|r| sorted(&r.entries)).collect();
        v.sort();
        v
    };
    if key(&direct) == key(&rd) {
        return Ok(direct);
    }
    let mut index = vec![0usize; n as usize + 1];
    for (i, &x) in diag.line.iter().enumerate() {
        index[x as usize] = i;
    }
    for run in rd.runs.iter_mut() {
        run.entries.sort_by_key(|&e| index[e as usize]);
        run.rainbow.clear();
    }
    rd.runs.sort_by(|a, b| b.length.cmp(&a.length).then(index[a.entries[0] as usize].cmp(&index[b.entries[0] as usize])));
    Ok(rd)
}

fn sorted(v: &[u32]) -> Vec<u32> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

/// Decomposition read straight from the dot set.
pub fn read_dots(n: u32, dots: &[u32]) -> RunDecomposition {
    extract_runs(&arc_diagram_from_dots(n, dots))
}

/// Run starts for `T(n, l, r)` membership, or `None` if the dots do not split
/// into runs of exactly `l` consecutive numbers.
fn single_length_starts(n: u32, dots: &[u32], ell: u32) -> Option<Vec<u32>> {
    let mut blocks: Vec<(u32, u32)> = Vec::new();
    for &d in dots {
        match blocks.last_mut() {
            Some(b) if b.1 + 1 == d => b.1 = d,
            _ => blocks.push((d, d)),
        }
    }
    let len = |b: &(u32, u32)| b.1 - b.0 + 1;
    let mut starts = Vec::new();
    if blocks.len() >= 2 {
        let last = *blocks.last().unwrap();
        let first = blocks[0];
        if last.1 == n && len(&last) < ell {
            let k = ell - len(&last);
            if first != (k + 1, 2 * k) {
                return None;
            }
            starts.push(n - ell + k + 1);
            blocks.pop();
            blocks.remove(0);
        }
    }
    for b in &blocks {
        if len(b) != ell {
            return None;
        }
        starts.push(b.0);
    }
    starts.sort_unstable();
    Some(starts)
}

/// Gaps between run starts modulo `n - l`, in start order.
pub fn single_length_gaps(n: u32, dots: &[u32], ell: u32) -> Option<Vec<u32>> {
    let starts = single_length_starts(n, dots, ell)?;
    let m = (n - ell) as i64;
    let r = starts.len();
    Some(
        (0..r)
            .map(|i| {
                if r == 1 {
                    m as u32
                } else {
                    (starts[(i + 1) % r] as i64 - starts[i] as i64).rem_euclid(m) as u32
                }
            })
            .collect(),
    )
}

/// Membership in `T(n, l, r)`: `r` runs of exactly `l` consecutive numbers
/// whose starts are at least `2l` apart modulo `n - l`.
pub fn in_single_length_family(tn: &Tableau, ell: u32, r: u32) -> Result<bool> {
    let (n, dots) = two_row_dots(tn)?;
    if ell == 0 || r == 0 || n < (2 * r + 1) * ell {
        return Err(Error::PreconditionViolated(format!(
            "need n >= (2r+1)l, got n = {n}, l = {ell}, r = {r}"
        )));
    }
    if dots.len() as u32 != r * ell {
        return Ok(false);
    }
    Ok(match single_length_gaps(n, &dots, ell) {
        Some(g) => g.len() as u32 == r && g.iter().all(|&x| x >= 2 * ell),
        None => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tn(n: u32, dots: &[u32]) -> Tableau {
        Tableau::validate(vec![dots.to_vec()]).unwrap().extend_first_row(n).unwrap()
    }

    #[test]
    fn worked_example_pairing() {
        let t = tn(20, &[2, 9, 10, 12, 13, 17, 18, 20]);
        let d = build_arc_diagram(&t).unwrap();
        assert_eq!(d.j, 4);
        assert_eq!(d.k, Some(17));
        let p = d.partner_table();
        assert_eq!(p[2], 1);
        assert_eq!(p[20], 3);
        assert_eq!(p[17], 4);
        assert_eq!(p[10], 11);
        assert_eq!(p[9], 16);
    }

    #[test]
    fn worked_example_runs() {
        let rd = classify(&tn(20, &[2, 9, 10, 12, 13, 17, 18, 20])).unwrap();
        assert_eq!(rd.lengths, vec![3, 1]);
        assert_eq!(rd.mults, vec![2, 2]);
        let entries: Vec<Vec<u32>> = rd.runs.iter().map(|r| r.entries.clone()).collect();
        assert_eq!(entries, vec![vec![9, 12, 13], vec![17, 20, 2], vec![10], vec![18]]);
        assert_eq!(rd.runs[1].rainbow, vec![17, 20, 1, 2, 3, 4]);
    }

    #[test]
    fn isolated_dot() {
        let rd = classify(&tn(9, &[5])).unwrap();
        assert_eq!((rd.lengths, rd.mults), (vec![1], vec![1]));
        let rd = classify(&tn(4, &[4])).unwrap();
        assert_eq!((rd.lengths, rd.mults), (vec![1], vec![1]));
    }

    #[test]
    fn adjacent_rainbows_smaller_removed() {
        // dots 4 | 6,7,8: rainbow (4,5) sits next to (6..11); the small one goes first.
        let rd = classify(&tn(16, &[4, 6, 7, 8])).unwrap();
        assert_eq!((rd.lengths, rd.mults), (vec![3, 1], vec![1, 1]));
        assert_eq!(rd.runs[1].entries, vec![4]);
        assert_eq!(rd.runs[0].entries, vec![6, 7, 8]);
    }

    #[test]
    fn three_rows_rejected() {
        let t = Tableau::validate(vec![vec![1, 2], vec![3], vec![4]]).unwrap();
        assert_eq!(build_arc_diagram(&t), Err(Error::NotTwoRow));
    }

    #[test]
    fn single_length_membership() {
        assert!(in_single_length_family(&tn(9, &[3, 4]), 2, 1).unwrap());
        assert!(!in_single_length_family(&tn(20, &[2, 9, 10, 12, 13, 17, 18, 20]), 3, 2).unwrap());
        // wraparound run {2} ∪ {n}
        assert!(in_single_length_family(&tn(10, &[2, 10]), 2, 1).unwrap());
        assert!(matches!(
            in_single_length_family(&tn(5, &[3, 4]), 2, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
