//! The promotion operator and orbit bookkeeping.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tableau::{Partition, Tableau};

/// One promotion step together with the cells the hole passed through
/// (starting at `(0, 0)` and ending at the box that receives the maximum).
pub fn promote_with_path(t: &Tableau) -> (Tableau, Vec<(usize, usize)>) {
    let mut rows: Vec<Vec<u32>> = t.rows().to_vec();
    let sorted = t.sorted_entries();
    let (mut i, mut j) = (0usize, 0usize);
    let mut path = vec![(0, 0)];
    loop {
        let right = rows[i].get(j + 1).copied();
        let below = rows.get(i + 1).and_then(|r| r.get(j)).copied();
        let (ni, nj) = match (right, below) {
            (None, None) => break,
            (Some(_), None) => (i, j + 1),
            (None, Some(_)) => (i + 1, j),
            (Some(a), Some(b)) => {
                if a < b {
                    (i, j + 1)
                } else {
                    (i + 1, j)
                }
            }
        };
        rows[i][j] = rows[ni][nj];
        i = ni;
        j = nj;
        path.push((i, j));
    }
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            let k = sorted.binary_search(x).unwrap();
            if k > 0 {
                *x = sorted[k - 1];
            }
        }
    }
    rows[i][j] = *sorted.last().unwrap();
    (Tableau::from_rows_unchecked(rows), path)
}

/// One promotion step.
pub fn promote(t: &Tableau) -> Tableau {
    promote_with_path(t).0
}

/// Inverse of [`promote`]: remove the largest entry, slide the hole back to
/// `(0, 0)` taking the larger of the left and upper neighbours, relabel up.
pub fn demote(t: &Tableau) -> Tableau {
    let mut rows: Vec<Vec<u32>> = t.rows().to_vec();
    let sorted = t.sorted_entries();
    let Some(&top) = sorted.last() else { return t.clone() };
    let (mut i, mut j) = rows
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.iter().position(|&x| x == top).map(|j| (i, j)))
        .expect("largest entry is present");
    while (i, j) != (0, 0) {
        let left = if j > 0 { Some(rows[i][j - 1]) } else { None };
        let up = if i > 0 { Some(rows[i - 1][j]) } else { None };
        let (ni, nj) = match (left, up) {
            (Some(a), Some(b)) if a > b => (i, j - 1),
            (Some(_), None) => (i, j - 1),
            _ => (i - 1, j),
        };
        rows[i][j] = rows[ni][nj];
        i = ni;
        j = nj;
    }
    for row in rows.iter_mut() {
        for x in row.iter_mut() {
            let k = sorted.binary_search(x).unwrap();
            if k + 1 < sorted.len() {
                *x = sorted[k + 1];
            }
        }
    }
    rows[0][0] = sorted[0];
    Tableau::from_rows_unchecked(rows)
}

/// Least `p >= 1` with `promote^p(t) = t`.
pub fn period(t: &Tableau) -> u64 {
    let mut cur = promote(t);
    let mut p = 1;
    while &cur != t {
        cur = promote(&cur);
        p += 1;
    }
    p
}

/// `promote^k(t)`.
pub fn promote_pow(t: &Tableau, k: u64) -> Tableau {
    let mut cur = t.clone();
    for _ in 0..k {
        cur = promote(&cur);
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub period: u64,
    pub canonical_rep: Tableau,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Tableau>>,
}

/// The orbit of `t`, listed from `t` onward.
pub fn orbit(t: &Tableau) -> OrbitReport {
    let mut members = vec![t.clone()];
    let mut cur = promote(t);
    while &cur != t {
        let next = promote(&cur);
        members.push(cur);
        cur = next;
    }
    let canonical_rep = members.iter().min().unwrap().clone();
    OrbitReport { period: members.len() as u64, canonical_rep, members: Some(members) }
}

/// Split a promotion-closed set into orbits, sorted by canonical representative.
/// Members are listed starting from the canonical representative.
pub fn orbit_partition(set: &[Tableau]) -> Result<Vec<OrbitReport>> {
    let index: HashMap<&Tableau, usize> = set.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut seen = vec![false; set.len()];
    let mut out = Vec::new();
    for (start, t) in set.iter().enumerate() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut members = vec![t.clone()];
        let mut cur = promote(t);
        while &cur != t {
            match index.get(&cur) {
                Some(&k) => seen[k] = true,
                None => return Err(Error::NotClosed { witness: cur.canonical() }),
            }
            let next = promote(&cur);
            members.push(cur);
            cur = next;
        }
        let (pos, _) = members.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).unwrap();
        members.rotate_left(pos);
        out.push(OrbitReport {
            period: members.len() as u64,
            canonical_rep: members[0].clone(),
            members: Some(members),
        });
    }
    out.sort_by(|a, b| a.canonical_rep.cmp(&b.canonical_rep));
    Ok(out)
}

/// Orbit lengths of a closed set, without keeping members.
pub fn orbit_lengths(set: &[Tableau]) -> Result<Vec<u64>> {
    Ok(orbit_partition(set)?.into_iter().map(|o| o.period).collect())
}

/// Number of elements fixed by `promote^k`.
pub fn count_fixed(set: &[Tableau], k: u64) -> Result<u64> {
    Ok(orbit_lengths(set)?.into_iter().filter(|&p| k.is_multiple_of(p)).sum())
}

/// Same count from a precomputed list of orbit lengths.
pub fn count_fixed_from_lengths(lengths: &[u64], k: u64) -> u64 {
    lengths.iter().filter(|&&p| k.is_multiple_of(p)).sum()
}

pub fn lcm_of(lengths: impl IntoIterator<Item = u64>) -> BigUint {
    lengths.into_iter().fold(BigUint::one(), |acc, p| acc.lcm(&BigUint::from(p)))
}

/// Orbit-length multiset of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub shape: Partition,
    pub orbit_lengths: BTreeMap<u64, u64>,
    pub lcm: String,
}

impl Spectrum {
    pub fn from_lengths(shape: Partition, lengths: &[u64]) -> Self {
        let mut orbit_lengths = BTreeMap::new();
        for &p in lengths {
            *orbit_lengths.entry(p).or_insert(0) += 1;
        }
        Spectrum { shape, orbit_lengths, lcm: lcm_of(lengths.iter().copied()).to_string() }
    }

    pub fn total(&self) -> u64 {
        self.orbit_lengths.iter().map(|(l, m)| l * m).sum()
    }
}
