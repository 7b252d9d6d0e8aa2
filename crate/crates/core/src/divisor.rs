//! Orbit-length divisors: the generic case, the position-count polynomial
//! `P_d`, and a brute-force position counter used as its oracle.

use std::collections::HashMap;
use std::ops::{Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::promotion::period;
use crate::tableau::Tableau;
use crate::tracks::{Track, TrackSystem};
use crate::NPoly;

pub use crate::tracks::track_lengths;

/// Entries of `t` pairwise differ by at least 2, and `2` and `n` are not both
/// entries. Fails when `t` cannot be extended to `T[n]`.
pub fn is_generic(t: &Tableau, n: u32) -> Result<bool> {
    t.extend_first_row(n)?;
    let e = t.sorted_entries();
    let spaced = e.windows(2).all(|w| w[1] - w[0] >= 2);
    let both_ends = e.first() == Some(&2) && e.last() == Some(&n);
    Ok(spaced && !both_ends)
}

/// Largest `d | |T|` such that the cyclic gap sequence of the entries of `t`
/// modulo `n - 1` is invariant under rotation by `|T| / d`.
pub fn gap_symmetry(t: &Tableau, n: u32) -> u32 {
    let e = t.sorted_entries();
    let k = e.len();
    let gaps: Vec<u32> = (0..k)
        .map(|i| if i + 1 < k { e[i + 1] - e[i] } else { e[0] + (n - 1) - e[k - 1] })
        .collect();
    (1..=k)
        .rev()
        .filter(|d| k.is_multiple_of(*d))
        .find(|&d| {
            let step = k / d;
            (0..k).all(|i| gaps[i] == gaps[(i + step) % k])
        })
        .unwrap_or(1) as u32
}

/// Divisor prediction for a generic `T[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericDivisor {
    /// `lcm(|T|, pr(T)) / |T| * (n - 1)`.
    pub bound: BigUint,
    /// `lcm(|T| / d*, pr(T)) / |T| * (n - 1)`.
    pub refined: BigUint,
    /// Cyclic symmetry `d*` of the gap sequence.
    pub symmetry: u32,
    /// `pr(T)`.
    pub inner_period: u64,
}

impl GenericDivisor {
    /// The refined value when `refine` is set, else the plain bound.
    pub fn value(&self, refine: bool) -> &BigUint {
        if refine {
            &self.refined
        } else {
            &self.bound
        }
    }
}

pub fn generic_divisor(t: &Tableau, n: u32) -> Result<GenericDivisor> {
    if !is_generic(t, n)? {
        return Err(Error::NotGeneric(n));
    }
    let k = t.size() as u64;
    let p = period(t);
    let d = gap_symmetry(t, n) as u64;
    let m = BigUint::from(n - 1);
    let bound = BigUint::from(k.lcm(&p) / k) * &m;
    let refined = BigUint::from((k / d).lcm(&p)) * &m / BigUint::from(k);
    Ok(GenericDivisor { bound, refined, symmetry: d as u32, inner_period: p })
}

/// Minimal ring interface shared by the numeric and symbolic evaluators.
trait Ring: Clone + for<'a> Mul<&'a Self, Output = Self> + for<'a> Sub<&'a Self, Output = Self> {
    fn from_int(x: i64) -> Self;
}

impl Ring for BigInt {
    fn from_int(x: i64) -> Self {
        BigInt::from(x)
    }
}

#[derive(Clone)]
struct P(NPoly);

impl Mul<&P> for P {
    type Output = P;
    fn mul(self, o: &P) -> P {
        P(&self.0 * &o.0)
    }
}

impl Sub<&P> for P {
    type Output = P;
    fn sub(self, o: &P) -> P {
        P(&self.0 - &o.0)
    }
}

impl Ring for P {
    fn from_int(x: i64) -> Self {
        P(NPoly::constant(BigInt::from(x)))
    }
}

fn check_vectors(ells: &[u32], rs: &[u32]) -> Result<()> {
    if ells.is_empty() {
        return Err(Error::Domain("empty length vector".into()));
    }
    if ells.len() != rs.len() || rs.contains(&0) {
        return Err(Error::Domain("multiplicities must be positive, one per length".into()));
    }
    if ells.windows(2).any(|w| w[0] <= w[1]) || ells.contains(&0) {
        return Err(Error::Domain("lengths must be positive and strictly decreasing".into()));
    }
    Ok(())
}

/// The recursion for `P_d(n⃗, l⃗, r⃗)` over any ring; `P_0 = 1`.
fn recurse<R: Ring>(nv: &[R], ells: &[i64], rs: &[i64]) -> R {
    let d = nv.len();
    let mut total = nv.iter().fold(R::from_int(1), |acc, x| acc * x);
    for i in 0..d {
        let sub_n: Vec<R> = (0..i).map(|k| nv[k].clone() - &R::from_int(2 * rs[k] * ells[i])).collect();
        let sub_l: Vec<i64> = (0..i).map(|k| ells[k] - ells[i]).collect();
        let inner = recurse(&sub_n, &sub_l, &rs[..i]);
        for j in i + 1..d {
            let mut term = R::from_int(4 * rs[i] * rs[j] * ells[j] * ells[j]) * &inner;
            for k in i + 1..j {
                term = term * &(nv[k].clone() - &R::from_int(2 * rs[k] * ells[k]));
            }
            for x in &nv[j + 1..] {
                term = term * x;
            }
            total = total - &term;
        }
    }
    total
}

fn widen(v: &[u32]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// `P_d` evaluated at explicit track lengths.
pub fn p_d(nv: &[BigInt], ells: &[u32], rs: &[u32]) -> Result<BigInt> {
    check_vectors(ells, rs)?;
    if nv.len() != ells.len() {
        return Err(Error::Domain("need one track length per run length".into()));
    }
    Ok(recurse(nv, &widen(ells), &widen(rs)))
}

/// `P_d` at `n⃗ = track_lengths(n, l⃗, r⃗)`.
pub fn p_d_at(n: i64, ells: &[u32], rs: &[u32]) -> Result<BigInt> {
    let nv: Vec<BigInt> = track_lengths(n, ells, rs).into_iter().map(BigInt::from).collect();
    p_d(&nv, ells, rs)
}

/// `P_d` as a polynomial in `n`, with `n_i = n - c_i` substituted.
pub fn p_d_poly(ells: &[u32], rs: &[u32]) -> Result<NPoly> {
    check_vectors(ells, rs)?;
    let nv: Vec<P> = track_lengths(0, ells, rs)
        .into_iter()
        .map(|c| P(NPoly::linear(BigInt::from(c))))
        .collect();
    Ok(recurse(&nv, &widen(ells), &widen(rs)).0)
}

/// Memoized numeric `P_d(n, l⃗, r⃗)` for repeated sweeps.
#[derive(Debug, Default)]
pub struct PdCache {
    memo: HashMap<(i64, Vec<u32>, Vec<u32>), BigInt>,
}

impl PdCache {
    pub fn get(&mut self, n: i64, ells: &[u32], rs: &[u32]) -> Result<BigInt> {
        let key = (n, ells.to_vec(), rs.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = p_d_at(n, ells, rs)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Count position vectors `p⃗ ∈ ∏ {1..n_i}` whose tracks pass the bottleneck
/// rule, for fixed gap sequences.
pub fn brute_force_positions(nv: &[u32], ells: &[u32], rs: &[u32], gaps: &[Vec<u32>]) -> Result<BigUint> {
    check_vectors(ells, rs).map_err(|e| Error::InvalidGaps(e.to_string()))?;
    if nv.len() != ells.len() || gaps.len() != ells.len() {
        return Err(Error::InvalidGaps("need one gap sequence per track".into()));
    }
    for i in 0..ells.len() {
        let g = &gaps[i];
        if g.len() != rs[i] as usize {
            return Err(Error::InvalidGaps(format!("track {i}: {} gaps for {} runs", g.len(), rs[i])));
        }
        if g.iter().map(|&x| x as u64).sum::<u64>() != nv[i] as u64 {
            return Err(Error::InvalidGaps(format!("track {i}: gaps do not sum to {}", nv[i])));
        }
        if g.iter().any(|&x| x < 2 * ells[i]) {
            return Err(Error::InvalidGaps(format!("track {i}: gap below {}", 2 * ells[i])));
        }
    }
    let base: Vec<Track> = (0..ells.len())
        .map(|i| Track { length: ells[i], mult: rs[i], track_len: nv[i], pos: 1, gaps: gaps[i].clone() })
        .collect();
    let count: u64 = (1..=nv[0])
        .into_par_iter()
        .map(|p0| {
            let mut ts = TrackSystem { n: 0, tracks: base.clone() };
            ts.tracks[0].pos = p0;
            count_rest(&mut ts, 1)
        })
        .sum();
    Ok(BigUint::from(count))
}

fn count_rest(ts: &mut TrackSystem, i: usize) -> u64 {
    if i == ts.tracks.len() {
        return ts.check_bottleneck() as u64;
    }
    let mut c = 0;
    for p in 1..=ts.tracks[i].track_len {
        ts.tracks[i].pos = p;
        c += count_rest(ts, i + 1);
    }
    c
}
