//! Exploratory quasipolynomial fits of `n -> pr(T[n])`.
//!
//! For each trial modulus `m`, every residue class of `n` mod `m` gets the
//! lowest-degree polynomial that interpolates its points from some onset on
//! and is confirmed by at least two held-out points. Nothing here is a proof.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::promotion::period;
use crate::tableau::Tableau;
use crate::NPoly;

/// Held-out points each residue class must reproduce.
pub const HELD_OUT: usize = 2;

/// Fit for one residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassFit {
    pub residue: u32,
    pub degree: usize,
    /// Coefficients of `n^0, n^1, ...` as reduced fractions.
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<BigRational>,
    /// Smallest `n` in the class from which the polynomial matches.
    pub onset: u32,
    pub held_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiFit {
    pub modulus: u32,
    pub degree: usize,
    pub classes: Vec<ClassFit>,
    /// Largest onset over the classes.
    pub onset: u32,
    pub data: Vec<(u32, u64)>,
}

impl QuasiFit {
    /// The class polynomial as an integer [`NPoly`], if every coefficient is integral.
    pub fn class_poly(&self, residue: u32) -> Option<NPoly> {
        let c = self.classes.iter().find(|c| c.residue == residue)?;
        if c.coeffs.iter().any(|x| !x.is_integer()) {
            return None;
        }
        Some(NPoly::new(c.coeffs.iter().map(|x| x.to_integer()).collect()))
    }
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Periods of `T[n]` over `ns`, then [`fit_sequence`].
pub fn fit_quasipolynomial(t: &Tableau, ns: RangeInclusive<u32>, m_max: u32) -> Result<QuasiFit> {
    let data: Vec<(u32, u64)> = ns
        .into_par_iter()
        .map(|n| t.extend_first_row(n).map(|tn| (n, period(&tn))))
        .collect::<Result<_>>()?;
    fit_sequence(&data, m_max)
}

/// Best fit over moduli `1..=m_max`: lowest maximal degree, then smallest modulus.
pub fn fit_sequence(data: &[(u32, u64)], m_max: u32) -> Result<QuasiFit> {
    let mut best: Option<QuasiFit> = None;
    for m in 1..=m_max.max(1) {
        let Some(fit) = fit_modulus(data, m) else { continue };
        if best.as_ref().is_none_or(|b| fit.degree < b.degree) {
            best = Some(fit);
        }
    }
    best.ok_or_else(|| {
        Error::InsufficientData(format!(
            "no modulus up to {m_max} fits {} points with {HELD_OUT} held-out confirmations",
            data.len()
        ))
    })
}

fn fit_modulus(data: &[(u32, u64)], m: u32) -> Option<QuasiFit> {
    let mut classes = Vec::with_capacity(m as usize);
    for res in 0..m {
        let pts: Vec<(BigRational, BigRational)> = data
            .iter()
            .filter(|(n, _)| n % m == res)
            .map(|&(n, y)| (rat(n as i64), rat(y as i64)))
            .collect();
        let ns: Vec<u32> = data.iter().filter(|(n, _)| n % m == res).map(|p| p.0).collect();
        classes.push(fit_class(&pts, &ns, res)?);
    }
    let degree = classes.iter().map(|c| c.degree).max().unwrap_or(0);
    let onset = classes.iter().map(|c| c.onset).max().unwrap_or(0);
    Some(QuasiFit { modulus: m, degree, classes, onset, data: data.to_vec() })
}

fn fit_class(pts: &[(BigRational, BigRational)], ns: &[u32], residue: u32) -> Option<ClassFit> {
    let k = pts.len();
    for degree in 0..k {
        for start in 0..k {
            if k < start + degree + 1 + HELD_OUT {
                break;
            }
            let fit = &pts[start..start + degree + 1];
            let coeffs = interpolate(fit);
            if pts[start + degree + 1..].iter().all(|(x, y)| &eval(&coeffs, x) == y) {
                let coeffs = trim(coeffs);
                let degree = coeffs.len().saturating_sub(1);
                return Some(ClassFit {
                    residue,
                    degree,
                    coeffs,
                    onset: ns[start],
                    held_out: k - start - fit.len(),
                });
            }
        }
    }
    None
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn eval(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.len() > 1 && c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

/// Lagrange interpolation, coefficients low degree first.
fn interpolate(pts: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let k = pts.len();
    let mut out = vec![BigRational::zero(); k];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, b) in basis.iter().enumerate() {
                next[d + 1] += b;
                next[d] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (d, b) in basis.iter().enumerate() {
            out[d] += b * &scale;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_sequence() {
        let data: Vec<(u32, u64)> = (5..12).map(|n| (n, 7)).collect();
        let fit = fit_sequence(&data, 3).unwrap();
        assert_eq!((fit.modulus, fit.degree, fit.onset), (1, 0, 5));
    }

    #[test]
    fn parity_dependent_linear() {
        let data: Vec<(u32, u64)> = (10..30).map(|n| (n, if n % 2 == 0 { n as u64 / 2 } else { n as u64 })).collect();
        let fit = fit_sequence(&data, 4).unwrap();
        assert_eq!((fit.modulus, fit.degree), (2, 1));
        assert_eq!(fit.class_poly(1), Some(NPoly::from_i64(&[0, 1])));
        assert_eq!(fit.class_poly(0), None);
    }

    #[test]
    fn late_onset_is_reported() {
        let data: Vec<(u32, u64)> = (1..15).map(|n| (n, if n < 6 { 1 } else { (n * n) as u64 })).collect();
        let fit = fit_sequence(&data, 1).unwrap();
        assert_eq!((fit.degree, fit.onset), (2, 6));
    }

    #[test]
    fn too_few_points() {
        assert!(matches!(fit_sequence(&[(1, 1), (2, 5)], 2), Err(Error::InsufficientData(_))));
    }
}
