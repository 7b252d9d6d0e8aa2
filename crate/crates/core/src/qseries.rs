//! q-integers, q-binomials, cyclic sieving polynomials and major indices.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::enumeration::binomial;
use crate::error::{Error, Result};
use crate::tableau::Tableau;
use crate::QPoly;

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: i64) -> Result<QPoly> {
    if n < 1 {
        return Err(Error::Domain(format!("[n]_q needs n >= 1, got {n}")));
    }
    Ok(QPoly::new(vec![BigInt::from(1); n as usize]))
}

/// Gaussian binomial via the recursion `[n,k] = [n-1,k-1] + q^k [n-1,k]`.
pub fn q_binomial(n: i64, k: i64) -> Result<QPoly> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::Domain(format!("q-binomial needs 0 <= k <= n, got ({n}, {k})")));
    }
    let (n, k) = (n as usize, k as usize);
    let mut row: Vec<QPoly> = vec![QPoly::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m.min(k) {
            let left = if j >= 1 { row[j - 1].clone() } else { QPoly::zero() };
            let right = if j < row.len() && j < m { row[j].shift(j) } else { QPoly::zero() };
            next.push(&left + &right);
        }
        row = next;
    }
    Ok(row[k].clone())
}

/// Gaussian binomial as `prod (1 - q^(n-i)) / (1 - q^(i+1))`.
pub fn q_binomial_product(n: i64, k: i64) -> Result<QPoly> {
    if k < 0 || n < 0 || k > n {
        return Err(Error::Domain(format!("q-binomial needs 0 <= k <= n, got ({n}, {k})")));
    }
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for i in 0..k {
        num = &num * &one_minus_q_pow((n - i) as usize);
        den = &den * &one_minus_q_pow((i + 1) as usize);
    }
    num.div_exact(&den)
}

fn one_minus_q_pow(m: usize) -> QPoly {
    let mut c = vec![BigInt::zero(); m + 1];
    c[0] = BigInt::from(1);
    c[m] = BigInt::from(-1);
    QPoly::new(c)
}

/// `[n-l]_q / [r]_q * [n-l-2rl+r-1, r-1]_q`.
pub fn csp_polynomial(n: i64, ell: i64, r: i64) -> Result<QPoly> {
    if r < 1 || ell < 1 || n < (2 * r + 1) * ell {
        return Err(Error::PreconditionViolated(format!(
            "need n >= (2r+1)l with l, r >= 1; got n = {n}, l = {ell}, r = {r}"
        )));
    }
    let num = &q_int(n - ell)? * &q_binomial(n - ell - 2 * r * ell + r - 1, r - 1)?;
    num.div_exact(&q_int(r)?)
}

/// Fixed points of `promote^((n-l)/d)` on `T(n, l, r)` in closed form.
pub fn csp_fixed_count(n: i64, ell: i64, r: i64, d: i64) -> Result<BigInt> {
    if d < 1 || (n - ell) % d != 0 {
        return Err(Error::Domain(format!("d = {d} must divide n - l = {}", n - ell)));
    }
    if r % d != 0 {
        return Ok(BigInt::zero());
    }
    let c = binomial((n - ell - 2 * r * ell + r) / d - 1, r / d - 1);
    Ok(BigInt::from(c) * (n - ell) / r)
}

static CYCLOTOMIC: Mutex<BTreeMap<u64, QPoly>> = Mutex::new(BTreeMap::new());

/// The `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: u64) -> QPoly {
    if let Some(p) = CYCLOTOMIC.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut p = &QPoly::monomial(d as usize) - &QPoly::one();
    for e in 1..d {
        if d.is_multiple_of(e) {
            p = p.div_exact(&cyclotomic(e)).expect("cyclotomic factors divide q^d - 1");
        }
    }
    CYCLOTOMIC.lock().unwrap().insert(d, p.clone());
    p
}

/// Value of `p` at a primitive `d`-th root of unity, which must be the same
/// integer for every such root. Checked against floating evaluation at
/// `exp(2πi/d)` to within `1e-6`.
pub fn eval_at_primitive_root(p: &QPoly, d: u64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::Domain("d must be positive".into()));
    }
    let (_, rem) = p.div_rem(&cyclotomic(d))?;
    if rem.degree().unwrap_or(0) > 0 {
        return Err(Error::NonConstantResidue(d));
    }
    let value = rem.coeff(0);
    let z = Complex64::from_polar(1.0, 2.0 * PI / d as f64);
    let approx = p.eval_complex(z);
    let exact = value.to_f64().unwrap_or(f64::INFINITY);
    let tol = 1e-6 * (1.0 + p.l1_norm() * 1e-9);
    if (approx.re - exact).abs() > tol || approx.im.abs() > tol {
        return Err(Error::InvariantViolated(format!(
            "float check at exp(2πi/{d}) gave {approx}, exact {value}"
        )));
    }
    Ok(value)
}

/// Sum of descents `k` (k+1 in a strictly lower row).
pub fn maj(t: &Tableau) -> u64 {
    maj_ell(t, 1)
}

/// Major index counting only descents `k >= l`.
pub fn maj_ell(t: &Tableau, ell: u64) -> u64 {
    let n = t.size();
    let mut row = vec![0usize; n + 2];
    for (i, r) in t.rows().iter().enumerate() {
        for &x in r {
            row[x as usize] = i;
        }
    }
    (1..n as u64)
        .filter(|&k| k >= ell && row[k as usize + 1] > row[k as usize])
        .sum()
}

/// `sum q^(maj_l(T))` over a family.
pub fn maj_gf(family: &[Tableau], ell: u64) -> QPoly {
    let mut counts: Vec<u64> = Vec::new();
    for t in family {
        let m = maj_ell(t, ell) as usize;
        if counts.len() <= m {
            counts.resize(m + 1, 0);
        }
        counts[m] += 1;
    }
    QPoly::new(counts.into_iter().map(BigInt::from).collect())
}

/// Divisors of `m` in increasing order.
pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_i64(c)
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_int(1).unwrap(), q(&[1]));
        assert_eq!(q_int(3).unwrap(), q(&[1, 1, 1]));
        assert!(q_int(0).is_err());
    }

    #[test]
    fn q_binomials_two_ways() {
        assert_eq!(q_binomial(4, 2).unwrap(), q(&[1, 1, 2, 1, 1]));
        for n in 0..9 {
            for k in 0..=n {
                let a = q_binomial(n, k).unwrap();
                assert_eq!(a, q_binomial_product(n, k).unwrap());
                assert_eq!(a, q_binomial(n, n - k).unwrap());
                assert!(a.is_palindromic());
                assert_eq!(a.eval(&BigInt::from(1)), BigInt::from(binomial(n, k)));
            }
        }
    }

    #[test]
    fn csp_basics() {
        assert_eq!(csp_polynomial(9, 2, 1).unwrap(), q_int(7).unwrap());
        assert!(matches!(csp_polynomial(9, 2, 2), Err(Error::PreconditionViolated(_))));
        assert_eq!(csp_fixed_count(12, 2, 2, 1).unwrap(), BigInt::from(15));
        assert_eq!(csp_fixed_count(12, 2, 2, 5).unwrap(), BigInt::zero());
        assert!(csp_fixed_count(12, 2, 2, 3).is_err());
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), q(&[-1, 1]));
        assert_eq!(cyclotomic(6), q(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), q(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_evaluation() {
        let p = q_int(6).unwrap();
        assert_eq!(eval_at_primitive_root(&p, 1).unwrap(), BigInt::from(6));
        assert_eq!(eval_at_primitive_root(&p, 3).unwrap(), BigInt::zero());
        assert_eq!(eval_at_primitive_root(&q(&[0, 1]), 3), Err(Error::NonConstantResidue(3)));
        assert_eq!(eval_at_primitive_root(&q(&[1, 0, 1]), 2).unwrap(), BigInt::from(2));
    }

    #[test]
    fn major_index() {
        let t = Tableau::validate(vec![vec![1, 2, 5], vec![3, 4]]).unwrap();
        assert_eq!(maj(&t), 2);
        assert_eq!(maj_ell(&t, 3), 0);
        assert_eq!(maj(&Tableau::single_row(5)), 0);
        assert_eq!(maj_gf(&[], 1), QPoly::zero());
    }
}
