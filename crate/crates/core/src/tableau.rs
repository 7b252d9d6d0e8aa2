//! Partitions and tableaux with distinct entries.
//!
//! A [`Tableau`] stores its rows top to bottom. Entries are distinct positive
//! integers increasing along rows and down columns; the tableau is standard
//! when its entries are exactly `1..=|T|`.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Shape(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Shape(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Conjugate partition (column lengths).
    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|c| self.parts.iter().filter(|&&p| p > c).count() as u32)
            .collect();
        Partition { parts }
    }

    /// `λ[n]`: prepend a first row so the total size is `n`.
    pub fn extend(&self, n: usize) -> Result<Partition> {
        let first = self.parts.first().copied().unwrap_or(0) as usize;
        if n <= self.size() + first {
            return Err(Error::NotExtendable(format!(
                "n = {n} must exceed |λ| + λ1 = {}",
                self.size() + first
            )));
        }
        let mut parts = vec![(n - self.size()) as u32];
        parts.extend_from_slice(&self.parts);
        Ok(Partition { parts })
    }

    /// Number of standard Young tableaux of this shape (hook length formula).
    pub fn hook_count(&self) -> BigUint {
        let conj = self.transpose();
        let mut num = BigUint::one();
        for k in 2..=self.size() {
            num *= k as u64;
        }
        let mut den = BigUint::one();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = conj.parts[j] as usize - i - 1;
                den *= (arm + leg + 1) as u64;
            }
        }
        num / den
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Young tableau with pairwise distinct entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for Tableau {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        Tableau::validate(rows)
    }
}

impl From<Tableau> for Vec<Vec<u32>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl Tableau {
    /// Check shape, distinctness and row/column order.
    pub fn validate(rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.is_empty()) {
            return Err(Error::Shape("empty row".into()));
        }
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::Shape("row lengths not weakly decreasing".into()));
        }
        let mut seen = HashSet::new();
        for &x in rows.iter().flatten() {
            if x == 0 {
                return Err(Error::Order("entries must be positive".into()));
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateEntry(x));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Order(format!("row {} not increasing", i + 1)));
            }
            if i > 0 {
                for (j, &x) in row.iter().enumerate() {
                    if rows[i - 1][j] >= x {
                        return Err(Error::Order(format!("column {} not increasing", j + 1)));
                    }
                }
            }
        }
        Ok(Tableau { rows })
    }

    /// Build without checks; callers guarantee validity.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        Tableau { rows }
    }

    pub fn single_row(n: u32) -> Self {
        Tableau { rows: vec![(1..=n).collect()] }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition { parts: self.rows.iter().map(|r| r.len() as u32).collect() }
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().flatten().copied()
    }

    pub fn sorted_entries(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.entries().collect();
        v.sort_unstable();
        v
    }

    pub fn is_standard(&self) -> bool {
        let n = self.size() as u32;
        self.entries().all(|x| x >= 1 && x <= n)
    }

    /// Replace the k-th smallest entry by k.
    pub fn to_syt(&self) -> Tableau {
        let sorted = self.sorted_entries();
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| sorted.binary_search(x).unwrap() as u32 + 1).collect())
            .collect();
        Tableau { rows }
    }

    /// `T[n]`: add a new top row holding `{1..n}` minus the entries of `self`.
    pub fn extend_first_row(&self, n: u32) -> Result<Tableau> {
        let size = self.size();
        let first = self.rows[0].len();
        if (n as usize) <= size + first {
            return Err(Error::NotExtendable(format!("n = {n} must exceed |T| + λ1 = {}", size + first)));
        }
        if let Some(bad) = self.entries().find(|&x| x < 2 || x > n) {
            return Err(Error::NotExtendable(format!("entry {bad} outside 2..={n}")));
        }
        let used: HashSet<u32> = self.entries().collect();
        let top: Vec<u32> = (1..=n).filter(|x| !used.contains(x)).collect();
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        rows.push(top);
        rows.extend(self.rows.iter().cloned());
        Tableau::validate(rows).map_err(|e| Error::NotExtendable(e.to_string()))
    }

    /// Everything below the first row, or `None` for a single row.
    pub fn lower(&self) -> Option<Tableau> {
        if self.rows.len() < 2 {
            None
        } else {
            Some(Tableau { rows: self.rows[1..].to_vec() })
        }
    }

    /// Row index (0-based) holding `x`.
    pub fn row_of(&self, x: u32) -> Option<usize> {
        self.rows.iter().position(|r| r.contains(&x))
    }

    /// Rows top to bottom, comma separated, joined by `/`.
    pub fn canonical(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join("/")
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[u32]]) -> Tableau {
        Tableau::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let a = t(&[&[2, 5, 9], &[6, 7]]);
        assert!(!a.is_standard());
        assert!(t(&[&[1]]).is_standard());
        assert_eq!(
            Tableau::validate(vec![vec![1, 2], vec![2, 3]]),
            Err(Error::DuplicateEntry(2))
        );
        assert!(matches!(Tableau::validate(vec![vec![1], vec![2, 3]]), Err(Error::Shape(_))));
        assert!(matches!(Tableau::validate(vec![vec![1, 3], vec![2, 0]]), Err(Error::Order(_))));
        assert!(matches!(Tableau::validate(vec![vec![2, 3], vec![1, 4]]), Err(Error::Order(_))));
    }

    #[test]
    fn syt_normalization() {
        assert_eq!(t(&[&[2, 5, 9], &[6, 7]]).to_syt(), t(&[&[1, 2, 5], &[3, 4]]));
        assert_eq!(t(&[&[10, 30], &[20, 40]]).to_syt(), t(&[&[1, 3], &[2, 4]]));
    }

    #[test]
    fn extension() {
        assert_eq!(t(&[&[2]]).extend_first_row(3).unwrap(), t(&[&[1, 3], &[2]]));
        assert!(matches!(t(&[&[1, 2]]).extend_first_row(4), Err(Error::NotExtendable(_))));
        let lower = t(&[&[2, 9, 10, 12, 13, 17, 18, 20]]);
        let full = lower.extend_first_row(20).unwrap();
        assert_eq!(full.rows()[0], vec![1, 3, 4, 5, 6, 7, 8, 11, 14, 15, 16, 19]);
    }

    #[test]
    fn hooks_and_transpose() {
        let p = |v: &[u32]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(p(&[2, 1]).hook_count(), 2u32.into());
        assert_eq!(p(&[7]).hook_count(), 1u32.into());
        assert_eq!(p(&[8, 6]).hook_count(), 1001u32.into());
        assert_eq!(p(&[2, 1]).transpose(), p(&[2, 1]));
        assert_eq!(p(&[3]).transpose(), p(&[1, 1, 1]));
        assert_eq!(p(&[8, 6]).transpose(), p(&[2, 2, 2, 2, 2, 2, 1, 1]));
    }

    #[test]
    fn json_forms() {
        let a: Tableau = serde_json::from_str(r#"[[1,2,5],[3,4]]"#).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"[[1,2,5],[3,4]]"#);
        assert!(serde_json::from_str::<Tableau>(r#"[[1,2],[2,3]]"#).is_err());
        let p: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[3,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
