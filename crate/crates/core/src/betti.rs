use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One nonzero graded Betti number `beta_{i,j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub rank: usize,
}

/// Graded Betti numbers keyed by (homological degree, internal degree); only
/// positive ranks are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<BettiEntry>", into = "Vec<BettiEntry>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl From<Vec<BettiEntry>> for BettiTable {
    fn from(v: Vec<BettiEntry>) -> Self {
        BettiTable::from_entries(v.into_iter().map(|e| (e.i, e.j, e.rank)))
    }
}

impl From<BettiTable> for Vec<BettiEntry> {
    fn from(t: BettiTable) -> Self {
        t.iter().map(|(i, j, rank)| BettiEntry { i, j, rank }).collect()
    }
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Ranks for repeated keys are added.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, i64, usize)>) -> Self {
        let mut t = BettiTable::new();
        for (i, j, r) in entries {
            t.add(i, j, r);
        }
        t
    }

    /// The table of a single free module generated in degree 0.
    pub fn free() -> Self {
        Self::from_entries([(0, 0, 1)])
    }

    pub fn add(&mut self, i: usize, j: i64, rank: usize) {
        if rank > 0 {
            *self.entries.entry((i, j)).or_insert(0) += rank;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_j beta_{i,j}` for `i = 0..=length`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, _, r) in self.iter() {
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += r;
        }
        out
    }

    pub fn length(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn max_internal_degree(&self) -> Option<i64> {
        self.entries.keys().map(|k| k.1).max()
    }

    pub fn first_off_diagonal(&self) -> Option<(usize, i64)> {
        self.entries.keys().find(|&&(i, j)| j != i as i64).copied()
    }

    /// Linear and generated in degree 0: `beta_{i,j} = 0` unless `j = i`.
    pub fn is_diagonal(&self) -> bool {
        self.first_off_diagonal().is_none()
    }

    pub fn check_diagonal(&self) -> Result<()> {
        match self.first_off_diagonal() {
            Some((i, j)) => Err(Error::NotDiagonal { i, j }),
            None => Ok(()),
        }
    }

    /// Entries with internal degree `<= bound`.
    pub fn restrict(&self, bound: i64) -> BettiTable {
        BettiTable { entries: self.entries.iter().filter(|(k, _)| k.1 <= bound).map(|(k, v)| (*k, *v)).collect() }
    }

    /// Entrywise sum.
    pub fn sum(&self, other: &BettiTable) -> BettiTable {
        let mut out = self.clone();
        for (i, j, r) in other.iter() {
            out.add(i, j, r);
        }
        out
    }

    /// Coefficients of `sum_i (-1)^i sum_j beta_{i,j} t^j` for `j = 0..=bound`.
    pub fn euler_series(&self, bound: i64) -> Vec<i64> {
        let mut out = vec![0i64; (bound.max(-1) + 1) as usize];
        for (i, j, r) in self.iter() {
            if (0..=bound).contains(&j) {
                let s = if i % 2 == 0 { 1 } else { -1 };
                out[j as usize] += s * r as i64;
            }
        }
        out
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `j - i`, columns by `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(len) = self.length() else {
            return writeln!(f, "(zero)");
        };
        let rows: Vec<i64> = {
            let mut r: Vec<i64> = self.iter().map(|(i, j, _)| j - i as i64).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let (lo, hi) = (rows[0], *rows.last().unwrap());
        let width = self.iter().map(|(_, _, r)| r.to_string().len()).max().unwrap_or(1).max(len.to_string().len());
        let label = format!("{hi}").len().max(format!("{lo}").len()).max(5) + 1;
        write!(f, "{:>label$}", "")?;
        for i in 0..=len {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        write!(f, "{:>label$}", "total:")?;
        let totals = self.totals();
        for i in 0..=len {
            write!(f, " {:>width$}", totals.get(i).copied().unwrap_or(0))?;
        }
        writeln!(f)?;
        for row in lo..=hi {
            write!(f, "{:>label$}", format!("{row}:"))?;
            for i in 0..=len {
                let r = self.get(i, row + i as i64);
                if r == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {r:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_and_diagonality() {
        let t = BettiTable::from_entries([(0, 5, 2), (0, 6, 1), (1, 8, 2)]);
        assert_eq!(t.totals(), vec![3, 2]);
        assert!(!t.is_diagonal());
        let d = BettiTable::from_entries([(0, 0, 3), (1, 1, 2)]);
        assert!(d.is_diagonal());
        assert_eq!(d.euler_series(2), vec![3, -2, 0]);
        assert_eq!(d.restrict(0), BettiTable::from_entries([(0, 0, 3)]));
    }

    #[test]
    fn json_shape() {
        let d = BettiTable::from_entries([(0, 0, 3), (1, 1, 2)]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"[{"i":0,"j":0,"rank":3},{"i":1,"j":1,"rank":2}]"#);
        let back: BettiTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn display() {
        let t = BettiTable::from_entries([(0, 5, 2), (0, 6, 1), (1, 8, 2)]);
        let s = t.to_string();
        assert!(s.contains("total: 3 2"), "{s}");
    }
}
