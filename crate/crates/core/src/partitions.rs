//! Integer partitions and the statistics used by the vertex sums.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Serializes as a plain JSON array, `[2,1]`, with `[]` for the empty partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zero parts.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// The framing statistic `sum mu_i (mu_i - 2i + 1)` (1-based `i`). Always even.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    /// `sum (i-1) mu_i`.
    pub fn n_stat(&self) -> u64 {
        self.0.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.0.iter().take_while(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Hook lengths of all boxes, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row - j as u32 - 1;
                let leg = conj.0[j] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
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
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and `(1^n)` last.
pub fn enumerate(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// All partitions of size at most `n`, grouped by size.
pub fn enumerate_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(enumerate).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn sizes() {
        assert_eq!(Partition::empty().size(), 0);
        assert_eq!(p(&[2, 1]).size(), 3);
        assert_eq!(p(&[5, 5, 1]).size(), 11);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(Partition::empty().kappa(), 0);
        assert_eq!(p(&[2]).kappa(), 2);
        assert_eq!(p(&[2, 1]).kappa(), 0);
        assert_eq!(p(&[1, 1]).kappa(), -2);
    }

    #[test]
    fn n_stat_values() {
        assert_eq!(Partition::empty().n_stat(), 0);
        assert_eq!(p(&[2, 1]).n_stat(), 1);
        assert_eq!(p(&[1, 1, 1]).n_stat(), 3);
    }

    #[test]
    fn hook_values() {
        assert_eq!(p(&[1]).hooks(), vec![1]);
        let mut h = p(&[2, 1]).hooks();
        h.sort_unstable();
        assert_eq!(h, vec![1, 1, 3]);
        let mut h = p(&[2]).hooks();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2]);
    }

    #[test]
    fn conjugates() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
        assert_eq!(p(&[3]).conjugate(), p(&[1, 1, 1]));
    }

    #[test]
    fn enumeration_order_and_counts() {
        assert_eq!(enumerate(0), vec![Partition::empty()]);
        assert_eq!(
            enumerate(4),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(enumerate(8).len(), 22);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn json_shape() {
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
        assert_eq!(serde_json::to_string(&Partition::empty()).unwrap(), "[]");
        let back: Partition = serde_json::from_str("[3,1,1]").unwrap();
        assert_eq!(back, p(&[3, 1, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }
}
