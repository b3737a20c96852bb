use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RepnError;

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts trailing zeros and drops them.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, RepnError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(RepnError::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `1^n`
    pub fn column(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// `(n)`
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (0-based), zero past the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().filter(|&&p| p > j).count())
                .collect(),
        }
    }

    /// Partitions obtained by removing one corner box.
    pub fn lower_covers(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if self.part(i + 1) < self.parts[i] {
                let mut p = self.parts.clone();
                p[i] -= 1;
                out.push(Partition::new(p).unwrap());
            }
        }
        out
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dim(&self) -> usize {
        let conj = self.conjugate();
        let num: u128 = (1..=self.size() as u128).product();
        let hooks: u128 = self
            .parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| {
                let conj = &conj;
                (0..p).map(move |j| ((p - j) + (conj.part(j) - i) - 1) as u128)
            })
            .product();
        (num / hooks) as usize
    }

    /// All partitions of `n` in decreasing lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for k in (1..=rest.min(max)).rev() {
                cur.push(k);
                rec(rest - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = RepnError;
    fn try_from(v: Vec<usize>) -> Result<Self, RepnError> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = RepnError;

    /// Accepts `2,1`, `(2,1)` or `[2,1]`.
    fn from_str(s: &str) -> Result<Self, RepnError> {
        let t = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if t.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| RepnError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}
