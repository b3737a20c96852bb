use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{mask_elements, SymError};

/// A permutation of `{0, .., n-1}` stored as its image array.
///
/// Composition is `(s * t)(i) = s(t(i))`. Display and JSON use the 1-based
/// one-line notation, e.g. `[2,1,3]` for the transposition `(1 2)` in S_3.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize);
        Perm {
            images: (0..n as u8).collect(),
        }
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self, SymError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(SymError::NotAPermutation(images.clone()));
            }
            seen[i] = true;
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self, SymError> {
        if images.contains(&0) {
            return Err(SymError::NotAPermutation(images.to_vec()));
        }
        Perm::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// Product of the given cycles (0-based entries), applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut p = Perm::identity(n);
        for c in cycles.iter().rev() {
            let mut img: Vec<usize> = (0..n).collect();
            for k in 0..c.len() {
                img[c[k]] = c[(k + 1) % c.len()];
            }
            p = Perm::from_images(img).expect("valid cycle").compose(&p);
        }
        p
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        Perm::from_cycles(n, &[&[a, b]])
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    /// `self * o`, i.e. apply `o` first.
    pub fn compose(&self, o: &Perm) -> Perm {
        assert_eq!(self.n(), o.n(), "permutations of different degree");
        Perm {
            images: o.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.n()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Bitmask of points moved by the permutation.
    pub fn moved(&self) -> u32 {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j as usize)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Whether the permutation lies in S_X for the subset mask `x`.
    pub fn supported_in(&self, x: u32) -> bool {
        self.moved() & !x == 0
    }

    /// Cycles including fixed points, each starting at its smallest element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut j = self.apply(s);
            while j != s {
                seen[j] = true;
                c.push(j);
                j = self.apply(j);
            }
            out.push(c);
        }
        out
    }

    pub fn sign(&self) -> i64 {
        let even = self
            .cycles()
            .iter()
            .filter(|c| c.len() % 2 == 0)
            .count()
            % 2
            == 0;
        if even {
            1
        } else {
            -1
        }
    }

    /// Image of a subset mask.
    pub fn image_of(&self, x: u32) -> u32 {
        mask_elements(x).fold(0, |m, i| m | 1 << self.apply(i))
    }

    /// All permutations in S_X, the identity first.
    pub fn all_supported_in(n: usize, x: u32) -> Vec<Perm> {
        let elems: Vec<usize> = mask_elements(x).collect();
        let mut out = Vec::new();
        let mut arrangement = elems.clone();
        permute_rec(&elems, &mut arrangement, 0, n, &mut out);
        out
    }

    /// All permutations of degree `n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut v = Perm::all_supported_in(n, ((1u64 << n) - 1) as u32);
        v.sort();
        v
    }
}

fn permute_rec(elems: &[usize], arr: &mut Vec<usize>, k: usize, n: usize, out: &mut Vec<Perm>) {
    if k == arr.len() {
        let mut img: Vec<usize> = (0..n).collect();
        for (src, &dst) in elems.iter().zip(arr.iter()) {
            img[*src] = dst;
        }
        out.push(Perm::from_images(img).unwrap());
        return;
    }
    for i in k..arr.len() {
        arr.swap(k, i);
        permute_rec(elems, arr, k + 1, n, out);
        arr.swap(k, i);
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.one_line().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Perm {
    type Err = SymError;
    fn from_str(s: &str) -> Result<Self, SymError> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| SymError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Perm::identity(0));
        }
        let images = inner
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SymError::Parse(s.to_string()))?;
        Perm::from_one_line(&images)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Perm::from_one_line(&v).map_err(serde::de::Error::custom)
    }
}

/// A permutation together with a support set containing its moved points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SupportedPerm {
    perm: Perm,
    support: u32,
}

impl SupportedPerm {
    pub fn new(perm: Perm, support: u32) -> Result<Self, SymError> {
        if !perm.supported_in(support) || support >> perm.n() != 0 {
            return Err(SymError::NotSupported {
                perm: perm.to_string(),
                support,
            });
        }
        Ok(SupportedPerm { perm, support })
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn support(&self) -> u32 {
        self.support
    }

    /// Every supported permutation of degree `n`: all pairs (Z, sigma in S_Z).
    pub fn enumerate(n: usize) -> Vec<SupportedPerm> {
        let mut out = Vec::new();
        for z in 0..(1u32 << n) {
            for p in Perm::all_supported_in(n, z) {
                out.push(SupportedPerm { perm: p, support: z });
            }
        }
        out
    }
}
