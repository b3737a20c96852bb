//! Permutations, the group algebra of S_n, the Bethe generators and the
//! combinatorial bijection proving that they commute.
//!
//! Points are 0-based throughout the library; subsets of `[n]` are bitmasks.
//! Text and JSON forms of permutations are 1-based.

mod algebra;
mod bijection;
mod commute;
mod generators;
mod perm;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use algebra::GroupAlgebraElement;
pub use bijection::{
    break_cycles, check_all_bijections, check_bijection, cycles_split, enumerate_b, is_reflection, precedes,
    reflect_involution, rho, rho_inverse, xi_hat, z_multiplicities, BElement, BijectionReport,
};
pub use commute::{check_commutativity, CommutatorFailure, CommuteReport, GeneratorIndex};
pub use generators::{alpha, beta, beta_shifted, BetheConfig};
pub use perm::{Perm, SupportedPerm};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymError {
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("{perm} moves points outside the support {support:#b}")]
    NotSupported { perm: String, support: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Elements of a subset mask in increasing order.
pub fn mask_elements(x: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| x & (1 << i) != 0)
}

/// All `k`-element subsets of `{0, .., n-1}` as masks, in increasing order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    (0..(1u32 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Mask from 1-based points.
pub fn mask_from_one_based(points: &[usize]) -> u32 {
    points.iter().fold(0, |m, &i| m | 1 << (i - 1))
}
