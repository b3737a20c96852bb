//! Schubert cells of solutions: exponents at infinity, indicial data,
//! canonical coordinates and the duality between a solution and its
//! sign-twisted partner.

mod coords;
mod duality;
mod indicial;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{Field, Rat, Ring};
use crate::repn::Partition;
use crate::wronskian::PolySubspace;

pub use coords::{
    canonical_coords, grassmann_dual, omega_map, theta, upsilon_map, CanonicalCoords,
};
pub use duality::{verify_duality, DualityPair, DualityReport};
pub use indicial::{indicial, indicial_numeric, indicial_polynomial, integer_roots, IndicialVector};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchubertError {
    #[error("{0} parts exceed the dimension {1}")]
    TooManyParts(usize, usize),
    #[error("duality needs lambda_1 <= n, got lambda_1 = {lambda1}, n = {n}")]
    TooWide { lambda1: usize, n: usize },
    #[error("expected a space of polynomials")]
    NotPolynomial,
    #[error("operator lies outside the coordinate solver domain (order <= {n}, bounded coefficient degrees)")]
    NotInY { n: usize },
    #[error("coefficient c_{{{i},{j}}} vanished while solving for coordinates")]
    ZeroPivot { i: usize, j: usize },
    #[error("{0}")]
    Unpaired(String),
}

/// A Schubert cell: the partition (padded with zeros to `n` parts), the
/// exponents `d_i = lambda_i + n - i` and the gaps `e_1 < e_2 < ..` below
/// `d_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertData {
    pub lambda: Partition,
    pub n: usize,
    pub d: Vec<usize>,
    pub e: Vec<usize>,
}

impl SchubertData {
    pub fn new(lambda: &Partition, n: usize) -> Result<Self, SchubertError> {
        if lambda.len() > n {
            return Err(SchubertError::TooManyParts(lambda.len(), n));
        }
        let d: Vec<usize> = (0..n).map(|i| lambda.part(i) + n - 1 - i).collect();
        let top = d.first().copied().unwrap_or(0);
        let e = (0..top).filter(|x| !d.contains(x)).collect();
        Ok(SchubertData {
            lambda: lambda.clone(),
            n,
            d,
            e,
        })
    }

    /// From strictly decreasing exponents.
    pub fn from_degrees(d: &[usize]) -> Self {
        let n = d.len();
        assert!(d.windows(2).all(|w| w[0] > w[1]), "degrees must be distinct and decreasing");
        let parts = (0..n).map(|i| d[i] + i + 1 - n).collect();
        SchubertData::new(&Partition::new(parts).unwrap(), n).unwrap()
    }

    /// `lambda_i` for 0-based `i`.
    pub fn lambda_i(&self, i: usize) -> usize {
        self.lambda.part(i)
    }

    /// The conjugate cell, defined when `lambda_1 <= n`.
    pub fn conjugate(&self) -> Result<SchubertData, SchubertError> {
        if self.lambda.part(0) > self.n {
            return Err(SchubertError::TooWide {
                lambda1: self.lambda.part(0),
                n: self.n,
            });
        }
        SchubertData::new(&self.lambda.conjugate(), self.n)
    }
}

/// Schubert type of a space of polynomials, read off from the degrees of its
/// canonical basis.
pub fn schubert_type<S: Field>(v: &PolySubspace<S>) -> SchubertData {
    SchubertData::from_degrees(&v.degrees())
}

/// The recurrence `c^lambda_0 = [lambda = 1^n]`,
/// `c^lambda_k = (1/k) sum_{mu covered by lambda} c^mu_{k-1}`.
pub fn c_lambda(lambda: &Partition) -> Vec<Rat> {
    let n = lambda.size();
    let mut c = vec![Rat::zero(); n + 1];
    if *lambda == Partition::column(n) {
        c[0] = Rat::one();
    }
    if n == 0 {
        return c;
    }
    let lower: Vec<Vec<Rat>> = lambda.lower_covers().iter().map(c_lambda).collect();
    for k in 1..=n {
        let s = lower
            .iter()
            .fold(Rat::zero(), |acc, m| acc + m[k - 1].clone());
        c[k] = s / Rat::from_int(k as i64);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Poly;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_ints(cs)
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn types_of_examples() {
        let v = PolySubspace::new(vec![p(&[0, 0, 0, 4, 1]), p(&[0, -2, 1]), p(&[1])]).unwrap();
        let sd = schubert_type(&v);
        assert_eq!(sd.lambda, part("2,1"));
        assert_eq!(sd.d, vec![4, 2, 0]);
        assert_eq!(sd.e, vec![1, 3]);
        let mono = PolySubspace::new(vec![p(&[1]), p(&[0, 1]), p(&[0, 0, 1])]).unwrap();
        assert!(schubert_type(&mono).lambda.is_empty());
        let v = PolySubspace::new(vec![p(&[0, 0, 0, 1]), p(&[0, 1])]).unwrap();
        let sd = schubert_type(&v);
        assert_eq!(sd.lambda, part("2,1"));
        let wr = v.monic_wronskian();
        assert_eq!(wr.degree(), Some(sd.lambda.size() as i64));
    }

    #[test]
    fn c_lambda_examples() {
        let r = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| Rat::new(a, b)).collect::<Vec<_>>();
        assert_eq!(c_lambda(&part("2")), r(&[(0, 1), (1, 1), (1, 2)]));
        assert_eq!(c_lambda(&part("1,1")), r(&[(1, 1), (1, 1), (1, 2)]));
        for n in 1..6 {
            assert_eq!(c_lambda(&Partition::column(n))[0], Rat::one());
        }
    }

    proptest! {
        #[test]
        fn schubert_type_is_basis_independent(a in -5i64..6, b in -5i64..6, c in 1i64..5) {
            let f = [p(&[0, 0, 0, 4, 1]), p(&[0, -2, 1]), p(&[1])];
            let g = vec![
                &f[0].scale(&Rat::from_int(c)) + &f[1].scale(&Rat::from_int(a)),
                &f[1] + &f[2].scale(&Rat::from_int(b)),
                f[2].clone(),
            ];
            let v = PolySubspace::new(g).unwrap();
            prop_assert_eq!(schubert_type(&v).lambda, part("2,1"));
        }
    }
}
