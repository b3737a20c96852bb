use std::collections::BTreeMap;
use std::fmt;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Perm;
use crate::exactalg::{DiffRing, Ring};

/// Sparse element of the group algebra of S_n: a map from permutations to
/// coefficients with no stored zeros.
///
/// Coefficients need not commute with each other (only with permutations),
/// so products keep the left factor's coefficient on the left.
#[derive(Clone, PartialEq)]
pub struct GroupAlgebraElement<S> {
    terms: BTreeMap<Perm, S>,
}

impl<S: Ring> GroupAlgebraElement<S> {
    pub fn zero() -> Self {
        GroupAlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(p: Perm, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        GroupAlgebraElement { terms }
    }

    /// `c * 1` in S_n.
    pub fn scalar(n: usize, c: S) -> Self {
        GroupAlgebraElement::monomial(Perm::identity(n), c)
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Perm, S)>) -> Self {
        let mut g = GroupAlgebraElement::zero();
        for (p, c) in it {
            g.add_term(p, c);
        }
        g
    }

    pub fn add_term(&mut self, p: Perm, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<Perm, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Perm) -> S {
        self.terms.get(p).cloned().unwrap_or_else(S::zero)
    }

    /// Degree n of the permutations involved (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|p| p.n())
    }

    pub fn map_coeffs<T: Ring>(&self, f: impl Fn(&S) -> T) -> GroupAlgebraElement<T> {
        GroupAlgebraElement::from_terms(self.terms.iter().map(|(p, c)| (p.clone(), f(c))))
    }

    /// Multiply every coefficient on the left by `c`.
    pub fn scale_left(&self, c: &S) -> Self {
        self.map_coeffs(|x| c.times(x))
    }

    /// Multiply every coefficient on the right by `c`.
    pub fn scale_right(&self, c: &S) -> Self {
        self.map_coeffs(|x| x.times(c))
    }

    /// The sign twist `sigma -> sgn(sigma) sigma`, an algebra automorphism.
    pub fn star(&self) -> Self {
        self.map_coeffs_signed(|p| p.sign())
    }

    fn map_coeffs_signed(&self, sign: impl Fn(&Perm) -> i64) -> Self {
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| {
                    let c = if sign(p) < 0 { c.negated() } else { c.clone() };
                    (p.clone(), c)
                })
                .collect(),
        }
    }

    /// The anti-automorphism part of omega on permutations:
    /// `sigma -> sgn(sigma) sigma^-1`.
    pub fn signed_inverse(&self) -> Self {
        GroupAlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(p, c)| {
                    let c = if p.sign() < 0 { c.negated() } else { c.clone() };
                    (p.inverse(), c)
                })
                .collect(),
        }
    }
}

impl<S: Ring> Ring for GroupAlgebraElement<S> {
    fn zero() -> Self {
        GroupAlgebraElement::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let (mut big, small) = if self.len() >= o.len() {
            (self.clone(), o)
        } else {
            (o.clone(), self)
        };
        for (p, c) in &small.terms {
            // keep addition order irrelevant: coefficient addition commutes
            big.add_term(p.clone(), c.clone());
        }
        big
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        let mut out = GroupAlgebraElement::zero();
        for (p, a) in &self.terms {
            for (q, b) in &o.terms {
                out.add_term(p.compose(q), a.times(b));
            }
        }
        out
    }
    fn negated(&self) -> Self {
        self.map_coeffs(|c| c.negated())
    }
    fn scale_int(&self, k: i64) -> Self {
        self.map_coeffs(|c| c.scale_int(k))
    }
}

impl<S: DiffRing> DiffRing for GroupAlgebraElement<S> {
    fn derivative(&self) -> Self {
        self.map_coeffs(|c| c.derivative())
    }
}

impl<S: fmt::Debug> fmt::Debug for GroupAlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:?}){}", c, p)?;
        }
        Ok(())
    }
}

impl<S: Serialize> Serialize for GroupAlgebraElement<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> Result<Se::Ok, Se::Error> {
        let m: BTreeMap<String, &S> = self.terms.iter().map(|(p, c)| (p.to_string(), c)).collect();
        m.serialize(s)
    }
}

impl<'de, S: Ring + DeserializeOwned> Deserialize<'de> for GroupAlgebraElement<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, S>::deserialize(d)?;
        let mut g = GroupAlgebraElement::zero();
        for (k, c) in m {
            let p: Perm = k.parse().map_err(serde::de::Error::custom)?;
            g.add_term(p, c);
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;
    use proptest::prelude::*;

    fn arb_elem(n: usize) -> impl Strategy<Value = GroupAlgebraElement<Rat>> {
        let perms = Perm::all(n);
        proptest::collection::vec((0..perms.len(), -3i64..4), 0..6).prop_map(move |v| {
            GroupAlgebraElement::from_terms(
                v.into_iter().map(|(i, c)| (perms[i].clone(), Rat::from_int(c))),
            )
        })
    }

    #[test]
    fn no_stored_zeros() {
        let p = Perm::transposition(2, 0, 1);
        let mut g = GroupAlgebraElement::monomial(p.clone(), Rat::from_int(1));
        g.add_term(p, Rat::from_int(-1));
        assert!(g.is_empty());
    }

    #[test]
    fn json_is_a_permutation_keyed_map() {
        let g = GroupAlgebraElement::from_terms([
            (Perm::identity(2), Rat::from_int(1)),
            (Perm::transposition(2, 0, 1), Rat::new(-1, 2)),
        ]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"[1,2]":"1/1","[2,1]":"-1/2"}"#);
        let back: GroupAlgebraElement<Rat> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }

    proptest! {
        #[test]
        fn associative(a in arb_elem(3), b in arb_elem(3), c in arb_elem(3)) {
            prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        }

        #[test]
        fn star_is_an_involutive_automorphism(a in arb_elem(4), b in arb_elem(4)) {
            prop_assert_eq!(a.star().star(), a.clone());
            prop_assert_eq!(a.times(&b).star(), a.star().times(&b.star()));
        }

        #[test]
        fn signed_inverse_reverses_products(a in arb_elem(3), b in arb_elem(3)) {
            prop_assert_eq!(a.times(&b).signed_inverse(), b.signed_inverse().times(&a.signed_inverse()));
        }
    }
}
