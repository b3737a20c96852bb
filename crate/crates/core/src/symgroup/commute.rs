use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{alpha, subsets_of_size, z_multiplicities, GroupAlgebraElement, Sign};
use crate::exactalg::{Rat, Ring};

/// `gamma_{k,Y} = sum_{|X| = k, X disjoint from Y} alpha_X`, so that
/// `beta_{k,l} = sum_{|Y| = l} z_Y gamma_{k,Y}` with the `z_i` formal.
fn gamma(n: usize, k: usize, y: u32, sign: Sign) -> GroupAlgebraElement<Rat> {
    let mut out = GroupAlgebraElement::zero();
    for x in subsets_of_size(n, k) {
        if x & y == 0 {
            out = out.plus(&alpha::<Rat>(n, x, sign));
        }
    }
    out
}

/// A generator `beta^sign_{k,l}`.
pub type GeneratorIndex = (Sign, usize, usize);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorFailure {
    pub a: GeneratorIndex,
    pub b: GeneratorIndex,
    /// exponent of each `z_i` in the offending monomial
    pub z_monomial: Vec<u8>,
    pub permutation: String,
    pub coefficient: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommuteReport {
    pub n: usize,
    pub pairs_checked: usize,
    pub failures: Vec<CommutatorFailure>,
}

impl CommuteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact check that every pair of Bethe generators of degree `n` commutes,
/// with `z_1, .., z_n` treated as indeterminates: the commutator is expanded
/// by monomial in the `z_i` and every coefficient must vanish.
pub fn check_commutativity(n: usize) -> CommuteReport {
    let mut gens: Vec<GeneratorIndex> = Vec::new();
    for sign in [Sign::Minus, Sign::Plus] {
        for k in 0..=n {
            for l in 0..=n - k {
                gens.push((sign, k, l));
            }
        }
    }
    // per generator: the pieces (Y, gamma_{k,Y})
    let pieces: Vec<Vec<(u32, GroupAlgebraElement<Rat>)>> = gens
        .iter()
        .map(|&(sign, k, l)| {
            subsets_of_size(n, l)
                .into_iter()
                .map(|y| (y, gamma(n, k, y, sign)))
                .filter(|(_, g)| !g.is_zero())
                .collect()
        })
        .collect();
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            pairs_checked += 1;
            let mut by_monomial: BTreeMap<Vec<u8>, GroupAlgebraElement<Rat>> = BTreeMap::new();
            for (ya, ga) in &pieces[i] {
                for (yb, gb) in &pieces[j] {
                    let c = ga.times(gb).minus(&gb.times(ga));
                    let e = by_monomial.entry(z_multiplicities(n, *ya, *yb)).or_insert_with(GroupAlgebraElement::zero);
                    *e = e.plus(&c);
                }
            }
            if let Some((m, c)) = by_monomial.into_iter().find(|(_, c)| !c.is_zero()) {
                let (p, v) = c.terms().iter().next().unwrap();
                failures.push(CommutatorFailure {
                    a: gens[i],
                    b: gens[j],
                    z_monomial: m,
                    permutation: p.to_string(),
                    coefficient: v.clone(),
                });
            }
        }
    }
    CommuteReport {
        n,
        pairs_checked,
        failures,
    }
}
