use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{expansion_sum, f_operator, subset_form_with, DiffOp};
use crate::exactalg::{Field, Rat, RatFunc, WFrac};
use crate::symgroup::{BetheConfig, GroupAlgebraElement, SupportedPerm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FVanishingReport {
    pub n: usize,
    /// supported permutations with nonempty support that were examined
    pub checked: usize,
    /// size of the full pool they were drawn from
    pub pool: usize,
    pub exhaustive: bool,
    /// `(permutation, support)` of each nonvanishing `F`, 1-based
    pub nonvanishing: Vec<(String, Vec<usize>)>,
    /// the expansion sum equals the product `D+ D-`
    pub expansion_matches_product: bool,
    /// the expansion sum equals `d^(2n)`
    pub expansion_is_d2n: bool,
}

impl FVanishingReport {
    pub fn passed(&self) -> bool {
        self.nonvanishing.is_empty() && self.expansion_matches_product && self.expansion_is_d2n
    }
}

/// Checks that `F_{sigma_Z}` vanishes for every supported permutation with
/// `Z` nonempty, and that summing the expansion over all supported
/// permutations reproduces `D+ D-`. With `sample = Some((m, seed))` only
/// `m` permutations drawn without replacement are tested (all of them when
/// the pool is smaller).
pub fn check_f_vanishing(cfg: &BetheConfig<Rat>, sample: Option<(usize, u64)>) -> FVanishingReport {
    let n = cfg.n();
    let mut pool: Vec<SupportedPerm> = SupportedPerm::enumerate(n)
        .into_iter()
        .filter(|sp| sp.support() != 0)
        .collect();
    let pool_size = pool.len();
    let mut exhaustive = true;
    if let Some((m, seed)) = sample {
        if m < pool.len() {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            pool.shuffle(&mut rng);
            pool.truncate(m);
            exhaustive = false;
        }
    }
    let nonvanishing = pool
        .iter()
        .filter(|sp| !f_operator(sp, cfg).is_zero())
        .map(|sp| {
            let support = crate::symgroup::mask_elements(sp.support()).map(|i| i + 1).collect();
            (sp.perm().to_string(), support)
        })
        .collect();
    let sum = expansion_sum(cfg);
    // the product is formed without gcds, then brought back to RatFunc
    let w = cfg.w();
    let (plus, minus) = subset_form_with(cfg, |p| WFrac::new(p, 1, &w));
    let product = plus.mul(&minus).map(|g| g.map_coeffs(WFrac::to_ratfunc));
    let d2n = DiffOp::monomial(GroupAlgebraElement::scalar(n, RatFunc::one()), 2 * n);
    FVanishingReport {
        n,
        checked: pool.len(),
        pool: pool_size,
        exhaustive,
        nonvanishing,
        expansion_matches_product: sum == product,
        expansion_is_d2n: sum == d2n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(z: &[i64]) -> BetheConfig<Rat> {
        BetheConfig::new(z.iter().map(|&v| Rat::from_int(v)).collect())
    }

    #[test]
    fn exhaustive_small() {
        for z in [vec![3], vec![1, -2], vec![1, 2, 5], vec![0, 0, 4]] {
            let r = check_f_vanishing(&cfg(&z), None);
            assert!(r.passed(), "{r:?}");
            assert!(r.exhaustive);
        }
        assert_eq!(check_f_vanishing(&cfg(&[1, 2, 5]), None).pool, 3 + 3 * 2 + 6);
    }

    #[test]
    fn sampling_is_seeded() {
        let c = cfg(&[1, 2, 5]);
        let a = check_f_vanishing(&c, Some((4, 9)));
        assert!(!a.exhaustive && a.checked == 4 && a.passed());
        assert_eq!(a, check_f_vanishing(&c, Some((4, 9))));
    }
}
