use serde::{Deserialize, Serialize};

use super::{mask_elements, subsets_of_size, GroupAlgebraElement, Perm, Sign};
use rand::Rng;

use crate::exactalg::{BigComplex, Field, Poly, Rat};

/// The points `z_1, .., z_n` defining `w(u) = (u + z_1) ... (u + z_n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BetheConfig<S> {
    z: Vec<S>,
}

impl<S: Field> BetheConfig<S> {
    pub fn new(z: Vec<S>) -> Self {
        assert!(!z.is_empty(), "need at least one point");
        assert!(z.len() <= 16, "too many points");
        BetheConfig { z }
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn z(&self) -> &[S] {
        &self.z
    }

    /// `z_X`, the product over a subset mask.
    pub fn z_prod(&self, x: u32) -> S {
        mask_elements(x).fold(S::one(), |acc, i| acc * self.z[i].clone())
    }

    /// `prod_{i in x} (u + z_i)`
    pub fn w_partial(&self, x: u32) -> Poly<S> {
        mask_elements(x).fold(Poly::one(), |acc, i| &acc * &Poly::linear(self.z[i].clone()))
    }

    pub fn w(&self) -> Poly<S> {
        self.w_partial(self.full())
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n()) - 1) as u32
    }

    /// The configuration `(z_1 + t, .., z_n + t)`.
    pub fn translate(&self, t: &S) -> Self {
        BetheConfig::new(self.z.iter().map(|z| z.clone() + t.clone()).collect())
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> BetheConfig<T> {
        BetheConfig::new(self.z.iter().map(f).collect())
    }
}

impl BetheConfig<Rat> {
    /// Points `p/q` with `|p| <= 12`, `1 <= q <= 5` drawn from `rng`; with
    /// `repeated` (and `n >= 2`) the last point is set equal to the first.
    pub fn random<R: Rng>(n: usize, rng: &mut R, repeated: bool) -> Self {
        let mut z: Vec<Rat> = (0..n)
            .map(|_| Rat::new(rng.gen_range(-12..=12), rng.gen_range(1..=5)))
            .collect();
        if repeated && n >= 2 {
            z[n - 1] = z[0].clone();
        }
        BetheConfig::new(z)
    }

    pub fn to_numeric(&self, prec: u32) -> BetheConfig<BigComplex> {
        self.map(|r| BigComplex::from_rat(r, prec))
    }
}

/// `alpha^+_X = sum_{sigma in S_X} sigma`, and `alpha^-_X` with sign weights.
pub fn alpha<S: Field>(n: usize, x: u32, sign: Sign) -> GroupAlgebraElement<S> {
    GroupAlgebraElement::from_terms(Perm::all_supported_in(n, x).into_iter().map(|p| {
        let c = match sign {
            Sign::Minus if p.sign() < 0 => -S::one(),
            _ => S::one(),
        };
        (p, c)
    }))
}

/// `beta_{k,l} = sum over disjoint X, Y with |X| = k, |Y| = l of alpha_X z_Y`.
pub fn beta<S: Field>(cfg: &BetheConfig<S>, k: usize, l: usize, sign: Sign) -> GroupAlgebraElement<S> {
    let n = cfg.n();
    let mut out = GroupAlgebraElement::zero();
    if k + l > n {
        return out;
    }
    for x in subsets_of_size(n, k) {
        let rest = cfg.full() & !x;
        let weight = subsets_of_size(n, l)
            .into_iter()
            .filter(|y| y & !rest == 0)
            .fold(S::zero(), |acc, y| acc + cfg.z_prod(y));
        if weight.is_zero() {
            continue;
        }
        for (p, c) in alpha::<S>(n, x, sign).terms() {
            out.add_term(p.clone(), c.clone() * weight.clone());
        }
    }
    out
}

/// `beta_{k,n-k}(u) = sum_l beta_{k,l} u^{n-k-l}`, which equals
/// `sum_{|X| = k} alpha_X prod_{i not in X} (u + z_i)`.
pub fn beta_shifted<S: Field>(cfg: &BetheConfig<S>, k: usize, sign: Sign) -> GroupAlgebraElement<Poly<S>> {
    let n = cfg.n();
    assert!(k <= n);
    let mut out = GroupAlgebraElement::zero();
    for x in subsets_of_size(n, k) {
        let weight = cfg.w_partial(cfg.full() & !x);
        for (p, c) in alpha::<S>(n, x, sign).terms() {
            out.add_term(p.clone(), weight.scale(c));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rat, Ring};
    use proptest::prelude::*;

    fn cfg(z: &[i64]) -> BetheConfig<Rat> {
        BetheConfig::new(z.iter().map(|&v| Rat::from_int(v)).collect())
    }

    fn q(v: i64) -> Rat {
        Rat::from_int(v)
    }

    #[test]
    fn alpha_small_cases() {
        let a = alpha::<Rat>(3, 0b011, Sign::Minus);
        assert_eq!(a.len(), 2);
        assert_eq!(a.coeff(&Perm::identity(3)), q(1));
        assert_eq!(a.coeff(&Perm::transposition(3, 0, 1)), q(-1));
        assert_eq!(alpha::<Rat>(3, 0, Sign::Plus), GroupAlgebraElement::scalar(3, q(1)));
        let full = alpha::<Rat>(3, 0b111, Sign::Plus);
        assert_eq!(full.len(), 6);
        assert!(full.terms().values().all(|c| *c == q(1)));
    }

    #[test]
    fn beta_edge_cases() {
        let c = cfg(&[2, 3, 5]);
        for s in [Sign::Plus, Sign::Minus] {
            assert_eq!(beta(&c, 0, 3, s), GroupAlgebraElement::scalar(3, q(30)));
            assert!(beta(&c, 2, 2, s).is_zero());
            // beta_{1,n-1} = z_1 .. z_n sum 1/z_i
            assert_eq!(beta(&c, 1, 2, s).coeff(&Perm::identity(3)), q(6 + 10 + 15) * q(1));
        }
    }

    #[test]
    fn shifted_beta_by_direct_expansion() {
        let c = cfg(&[1, 2, 3]);
        let n = 3;
        assert_eq!(
            beta_shifted(&c, 0, Sign::Minus),
            GroupAlgebraElement::scalar(n, c.w())
        );
        // k = 2: the three 2-subsets, each alpha^- times (u + z of the complement)
        let mut expect = GroupAlgebraElement::zero();
        for (x, other) in [(0b011u32, 2usize), (0b101, 1), (0b110, 0)] {
            let lin = Poly::linear(c.z()[other].clone());
            for (p, s) in alpha::<Rat>(n, x, Sign::Minus).terms() {
                expect.add_term(p.clone(), lin.scale(s));
            }
        }
        assert_eq!(beta_shifted(&c, 2, Sign::Minus), expect);
        let top = beta_shifted(&c, 3, Sign::Plus);
        assert_eq!(top, beta(&c, 3, 0, Sign::Plus).map_coeffs(|x| Poly::constant(x.clone())));
    }

    #[test]
    fn star_swaps_signs() {
        let c = cfg(&[1, -2, 4]);
        for k in 0..=3 {
            for l in 0..=3 - k {
                assert_eq!(beta(&c, k, l, Sign::Plus).star(), beta(&c, k, l, Sign::Minus));
            }
        }
    }

    proptest! {
        #[test]
        fn translation_invariance(z in proptest::collection::vec(-5i64..6, 1..5), t in -4i64..5) {
            let c = cfg(&z);
            let moved = c.translate(&q(t));
            for k in 0..=c.n() {
                for s in [Sign::Plus, Sign::Minus] {
                    let at_t = beta_shifted(&c, k, s).map_coeffs(|p| p.eval(&q(t)));
                    prop_assert_eq!(at_t, beta(&moved, k, c.n() - k, s));
                }
            }
        }
    }
}
