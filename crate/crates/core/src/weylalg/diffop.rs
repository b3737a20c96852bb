use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::{DiffRing, Field};

/// A differential operator `sum_j psi_j d^j` in canonical form: coefficients
/// stand to the left of the powers of `d = d/du`, trailing zeros removed.
///
/// The coefficient ring may be noncommutative (group-algebra valued); it only
/// needs a derivation.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiffOp<C> {
    coeffs: Vec<C>,
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

impl<C: DiffRing> DiffOp<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    /// `c d^k`
    pub fn monomial(c: C, k: usize) -> Self {
        let mut v = vec![C::zero(); k + 1];
        v[k] = c;
        DiffOp::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `d^j` (zero past the order).
    pub fn coeff(&self, j: usize) -> C {
        self.coeffs.get(j).cloned().unwrap_or_else(C::zero)
    }

    pub fn map<D: DiffRing>(&self, f: impl Fn(&C) -> D) -> DiffOp<D> {
        DiffOp::new(self.coeffs.iter().map(f).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::new((0..n).map(|j| self.coeff(j).plus(&o.coeff(j))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        DiffOp::new((0..n).map(|j| self.coeff(j).minus(&o.coeff(j))).collect())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negated())
    }

    /// `c * self`
    pub fn scale_left(&self, c: &C) -> Self {
        self.map(|x| c.times(x))
    }

    /// Product in canonical form, using
    /// `a d^i * b d^j = sum_m C(i, m) a b^(m) d^(i - m + j)`.
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return DiffOp::zero();
        }
        let top = self.coeffs.len() - 1;
        // derivatives of each right coefficient up to the left order
        let ders: Vec<Vec<C>> = o
            .coeffs
            .iter()
            .map(|b| {
                let mut v = Vec::with_capacity(top + 1);
                let mut cur = b.clone();
                for m in 0..=top {
                    if m > 0 {
                        cur = cur.derivative();
                    }
                    v.push(cur.clone());
                }
                v
            })
            .collect();
        let mut out = vec![C::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, bd) in ders.iter().enumerate() {
                for (m, b) in bd.iter().enumerate().take(i + 1) {
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.times(b).scale_int(binomial(i, m));
                    let k = i - m + j;
                    out[k] = out[k].plus(&t);
                }
            }
        }
        DiffOp::new(out)
    }

    /// Applies the operator to a function: `sum_j psi_j g^(j)`.
    pub fn apply(&self, g: &C) -> C {
        let mut acc = C::zero();
        let mut d = g.clone();
        for (j, c) in self.coeffs.iter().enumerate() {
            if j > 0 {
                d = d.derivative();
            }
            if !c.is_zero() {
                acc = acc.plus(&c.times(&d));
            }
        }
        acc
    }

    /// `d^k * c` in canonical form.
    pub fn d_power_times(k: usize, c: &C) -> Self {
        let mut out = vec![C::zero(); k + 1];
        let mut cur = c.clone();
        for m in 0..=k {
            if m > 0 {
                cur = cur.derivative();
            }
            out[k - m] = cur.scale_int(binomial(k, m));
        }
        DiffOp::new(out)
    }

    /// The anti-automorphism with `d -> -d` and coefficients sent through
    /// `on_coeff` (identity on scalar functions, `sigma -> sgn(sigma)
    /// sigma^-1` on permutations).
    pub fn omega(&self, on_coeff: impl Fn(&C) -> C) -> Self {
        // omega(psi_j d^j) = (-d)^j omega(psi_j)
        let mut acc = DiffOp::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut t = DiffOp::d_power_times(j, &on_coeff(c));
            if j % 2 == 1 {
                t = t.neg();
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl<S: Field + DiffRing> DiffOp<S> {
    /// `d^k` over a unital coefficient field.
    pub fn d_power(k: usize) -> Self {
        DiffOp::monomial(S::one(), k)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == S::one())
    }
}

impl<C: fmt::Debug> fmt::Debug for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "[{:?}]", c)?,
                1 => write!(f, "[{:?}] d", c)?,
                _ => write!(f, "[{:?}] d^{}", c, j)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Poly, Rat, RatFunc, Ring};
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    fn u() -> RatFunc {
        rf(&[0, 1], &[1])
    }

    #[test]
    fn defining_relation() {
        // d * u = u d + 1
        let d = DiffOp::<RatFunc>::d_power(1);
        let lhs = d.mul(&DiffOp::monomial(u(), 0));
        assert_eq!(lhs, DiffOp::new(vec![RatFunc::one(), u()]));
    }

    #[test]
    fn product_agrees_with_composition() {
        // (d - 1/u)(u d) on u, u^2, u^3
        let a = DiffOp::new(vec![rf(&[-1], &[0, 1]), RatFunc::one()]);
        let b = DiffOp::monomial(u(), 1);
        let ab = a.mul(&b);
        assert_eq!(ab.order(), Some(2));
        assert_eq!(ab.coeff(2), u());
        for k in 1..4 {
            let g = RatFunc::from_poly(Poly::monomial(Rat::from_int(1), k));
            assert_eq!(ab.apply(&g), a.apply(&b.apply(&g)));
        }
    }

    #[test]
    fn apply_examples() {
        let g = u();
        assert!(DiffOp::<RatFunc>::d_power(2).apply(&g).is_zero());
        let dv = DiffOp::new(vec![rf(&[-1], &[0, 1]), RatFunc::one()]);
        assert!(dv.apply(&g).is_zero());
    }

    #[test]
    fn omega_on_generators() {
        let d = DiffOp::<RatFunc>::d_power(1);
        assert_eq!(d.omega(|c| c.clone()), d.neg());
        let g = DiffOp::monomial(rf(&[1], &[1, 1]), 0);
        assert_eq!(g.omega(|c| c.clone()), g);
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        let p = proptest::collection::vec(-3i64..4, 1..3);
        (p.clone(), proptest::collection::vec(-3i64..4, 0..2)).prop_map(|(a, b)| {
            let mut den = b;
            den.push(1);
            RatFunc::new(Poly::from_ints(&a), Poly::from_ints(&den))
        })
    }

    fn arb_op() -> impl Strategy<Value = DiffOp<RatFunc>> {
        proptest::collection::vec(arb_rf(), 0..4).prop_map(DiffOp::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn associative(a in arb_op(), b in arb_op(), c in arb_op()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn apply_is_a_module_action(a in arb_op(), b in arb_op(), g in arb_rf()) {
            prop_assert_eq!(a.mul(&b).apply(&g), a.apply(&b.apply(&g)));
        }

        #[test]
        fn omega_reverses_products(a in arb_op(), b in arb_op()) {
            let id = |c: &RatFunc| c.clone();
            prop_assert_eq!(a.mul(&b).omega(id), b.omega(id).mul(&a.omega(id)));
            prop_assert_eq!(a.omega(id).omega(id), a);
        }
    }
}
