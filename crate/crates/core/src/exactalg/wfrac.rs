use std::fmt;
use std::sync::Arc;

use super::{DiffRing, Field, Poly, Rat, RatFunc, Ring};

#[derive(PartialEq)]
struct Base<S> {
    w: Poly<S>,
    dw: Poly<S>,
}

/// A function `num / w^pow` for one fixed polynomial `w`.
///
/// Numeric coefficient fields have no reliable gcd, so restricted Bethe
/// operators keep their denominators as explicit powers of `w` instead of
/// reducing rational functions.
#[derive(Clone)]
pub struct WFrac<S> {
    num: Poly<S>,
    pow: u32,
    base: Option<Arc<Base<S>>>,
}

impl<S: Field> WFrac<S> {
    /// The constant polynomial 1 attached to the base `w`.
    pub fn one(w: &Poly<S>) -> Self {
        WFrac::new(Poly::one(), 0, w)
    }

    pub fn new(num: Poly<S>, pow: u32, w: &Poly<S>) -> Self {
        WFrac {
            num,
            pow,
            base: Some(Arc::new(Base {
                w: w.clone(),
                dw: w.derivative(),
            })),
        }
    }

    /// Same base as `self`, new value.
    pub fn sibling(&self, num: Poly<S>, pow: u32) -> Self {
        WFrac {
            num,
            pow,
            base: self.base.clone(),
        }
    }

    pub fn num(&self) -> &Poly<S> {
        &self.num
    }

    pub fn pow(&self) -> u32 {
        self.pow
    }

    pub fn w(&self) -> Option<&Poly<S>> {
        self.base.as_ref().map(|b| &b.w)
    }

    /// Numerator after rewriting over `w^target` (`target >= pow`).
    pub fn num_over(&self, target: u32) -> Poly<S> {
        assert!(target >= self.pow, "cannot lower the w-power");
        match &self.base {
            Some(b) if target > self.pow => &self.num * &b.w.pow(target - self.pow),
            _ => self.num.clone(),
        }
    }

    fn merged_base(&self, o: &Self) -> Option<Arc<Base<S>>> {
        self.base.clone().or_else(|| o.base.clone())
    }

    /// Coefficient of `u^k` at infinity (`k >= degree`), with `w` monic.
    pub fn coeff_at_infinity(&self, k: i64) -> S {
        let wdeg = self.w().and_then(|w| w.degree()).unwrap_or(0) as i64;
        let target = k + wdeg * self.pow as i64;
        if target < 0 {
            return S::zero();
        }
        let lc = self
            .w()
            .and_then(|w| w.leading().cloned())
            .unwrap_or_else(S::one);
        let mut scale = S::one();
        for _ in 0..self.pow {
            scale = scale * lc.clone();
        }
        self.num.coeff(target as usize) / scale
    }
}

impl WFrac<Rat> {
    pub fn to_ratfunc(&self) -> RatFunc {
        match self.w() {
            Some(w) => RatFunc::new(self.num.clone(), w.pow(self.pow)),
            None => RatFunc::from_poly(self.num.clone()),
        }
    }
}

impl<S: Field> PartialEq for WFrac<S> {
    fn eq(&self, o: &Self) -> bool {
        let p = self.pow.max(o.pow);
        self.num_over(p) == o.num_over(p)
    }
}

impl<S: Field> Ring for WFrac<S> {
    fn zero() -> Self {
        WFrac {
            num: Poly::zero(),
            pow: 0,
            base: None,
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        let p = self.pow.max(o.pow);
        WFrac {
            num: &self.num_over(p) + &o.num_over(p),
            pow: p,
            base: self.merged_base(o),
        }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        WFrac {
            num: &self.num * &o.num,
            pow: self.pow + o.pow,
            base: self.merged_base(o),
        }
    }
    fn negated(&self) -> Self {
        WFrac {
            num: -&self.num,
            pow: self.pow,
            base: self.base.clone(),
        }
    }
    fn scale_int(&self, k: i64) -> Self {
        WFrac {
            num: self.num.scale(&S::from_i64(k)),
            pow: self.pow,
            base: self.base.clone(),
        }
    }
}

impl<S: Field> DiffRing for WFrac<S> {
    /// `(P / w^j)' = (P' w - j P w') / w^(j+1)`
    fn derivative(&self) -> Self {
        match &self.base {
            Some(b) if self.pow > 0 => {
                let t1 = &self.num.derivative() * &b.w;
                let t2 = (&self.num * &b.dw).scale(&S::from_i64(self.pow as i64));
                WFrac {
                    num: &t1 - &t2,
                    pow: self.pow + 1,
                    base: self.base.clone(),
                }
            }
            _ => WFrac {
                num: self.num.derivative(),
                pow: self.pow,
                base: self.base.clone(),
            },
        }
    }
}

impl<S: Field> fmt::Debug for WFrac<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / w^{}", self.num, self.pow)
    }
}

impl<S: Field + fmt::Display> fmt::Display for WFrac<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pow == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / w^{}", self.num, self.pow)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_ratfunc(x: &WFrac<Rat>, _w: &Poly<Rat>) -> RatFunc {
        x.to_ratfunc()
    }

    #[test]
    fn derivative_agrees_with_ratfunc() {
        let w = Poly::from_ints(&[0, -3, 0, 1]);
        let x = WFrac::new(Poly::from_ints(&[1, 2, 3]), 2, &w);
        let mut a = x.clone();
        let mut b = to_ratfunc(&x, &w);
        for _ in 0..4 {
            a = a.derivative();
            b = b.derivative();
            assert_eq!(to_ratfunc(&a, &w), b);
        }
        let s = a.plus(&x).times(&x);
        assert_eq!(to_ratfunc(&s, &w), (b + to_ratfunc(&x, &w)) * to_ratfunc(&x, &w));
    }
}
