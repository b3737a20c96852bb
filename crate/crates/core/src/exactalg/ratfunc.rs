use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{ring_via_ops, DiffRing, Field, Poly, Rat, Ring};

/// Exact rational function `num / den` with `gcd(num, den) = 1` and `den`
/// monic, so equality is structural.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct RatFunc {
    num: Poly<Rat>,
    den: Poly<Rat>,
}

impl RatFunc {
    pub fn new(num: Poly<Rat>, den: Poly<Rat>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().unwrap().inv();
        RatFunc {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly<Rat>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// `1 / p`
    pub fn recip_poly(p: &Poly<Rat>) -> Self {
        RatFunc::new(Poly::one(), p.clone())
    }

    pub fn num(&self) -> &Poly<Rat> {
        &self.num
    }

    pub fn den(&self) -> &Poly<Rat> {
        &self.den
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Scalar `c` such that `self / c` is a ratio of monic polynomials.
    pub fn leading_coefficient(&self) -> Rat {
        self.num.leading().cloned().unwrap_or_else(<Rat as Ring>::zero)
    }

    pub fn make_monic(&self) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        RatFunc {
            num: self.num.make_monic(),
            den: self.den.clone(),
        }
    }

    /// Coefficient of `u^k` in the expansion at infinity, valid for
    /// `k >= degree`.
    pub fn coeff_at_infinity(&self, k: i64) -> Rat {
        match self.degree() {
            Some(d) if d == k => self.leading_coefficient(),
            _ => <Rat as Ring>::zero(),
        }
    }

    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if <Rat as Ring>::is_zero(&d) {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        RatFunc::new(self.num.scale(c), self.den.clone())
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &'a RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::new(n, &self.den * &o.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self + &(-o)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &'a RatFunc) -> RatFunc {
        if self.num.is_zero() || o.num.is_zero() {
            return RatFunc::from_poly(Poly::zero());
        }
        if self.is_poly() && o.is_poly() {
            let lc = self.den.leading().unwrap().clone() * o.den.leading().unwrap().clone();
            return RatFunc::from_poly((&self.num * &o.num).scale(&lc.inv()));
        }
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, o: RatFunc) -> RatFunc {
        assert!(!o.num.is_zero(), "division by zero rational function");
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

ring_via_ops!(
    RatFunc,
    RatFunc::from_poly(Poly::zero()),
    |r: &RatFunc| r.num.is_zero()
);

impl Field for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn from_i64(v: i64) -> Self {
        RatFunc::constant(Rat::from_int(v))
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        self.scale(r)
    }
    fn inv(&self) -> Self {
        RatFunc::one_over(self)
    }
    fn magnitude(&self) -> f64 {
        if self.num.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

impl RatFunc {
    fn one_over(r: &RatFunc) -> RatFunc {
        RatFunc::new(r.den.clone(), r.num.clone())
    }
}

impl DiffRing for RatFunc {
    fn derivative(&self) -> Self {
        RatFunc::derivative(self)
    }
}

impl From<Poly<Rat>> for RatFunc {
    fn from(p: Poly<Rat>) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
