use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering as AtomicOrdering};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ring_via_ops, Field, ParseError, Rat};

pub const DEFAULT_PRECISION_BITS: u32 = 256;

static CONSTANT_PRECISION: AtomicU32 = AtomicU32::new(DEFAULT_PRECISION_BITS);

/// Precision given to constants that carry none of their own (`one`,
/// `from_i64`, `zero`). Arithmetic results take the larger precision of
/// their operands, so a constant below the working precision would round
/// quotients such as `1/3` too early.
pub fn set_constant_precision(bits: u32) {
    CONSTANT_PRECISION.store(bits.max(64), AtomicOrdering::Relaxed);
}

pub fn constant_precision() -> u32 {
    CONSTANT_PRECISION.load(AtomicOrdering::Relaxed)
}

/// Binary floating point value with an explicit precision in bits.
#[derive(Clone)]
pub struct BigFloat(Float);

impl BigFloat {
    pub fn with_prec(v: f64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, v))
    }

    pub fn from_i64(v: i64) -> Self {
        BigFloat(Float::with_val(constant_precision(), v))
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let q = Rational::from((to_integer(r.numer()), to_integer(r.denom())));
        BigFloat(Float::with_val(prec, &q))
    }

    pub fn zero(prec: u32) -> Self {
        BigFloat(Float::with_val(prec, 0))
    }

    pub fn pi(prec: u32) -> Self {
        BigFloat(Float::with_val(prec, Constant::Pi))
    }

    /// Parses a decimal string such as `-1.25e-3`.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Self, ParseError> {
        Float::parse(s.trim())
            .map(|v| BigFloat(Float::with_val(prec, v)))
            .map_err(|_| ParseError::Decimal(s.to_string()))
    }

    /// `10^-digits` at the given precision.
    pub fn ten_pow_neg(digits: u32, prec: u32) -> Self {
        let ten = Float::with_val(prec, 10);
        BigFloat(Float::with_val(prec, ten.pow(-(digits as i32))))
    }

    /// `2^-e` at the given precision.
    pub fn two_pow_neg(e: u32, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, Float::u_exp(1, -(e as i32))))
    }

    pub fn precision(&self) -> u32 {
        self.0.prec()
    }

    pub fn set_precision(&self, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, &self.0))
    }

    pub fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// Nearest rational with the exact binary value of this float.
    pub fn to_rat(&self) -> Option<Rat> {
        let q = self.0.to_rational()?;
        let (n, d) = q.into_numer_denom();
        Some(Rat::from_bigints(
            n.to_string().parse().ok()?,
            d.to_string().parse().ok()?,
        ))
    }

    /// Decimal representation with enough digits to round-trip at this precision.
    pub fn to_decimal(&self) -> String {
        let digits = decimal_digits(self.precision());
        self.0.to_string_radix(10, Some(digits))
    }

    pub fn raw(&self) -> &Float {
        &self.0
    }
}

fn to_integer(b: &num_bigint::BigInt) -> Integer {
    Integer::from_str_radix(&b.to_str_radix(16), 16).expect("bigint conversion")
}

fn decimal_digits(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

fn bin_prec(a: &Float, b: &Float) -> u32 {
    a.prec().max(b.prec())
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&o.0)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string_radix(10, Some(20)))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal())
    }
}

macro_rules! float_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, o: BigFloat) -> BigFloat {
                let p = bin_prec(&self.0, &o.0);
                BigFloat(Float::with_val(p, (&self.0).$m(&o.0)))
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $m(self, o: &'a BigFloat) -> BigFloat {
                let p = bin_prec(&self.0, &o.0);
                BigFloat(Float::with_val(p, (&self.0).$m(&o.0)))
            }
        }
    };
}

float_binop!(Add, add);
float_binop!(Sub, sub);
float_binop!(Mul, mul);
float_binop!(Div, div);

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Float::with_val(self.0.prec(), -&self.0))
    }
}

#[derive(Serialize, Deserialize)]
struct FloatRepr {
    value: String,
    precision_bits: u32,
}

impl Serialize for BigFloat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FloatRepr {
            value: self.to_decimal(),
            precision_bits: self.precision(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigFloat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FloatRepr::deserialize(d)?;
        BigFloat::parse_decimal(&r.value, r.precision_bits).map_err(serde::de::Error::custom)
    }
}

/// Complex number built from two [`BigFloat`] parts of a common precision.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn real(re: BigFloat) -> Self {
        let p = re.precision();
        BigComplex {
            re,
            im: BigFloat::zero(p),
        }
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        BigComplex::real(BigFloat::from_rat(r, prec))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        BigComplex::real(BigFloat::with_prec(v, prec))
    }

    pub fn zero_prec(prec: u32) -> Self {
        BigComplex::real(BigFloat::zero(prec))
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn set_precision(&self, prec: u32) -> Self {
        BigComplex::new(self.re.set_precision(prec), self.im.set_precision(prec))
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFloat {
        let p = self.precision();
        BigFloat(Float::with_val(p, self.re.0.hypot_ref(&self.im.0)))
    }

    pub fn sqrt(&self) -> Self {
        // principal branch: sqrt((|z|+re)/2) + i sign(im) sqrt((|z|-re)/2)
        let r = self.abs();
        let two = BigFloat::from_i64(2);
        let a = ((&r + &self.re) / two.clone()).sqrt();
        let b = ((&r - &self.re) / two).sqrt();
        let b = if self.im.is_sign_negative() { -b } else { b };
        BigComplex::new(a, b)
    }

    pub fn scale(&self, s: &BigFloat) -> Self {
        BigComplex::new(&self.re * s, &self.im * s)
    }

    pub fn to_decimal_pair(&self) -> (String, String) {
        (self.re.to_decimal(), self.im.to_decimal())
    }

    /// Rounds both parts to a multiple of `quantum`; used to turn numerically
    /// equal values into structurally equal ones.
    pub fn quantize(&self, quantum: &BigFloat) -> (Integer, Integer) {
        let q = |x: &BigFloat| {
            let v = Float::with_val(x.precision(), &x.0 / &quantum.0);
            v.round().to_integer().unwrap_or_default()
        };
        (q(&self.re), q(&self.im))
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, o: BigComplex) -> BigComplex {
        BigComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, o: BigComplex) -> BigComplex {
        BigComplex::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, o: BigComplex) -> BigComplex {
        &self * &o
    }
}

impl<'a> Mul<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn mul(self, o: &'a BigComplex) -> BigComplex {
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        BigComplex::new(re, im)
    }
}

impl<'a> Add<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn add(self, o: &'a BigComplex) -> BigComplex {
        BigComplex::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a BigComplex> for &'a BigComplex {
    type Output = BigComplex;
    fn sub(self, o: &'a BigComplex) -> BigComplex {
        BigComplex::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Div for BigComplex {
    type Output = BigComplex;
    fn div(self, o: BigComplex) -> BigComplex {
        let d = o.norm_sqr();
        let num = &self * &o.conj();
        BigComplex::new(&num.re / &d, &num.im / &d)
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(-self.re, -self.im)
    }
}

ring_via_ops!(
    BigComplex,
    BigComplex::zero_prec(constant_precision()),
    |c: &BigComplex| c.re.is_zero() && c.im.is_zero()
);

impl Field for BigComplex {
    fn one() -> Self {
        BigComplex::real(BigFloat::from_i64(1))
    }
    fn from_i64(v: i64) -> Self {
        BigComplex::real(BigFloat::from_i64(v))
    }
    fn mul_rat(&self, r: &Rat) -> Self {
        let f = BigFloat::from_rat(r, self.precision());
        self.scale(&f)
    }
    fn inv(&self) -> Self {
        BigComplex::real(BigFloat::from_i64(1).set_precision(self.precision())) / self.clone()
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: String,
    im: String,
    precision_bits: u32,
}

impl Serialize for BigComplex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComplexRepr {
            re: self.re.to_decimal(),
            im: self.im.to_decimal(),
            precision_bits: self.precision(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BigComplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = ComplexRepr::deserialize(d)?;
        let re = BigFloat::parse_decimal(&r.re, r.precision_bits).map_err(serde::de::Error::custom)?;
        let im = BigFloat::parse_decimal(&r.im, r.precision_bits).map_err(serde::de::Error::custom)?;
        Ok(BigComplex::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;

    #[test]
    fn precision_propagates_to_max() {
        let a = BigComplex::from_rat(&Rat::new(1, 3), 256);
        let b = BigComplex::from_i64(2);
        assert_eq!((a.clone() * b).precision(), 256);
        assert_eq!((BigComplex::zero() + a).precision(), 256);
    }

    #[test]
    fn third_is_accurate() {
        let a = BigComplex::from_rat(&Rat::new(1, 3), 256);
        let three = BigComplex::from_i64(3);
        let err = (a * three - BigComplex::one()).abs();
        assert!(err < BigFloat::ten_pow_neg(70, 256));
    }

    #[test]
    fn complex_division_and_sqrt() {
        let p = 256;
        let z = BigComplex::new(BigFloat::with_prec(3.0, p), BigFloat::with_prec(-4.0, p));
        let r = z.sqrt();
        let back = &r * &r;
        assert!((back - z.clone()).abs() < BigFloat::ten_pow_neg(70, p));
        let q = z.clone() / z;
        assert!((q - BigComplex::one()).abs() < BigFloat::ten_pow_neg(70, p));
    }

    #[test]
    fn serde_keeps_precision() {
        let a = BigComplex::from_rat(&Rat::new(-5, 7), 256);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"precision_bits\":256"));
        let b: BigComplex = serde_json::from_str(&s).unwrap();
        assert!((a - b).abs() < BigFloat::ten_pow_neg(75, 256));
    }
}
