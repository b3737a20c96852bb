use serde::{Deserialize, Serialize};

use crate::exactalg::{BigComplex, Field, Poly, Rat, RatFunc, WFrac};
use crate::weylalg::DiffOp;

/// `Ind_k = (-1)^(n-k) a_k`, where `a_k` is the coefficient of `u^(k-n)` in
/// the expansion at infinity of the coefficient of `d^k`. Defined up to a
/// common scalar; stored with the last nonzero entry equal to 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndicialVector<S> {
    pub entries: Vec<S>,
}

impl<S: Field> IndicialVector<S> {
    fn from_leading(a: Vec<S>) -> Self {
        let n = a.len() - 1;
        let mut entries: Vec<S> = a
            .into_iter()
            .enumerate()
            .map(|(k, x)| if (n - k) % 2 == 1 { -x } else { x })
            .collect();
        if let Some(last) = entries.iter().rposition(|x| !x.is_zero()) {
            let inv = entries[last].inv();
            for x in entries.iter_mut() {
                *x = x.clone() * inv.clone();
            }
        }
        IndicialVector { entries }
    }

    pub fn order(&self) -> usize {
        self.entries.len() - 1
    }

    /// Whether `self = r * other` for some scalar `r`, with `close` deciding
    /// when a scalar is zero.
    pub fn proportional_to(&self, other: &[S], close: impl Fn(&S) -> bool) -> bool {
        if other.len() != self.entries.len() {
            return false;
        }
        let Some(k) = other.iter().rposition(|x| !close(x)) else {
            return self.entries.iter().all(&close);
        };
        let r = self.entries[k].clone() / other[k].clone();
        self.entries
            .iter()
            .zip(other)
            .all(|(a, b)| close(&(a.clone() - r.clone() * b.clone())))
    }
}

/// Indicial vector of an operator with rational-function coefficients.
pub fn indicial(op: &DiffOp<RatFunc>) -> IndicialVector<Rat> {
    let n = op.order().expect("zero operator") as i64;
    IndicialVector::from_leading(
        op.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.coeff_at_infinity(k as i64 - n))
            .collect(),
    )
}

/// Indicial vector of an operator with coefficients over a power of `w`.
pub fn indicial_numeric(op: &DiffOp<WFrac<BigComplex>>) -> IndicialVector<BigComplex> {
    let n = op.order().expect("zero operator") as i64;
    IndicialVector::from_leading(
        op.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| c.coeff_at_infinity(k as i64 - n))
            .collect(),
    )
}

/// `sum_k a_k x (x-1) .. (x-k+1)` with `a_k = (-1)^(n-k) Ind_k`; its roots
/// are the exponents at infinity.
pub fn indicial_polynomial<S: Field>(iv: &IndicialVector<S>) -> Poly<S> {
    let n = iv.order();
    let mut acc = Poly::zero();
    let mut falling = Poly::one();
    for (k, x) in iv.entries.iter().enumerate() {
        let a = if (n - k) % 2 == 1 { -x.clone() } else { x.clone() };
        acc = &acc + &falling.scale(&a);
        falling = &falling * &Poly::linear(S::from_i64(-(k as i64)));
    }
    acc
}

/// Non-negative integer roots with multiplicity, in decreasing order.
pub fn integer_roots(p: &Poly<Rat>) -> Vec<usize> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let lc = p.leading().unwrap().to_f64().abs();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().abs() / lc)
        .fold(0.0, f64::max);
    let bound = (bound + 1.0).ceil() as usize;
    let mut q = p.clone();
    let mut out = Vec::new();
    for x in (0..=bound).rev() {
        let r = Poly::linear(Rat::from_int(-(x as i64)));
        loop {
            let (quot, rem) = q.div_rem(&r);
            if !rem.is_zero() || q.degree() == Some(0) {
                break;
            }
            out.push(x);
            q = quot;
        }
        if out.len() == deg {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Ring;
    use crate::repn::Partition;
    use crate::schubert::{c_lambda, SchubertData};
    use crate::wronskian::PolySubspace;

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(num), Poly::from_ints(den))
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn second_derivative() {
        let v = PolySubspace::new(vec![Poly::one(), Poly::from_ints(&[0, 1])]).unwrap();
        assert_eq!(indicial(&v.fundamental_operator()).entries, ints(&[0, 0, 1]));
        assert_eq!(indicial(&DiffOp::<RatFunc>::d_power(2)).entries, ints(&[0, 0, 1]));
    }

    #[test]
    fn example_operator() {
        let w = [0, -3, 0, 1];
        let op = DiffOp::new(vec![
            RatFunc::zero(),
            rf(&[3, 3], &w),
            rf(&[3, 0, -3], &w),
            RatFunc::one(),
        ]);
        let iv = indicial(&op);
        assert_eq!(iv.entries, ints(&[0, 3, 3, 1]));
        assert!(iv.proportional_to(&c_lambda(&"2,1".parse().unwrap()), |x| x.is_zero()));
        assert_eq!(integer_roots(&indicial_polynomial(&iv)), vec![4, 2, 0]);
    }

    #[test]
    fn recurrence_matches_monomial_cells() {
        // the indicial vector only depends on the cell; compare with the
        // span of u^d_i
        for n in 1..=4 {
            for l in Partition::all(n) {
                let sd = SchubertData::new(&l, n).unwrap();
                let v = PolySubspace::new(sd.d.iter().map(|&d| Poly::monomial(Rat::one(), d)).collect()).unwrap();
                let iv = indicial(&v.fundamental_operator());
                assert!(iv.proportional_to(&c_lambda(&l), |x| x.is_zero()), "{}", l);
                assert_eq!(integer_roots(&indicial_polynomial(&iv)), sd.d);
            }
        }
    }
}
