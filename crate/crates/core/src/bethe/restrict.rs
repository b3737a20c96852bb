use serde::{Deserialize, Serialize};

use crate::exactalg::{BigComplex, BigFloat, Poly, Ring, WFrac};
use crate::repn::EigenspaceRecord;
use crate::symgroup::{BetheConfig, Sign};
use crate::weylalg::DiffOp;

/// A scalar operator `sum_k (numerators[k] / w^w_power) d^k`, the portable
/// form of a restricted Bethe operator.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScalarOperator {
    pub w_power: u32,
    pub numerators: Vec<Poly<BigComplex>>,
}

impl ScalarOperator {
    pub fn from_op(op: &DiffOp<WFrac<BigComplex>>) -> Self {
        let w_power = op.coeffs().iter().map(|c| c.pow()).max().unwrap_or(0);
        ScalarOperator {
            w_power,
            numerators: op.coeffs().iter().map(|c| c.num_over(w_power)).collect(),
        }
    }

    pub fn to_op(&self, w: &Poly<BigComplex>) -> DiffOp<WFrac<BigComplex>> {
        DiffOp::new(
            self.numerators
                .iter()
                .map(|p| WFrac::new(p.clone(), self.w_power, w))
                .collect(),
        )
    }
}

/// `beta^sign_{k,n-k,E}(u) = sum_l beta^sign_{k,l,E} u^(n-k-l)`
fn beta_poly(rec: &EigenspaceRecord, n: usize, k: usize, sign: Sign) -> Poly<BigComplex> {
    let mut c = vec![BigComplex::zero(); n - k + 1];
    for l in 0..=n - k {
        c[n - k - l] = rec.eigenvalue(sign, k, l).clone();
    }
    Poly::new(c)
}

/// The scalar operators `(D-_E, D+_E)` obtained by replacing every Bethe
/// generator with its eigenvalue on `rec`.
pub fn restrict(
    cfg: &BetheConfig<BigComplex>,
    rec: &EigenspaceRecord,
) -> (DiffOp<WFrac<BigComplex>>, DiffOp<WFrac<BigComplex>>) {
    let n = cfg.n();
    let w = cfg.w();
    let mut minus = DiffOp::zero();
    let mut plus = DiffOp::zero();
    for k in 0..=n {
        let bm = beta_poly(rec, n, k, Sign::Minus);
        let bm = if k % 2 == 1 { -&bm } else { bm };
        minus = minus.add(&DiffOp::monomial(WFrac::new(bm, 1, &w), n - k));
        let bp = WFrac::new(beta_poly(rec, n, k, Sign::Plus), 1, &w);
        plus = plus.add(&DiffOp::d_power_times(n - k, &bp));
    }
    (minus, plus)
}

pub(crate) fn poly_norm(p: &Poly<BigComplex>) -> BigFloat {
    p.coeffs()
        .iter()
        .fold(BigFloat::from_i64(0), |m, c| m.max(c.abs()))
}

/// Largest coefficient of `op - d^order`, each coefficient measured
/// relative to the matching power of `w`.
pub fn product_residual(op: &DiffOp<WFrac<BigComplex>>, order: usize, w: &Poly<BigComplex>) -> BigFloat {
    let mut r = BigFloat::from_i64(0);
    for j in 0..op.coeffs().len().max(order + 1) {
        let c = op.coeff(j);
        let wp = w.pow(c.pow());
        let mut num = c.num().clone();
        if j == order {
            num = &num - &wp;
        }
        r = r.max(poly_norm(&num) / poly_norm(&wp));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;
    use crate::repn::{simultaneous_eigenspaces, IrrepModel, Partition};

    const PREC: u32 = 256;

    fn example_cfg() -> BetheConfig<BigComplex> {
        let s = BigComplex::real(BigFloat::from_i64(3).set_precision(PREC).sqrt());
        BetheConfig::new(vec![s.clone(), -s, BigComplex::zero_prec(PREC)])
    }

    fn c(v: i64) -> BigComplex {
        BigComplex::from_rat(&Rat::from_int(v), PREC)
    }

    #[test]
    fn example_restrictions() {
        let cfg = example_cfg();
        let w = cfg.w();
        let model = IrrepModel::build(&Partition::new(vec![2, 1]).unwrap()).unwrap();
        let tol = BigFloat::ten_pow_neg(25, PREC);
        let recs = simultaneous_eigenspaces(&model, &cfg, &tol, 7).unwrap();
        let mut middles = Vec::new();
        for rec in &recs {
            let (m, p) = restrict(&cfg, rec);
            // d^3 - ((3u^2-3)/w) d^2 + ((3u +- 3)/w) d
            let ops = ScalarOperator::from_op(&m);
            assert_eq!(ops.w_power, 1);
            assert!(poly_norm(&(&ops.numerators[3] - &w)) < tol);
            let two = &ops.numerators[2] + &Poly::new(vec![c(-3), c(0), c(3)]);
            assert!(poly_norm(&two) < tol);
            assert!(poly_norm(&ops.numerators[0]) < tol);
            let one = &ops.numerators[1];
            assert!((one.coeff(1) - c(3)).abs() < tol);
            middles.push(one.coeff(0).re.to_f64().round() as i64);
            assert!(product_residual(&p.mul(&m), 6, &w) < tol);
        }
        middles.sort();
        assert_eq!(middles, vec![-3, 3]);
    }

    #[test]
    fn trivial_module_kills_constants() {
        let cfg = example_cfg();
        let model = IrrepModel::build(&Partition::row(3)).unwrap();
        let tol = BigFloat::ten_pow_neg(25, PREC);
        let rec = &simultaneous_eigenspaces(&model, &cfg, &tol, 1).unwrap()[0];
        let (m, _) = restrict(&cfg, rec);
        assert!(poly_norm(m.coeff(0).num()) < tol);
    }
}
