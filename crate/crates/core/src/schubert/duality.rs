use serde::{Deserialize, Serialize};

use super::{canonical_coords, grassmann_dual, theta, CanonicalCoords, SchubertError};
use crate::bethe::SolutionRecord;
use crate::exactalg::{BigComplex, BigFloat, Poly};
use crate::symgroup::Sign;
use crate::weylalg::DiffOp;

/// Pairing of one solution with its sign-twisted partner.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityPair {
    pub index: usize,
    pub partner: usize,
    /// distance between the `beta+` tuple of the record and the `beta-`
    /// tuple of the partner, relative to the tuple size
    pub tuple_distance: BigFloat,
    pub coords: CanonicalCoords<BigComplex>,
    pub dual_coords: CanonicalCoords<BigComplex>,
    /// `dual(V_E)` against `V_partner`
    pub coords_residual: BigFloat,
    /// `Theta(w D-_E)` against `w D-_partner`
    pub theta_residual: BigFloat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityReport {
    pub pairs: Vec<DualityPair>,
    pub unpaired: Vec<(usize, String)>,
    pub max_coords_residual: BigFloat,
    pub max_theta_residual: BigFloat,
    pub passed: bool,
}

fn coeff_scale<'a>(vals: impl Iterator<Item = &'a BigComplex>) -> BigFloat {
    vals.fold(BigFloat::from_i64(1), |m, c| m.max(c.abs()))
}

fn coords_distance(a: &CanonicalCoords<BigComplex>, b: &CanonicalCoords<BigComplex>) -> BigFloat {
    if a.schubert != b.schubert {
        return BigFloat::from_i64(1);
    }
    let scale = coeff_scale(a.v.values().chain(b.v.values()));
    let mut m = BigFloat::from_i64(0);
    for (k, x) in &a.v {
        m = m.max((x.clone() - b.v[k].clone()).abs());
    }
    m / scale
}

fn op_distance(a: &DiffOp<Poly<BigComplex>>, b: &DiffOp<Poly<BigComplex>>) -> BigFloat {
    let len = a.coeffs().len().max(b.coeffs().len());
    let scale = coeff_scale(a.coeffs().iter().chain(b.coeffs()).flat_map(|p| p.coeffs()));
    let mut m = BigFloat::from_i64(0);
    for j in 0..len {
        let d = &a.coeff(j) - &b.coeff(j);
        for c in d.coeffs() {
            m = m.max(c.abs());
        }
    }
    m / scale
}

/// `w D-_E`, with polynomial coefficients.
fn cleared_minus(rec: &SolutionRecord) -> DiffOp<Poly<BigComplex>> {
    assert_eq!(rec.d_minus_e.w_power, 1, "restricted operators carry one power of w");
    DiffOp::new(rec.d_minus_e.numerators.clone())
}

/// Pairs each solution `E` of type `lambda` with the solution of type
/// `lambda*` whose `beta-` eigenvalues are the `beta+` eigenvalues of `E`,
/// then checks that the partner's space is the Grassmann dual of `V_E` and
/// that `Theta` carries `w D-_E` to `w D-_partner`.
pub fn verify_duality(records: &[SolutionRecord], tol: &BigFloat) -> DualityReport {
    let mut pairs = Vec::new();
    let mut unpaired = Vec::new();
    for (i, rec) in records.iter().enumerate() {
        let target = rec.lambda().conjugate();
        let scale = coeff_scale(rec.eigenspace.eigenvalues.values());
        let best = records
            .iter()
            .enumerate()
            .filter(|(_, r)| *r.lambda() == target)
            .map(|(j, r)| (j, &rec.eigenspace.tuple_distance(Sign::Plus, &r.eigenspace, Sign::Minus) / &scale))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let Some((j, tuple_distance)) = best.filter(|(_, d)| *d < *tol) else {
            unpaired.push((i, format!("no record of type {target} has matching eigenvalues")));
            continue;
        };
        let partner = &records[j];
        let checked = (|| -> Result<_, SchubertError> {
            let coords = canonical_coords(&rec.v_e)?;
            let dual_coords = grassmann_dual(&coords)?;
            let partner_coords = canonical_coords(&partner.v_e)?;
            let th = theta(&cleared_minus(rec), &rec.schubert)?;
            Ok((coords, dual_coords, partner_coords, th))
        })();
        match checked {
            Ok((coords, dual_coords, partner_coords, th)) => pairs.push(DualityPair {
                index: i,
                partner: j,
                tuple_distance,
                coords_residual: coords_distance(&dual_coords, &partner_coords),
                theta_residual: op_distance(&th, &cleared_minus(partner)),
                coords,
                dual_coords,
            }),
            Err(e) => unpaired.push((i, e.to_string())),
        }
    }
    let zero = BigFloat::from_i64(0);
    let max_coords_residual = pairs
        .iter()
        .fold(zero.clone(), |m, p| m.max(p.coords_residual.clone()));
    let max_theta_residual = pairs.iter().fold(zero, |m, p| m.max(p.theta_residual.clone()));
    DualityReport {
        passed: unpaired.is_empty() && max_coords_residual < *tol && max_theta_residual < *tol,
        pairs,
        unpaired,
        max_coords_residual,
        max_theta_residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::{solve_inverse_wronskian, SolveOptions};
    use crate::exactalg::Rat;
    use crate::symgroup::BetheConfig;

    const PREC: u32 = 256;

    #[test]
    fn example_solutions_pair_up() {
        let s = BigComplex::real(BigFloat::from_i64(3).set_precision(PREC).sqrt());
        let cfg = BetheConfig::new(vec![s.clone(), -s, BigComplex::zero_prec(PREC)]);
        let opts = SolveOptions::with_precision(PREC);
        let report = solve_inverse_wronskian(&cfg, &opts).unwrap();
        let d = verify_duality(&report.records, &opts.tolerance);
        assert!(d.passed, "{:?}", d.unpaired);
        assert_eq!(d.pairs.len(), 4);
        for p in &d.pairs {
            let lam = report.records[p.index].lambda();
            assert_eq!(*report.records[p.partner].lambda(), lam.conjugate());
            if lam.parts() == [2, 1] {
                assert_ne!(p.index, p.partner);
                let v: Vec<i64> = [(1, 1), (1, 2), (2, 1)]
                    .iter()
                    .map(|&(i, j)| p.coords.get(i, j).re.to_f64().round() as i64)
                    .collect();
                assert!(v == [0, 1, -1] || v == [0, -1, 1], "{v:?}");
            }
        }
    }

    #[test]
    fn generic_four_points_pair_up() {
        let cfg = BetheConfig::new(
            [1, 2, 3, 5]
                .iter()
                .map(|&v| BigComplex::from_rat(&Rat::from_int(v), PREC))
                .collect(),
        );
        let opts = SolveOptions::with_precision(PREC);
        let report = solve_inverse_wronskian(&cfg, &opts).unwrap();
        assert_eq!(report.total(), 10);
        let d = verify_duality(&report.records, &opts.tolerance);
        assert!(d.passed, "{:?} {:?} {:?}", d.unpaired, d.max_coords_residual, d.max_theta_residual);
    }
}
