use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{IrrepModel, Partition, RepnError};
use crate::exactalg::{
    echelon_rows_numeric, eig_numeric, BigComplex, BigFloat, Field, Matrix, NumericError, Rat, Ring,
};
use crate::symgroup::{beta, BetheConfig, Sign};

/// Index of a Bethe generator `beta^sign_{k,l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenKey {
    pub sign: Sign,
    pub k: usize,
    pub l: usize,
}

impl GenKey {
    pub fn new(sign: Sign, k: usize, l: usize) -> Self {
        GenKey { sign, k, l }
    }

    /// All `(sign, k, l)` with `k + l <= n`.
    pub fn all(n: usize) -> Vec<GenKey> {
        let mut out = Vec::new();
        for sign in [Sign::Minus, Sign::Plus] {
            for k in 0..=n {
                for l in 0..=n - k {
                    out.push(GenKey::new(sign, k, l));
                }
            }
        }
        out
    }
}

/// A common eigenspace of the Bethe generators inside one irreducible
/// module, with every generator's eigenvalue.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EigenspaceRecord {
    pub lambda: Partition,
    #[serde(with = "eigenvalue_list")]
    pub eigenvalues: BTreeMap<GenKey, BigComplex>,
    /// eigenvectors in the seminormal basis, reduced echelon form
    pub basis: Vec<Vec<BigComplex>>,
    pub residual: BigFloat,
}

mod eigenvalue_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        sign: Sign,
        k: usize,
        l: usize,
        value: BigComplex,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<GenKey, BigComplex>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = m
            .iter()
            .map(|(g, c)| Entry {
                sign: g.sign,
                k: g.k,
                l: g.l,
                value: c.clone(),
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<GenKey, BigComplex>, D::Error> {
        let v = Vec::<Entry>::deserialize(d)?;
        Ok(v.into_iter()
            .map(|e| (GenKey::new(e.sign, e.k, e.l), e.value))
            .collect())
    }
}

impl EigenspaceRecord {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn eigenvalue(&self, sign: Sign, k: usize, l: usize) -> &BigComplex {
        &self.eigenvalues[&GenKey::new(sign, k, l)]
    }

    /// Eigenvalues of one sign as `(k, l) -> value`.
    pub fn tuple(&self, sign: Sign) -> Vec<((usize, usize), BigComplex)> {
        self.eigenvalues
            .iter()
            .filter(|(g, _)| g.sign == sign)
            .map(|(g, c)| ((g.k, g.l), c.clone()))
            .collect()
    }

    /// Largest difference between this record's `sign` tuple and another
    /// record's `other_sign` tuple.
    pub fn tuple_distance(&self, sign: Sign, other: &EigenspaceRecord, other_sign: Sign) -> BigFloat {
        let mut m = BigFloat::from_i64(0);
        for ((kl, a), (kl2, b)) in self.tuple(sign).iter().zip(other.tuple(other_sign)) {
            assert_eq!(*kl, kl2);
            m = m.max((a.clone() - b).abs());
        }
        m
    }
}

/// Matrices of every Bethe generator on the module.
pub fn generator_matrices(
    model: &IrrepModel,
    cfg: &BetheConfig<BigComplex>,
) -> BTreeMap<GenKey, Matrix<BigComplex>> {
    let prec = cfg.z().iter().map(|z| z.precision()).max().unwrap_or(64);
    GenKey::all(cfg.n())
        .into_iter()
        .map(|g| {
            let elem = beta(cfg, g.k, g.l, g.sign);
            let m = model.act(&elem).map(|c| c.set_precision(prec));
            (g, m)
        })
        .collect()
}

fn frobenius(m: &Matrix<BigComplex>) -> BigFloat {
    let mut s = BigFloat::from_i64(0);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            s = s + m.get(i, j).norm_sqr();
        }
    }
    s.sqrt()
}

fn vec_norm(v: &[BigComplex]) -> BigFloat {
    v.iter()
        .fold(BigFloat::from_i64(0), |acc, c| acc + c.norm_sqr())
        .sqrt()
}

/// Common eigenspaces of the Bethe generators on `M^lambda`.
///
/// A random rational combination of the `beta^-` matrices is diagonalized;
/// each of its eigenspaces is accepted when every generator acts on it as a
/// scalar within `tol`. Failing that, a fresh combination is tried, up to
/// five times.
pub fn simultaneous_eigenspaces(
    model: &IrrepModel,
    cfg: &BetheConfig<BigComplex>,
    tol: &BigFloat,
    seed: u64,
) -> Result<Vec<EigenspaceRecord>, RepnError> {
    let mats = generator_matrices(model, cfg);
    let scale = mats
        .values()
        .map(frobenius)
        .fold(BigFloat::from_i64(1), BigFloat::max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;
    for _attempt in 0..6 {
        let mut comb = Matrix::<BigComplex>::zeros(model.dim(), model.dim());
        for (g, m) in &mats {
            if g.sign == Sign::Minus {
                let r = Rat::new(rng.gen_range(-97..=97), rng.gen_range(1..=13));
                comb = comb.add(&m.map(|c| c.mul_rat(&r)));
            }
        }
        match try_split(model, &mats, &comb, &scale, tol) {
            Ok(recs) => return Ok(recs),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap())
}

fn try_split(
    model: &IrrepModel,
    mats: &BTreeMap<GenKey, Matrix<BigComplex>>,
    comb: &Matrix<BigComplex>,
    scale: &BigFloat,
    tol: &BigFloat,
) -> Result<Vec<EigenspaceRecord>, RepnError> {
    let pairs = eig_numeric(comb, tol)?;
    let total: usize = pairs.iter().map(|p| p.basis.len()).sum();
    if total < model.dim() {
        return Err(RepnError::Numeric(NumericError::Defective {
            value: "combination".into(),
            algebraic: model.dim(),
            geometric: total,
        }));
    }
    let mut out = Vec::new();
    for pair in pairs {
        let basis = echelon_rows_numeric(pair.basis.clone(), tol);
        let mut eigenvalues = BTreeMap::new();
        let mut residual = BigFloat::from_i64(0);
        for (g, m) in mats {
            // Rayleigh quotient on the first basis vector fixes the scalar
            let v0 = &pair.basis[0];
            let mv0 = m.mul_vec(v0);
            let num = v0
                .iter()
                .zip(&mv0)
                .fold(BigComplex::zero(), |acc, (a, b)| acc + a.conj() * b.clone());
            let den = v0
                .iter()
                .fold(BigFloat::from_i64(0), |acc, a| acc + a.norm_sqr());
            let mu = num.scale(&(BigFloat::from_i64(1).set_precision(den.precision()) / den));
            for v in &pair.basis {
                let mv = m.mul_vec(v);
                let r: Vec<BigComplex> = mv
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a.clone() - mu.clone() * b.clone())
                    .collect();
                residual = residual.max(vec_norm(&r) / vec_norm(v));
            }
            eigenvalues.insert(*g, mu);
        }
        let rel = &residual / scale;
        if rel > *tol {
            return Err(RepnError::NotScalar {
                residual: rel.to_f64(),
            });
        }
        out.push(EigenspaceRecord {
            lambda: model.lambda().clone(),
            eigenvalues,
            basis,
            residual,
        });
    }
    out.sort_by(compare_tuples);
    Ok(out)
}

fn compare_tuples(a: &EigenspaceRecord, b: &EigenspaceRecord) -> std::cmp::Ordering {
    for (x, y) in a.eigenvalues.values().zip(b.eigenvalues.values()) {
        let o = x
            .re
            .partial_cmp(&y.re)
            .unwrap()
            .then(x.im.partial_cmp(&y.im).unwrap());
        if o != std::cmp::Ordering::Equal {
            return o;
        }
    }
    std::cmp::Ordering::Equal
}

/// `b^lambda_k`, the scalar by which `beta^-_{n-k,0}` acts on `M^lambda`,
/// from the `c^lambda` recurrence: `b = (n! / dim M^lambda) c`. When a
/// model is supplied the matrix action is checked against it.
pub fn central_scalar(
    lambda: &Partition,
    k: usize,
    model: Option<&IrrepModel>,
) -> Result<Rat, RepnError> {
    let n = lambda.size();
    assert!(k <= n, "k out of range");
    let c = crate::schubert::c_lambda(lambda);
    let fact: i64 = (1..=n as i64).product();
    let b = c[k].clone() * Rat::new(fact, lambda.dim() as i64);
    if let Some(m) = model {
        let cfg = BetheConfig::new(vec![Rat::zero(); n]);
        let img = m.act(&beta(&cfg, n - k, 0, Sign::Minus));
        if img != Matrix::scalar(m.dim(), &b) {
            return Err(RepnError::Inconsistent(format!(
                "beta-_{{{},0}} on {} is not {}",
                n - k,
                lambda,
                b
            )));
        }
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::beta;

    const PREC: u32 = 256;

    fn sqrt3() -> BigComplex {
        BigComplex::real(BigFloat::from_i64(3).set_precision(PREC).sqrt())
    }

    fn example_cfg() -> BetheConfig<BigComplex> {
        let s = sqrt3();
        BetheConfig::new(vec![s.clone(), -s, BigComplex::zero_prec(PREC)])
    }

    fn tol() -> BigFloat {
        BigFloat::ten_pow_neg(25, PREC)
    }

    fn close(a: &BigComplex, b: f64) -> bool {
        (a.clone() - BigComplex::from_f64(b, PREC)).abs() < BigFloat::ten_pow_neg(20, PREC)
    }

    #[test]
    fn example_eigenspaces() {
        let model = IrrepModel::build(&"2,1".parse().unwrap()).unwrap();
        let recs = simultaneous_eigenspaces(&model, &example_cfg(), &tol(), 7).unwrap();
        assert_eq!(recs.len(), 2);
        let mut vals: Vec<f64> = recs
            .iter()
            .map(|r| r.eigenvalue(Sign::Minus, 2, 1).re.to_f64())
            .collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] + 3.0).abs() < 1e-20 && (vals[1] - 3.0).abs() < 1e-20);
        for r in &recs {
            assert_eq!(r.dim(), 1);
            assert!(close(r.eigenvalue(Sign::Minus, 2, 0), 3.0));
            assert!(close(r.eigenvalue(Sign::Minus, 3, 0), 0.0));
            assert!(close(r.eigenvalue(Sign::Minus, 0, 0), 1.0));
        }
        // basis-independent: the beta-_{2,1} matrix has trace 0 and det -9
        let m = &generator_matrices(&model, &example_cfg())[&GenKey::new(Sign::Minus, 2, 1)];
        assert!(close(&m.trace(), 0.0));
        let det = m.get(0, 0).clone() * m.get(1, 1).clone() - m.get(0, 1).clone() * m.get(1, 0).clone();
        assert!(close(&det, -9.0));
    }

    #[test]
    fn trivial_module_single_record() {
        let model = IrrepModel::build(&Partition::row(3)).unwrap();
        let recs = simultaneous_eigenspaces(&model, &example_cfg(), &tol(), 1).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].dim(), 1);
    }

    #[test]
    fn generic_rational_points_split_fully() {
        let cfg = BetheConfig::new(
            [1, 2, 5]
                .iter()
                .map(|&v| BigComplex::from_rat(&Rat::from_int(v), PREC))
                .collect(),
        );
        for l in Partition::all(3) {
            let model = IrrepModel::build(&l).unwrap();
            let recs = simultaneous_eigenspaces(&model, &cfg, &tol(), 3).unwrap();
            assert_eq!(recs.len(), l.dim());
            for i in 0..recs.len() {
                for j in i + 1..recs.len() {
                    let d = recs[i].tuple_distance(Sign::Minus, &recs[j], Sign::Minus);
                    assert!(d > BigFloat::ten_pow_neg(5, PREC));
                }
            }
        }
    }

    #[test]
    fn central_scalar_examples() {
        let b = |s: &str| -> Vec<Rat> {
            let l: Partition = s.parse().unwrap();
            (0..=l.size()).map(|k| central_scalar(&l, k, None).unwrap()).collect()
        };
        let r = |v: &[i64]| v.iter().map(|&x| Rat::from_int(x)).collect::<Vec<_>>();
        assert_eq!(b("2"), r(&[0, 2, 1]));
        assert_eq!(b("1,1"), r(&[2, 2, 1]));
        assert_eq!(b("2,1"), r(&[0, 3, 3, 1]));
    }

    #[test]
    fn central_scalars_match_matrix_action() {
        for n in 1..=5 {
            for l in Partition::all(n) {
                let model = IrrepModel::build(&l).unwrap();
                for k in 0..=n {
                    let b = central_scalar(&l, k, Some(&model)).unwrap();
                    if k == n {
                        assert_eq!(b, Rat::one());
                    }
                }
            }
        }
    }

    #[test]
    fn central_tuples_separate_partitions() {
        for n in 1..=8 {
            let tuples: Vec<Vec<Rat>> = Partition::all(n)
                .iter()
                .map(|l| (0..=n).map(|k| central_scalar(l, k, None).unwrap()).collect())
                .collect();
            for i in 0..tuples.len() {
                for j in i + 1..tuples.len() {
                    assert_ne!(tuples[i], tuples[j], "n = {}", n);
                }
            }
        }
    }

    #[test]
    fn generator_images_commute_exactly() {
        let cfg = BetheConfig::new(vec![Rat::from_int(1), Rat::new(-2, 3), Rat::from_int(4), Rat::from_int(1)]);
        for l in Partition::all(4) {
            let model = IrrepModel::build(&l).unwrap();
            let mats: Vec<Matrix<Rat>> = GenKey::all(4)
                .into_iter()
                .map(|g| model.act(&beta(&cfg, g.k, g.l, g.sign)))
                .collect();
            for a in &mats {
                for b in &mats {
                    assert_eq!(a.mul(b), b.mul(a));
                }
            }
        }
    }
}
