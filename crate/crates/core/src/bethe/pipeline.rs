use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::restrict::{poly_norm, product_residual, restrict, ScalarOperator};
use super::BetheError;
use crate::exactalg::{set_constant_precision, BigComplex, BigFloat, Field, Poly, Ring, WFrac};
use crate::repn::{simultaneous_eigenspaces, EigenspaceRecord, IrrepModel, Partition};
use crate::schubert::{c_lambda, indicial_numeric, indicial_polynomial, schubert_type, SchubertData};
use crate::symgroup::BetheConfig;
use crate::weylalg::DiffOp;
use crate::wronskian::{poly_kernel_numeric, PolySubspace};

/// Numeric settings for one pipeline run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveOptions {
    pub precision_bits: u32,
    /// kernel rank cut and residual bound
    pub tolerance: BigFloat,
    pub seed: u64,
}

impl SolveOptions {
    /// Tolerance `10^-(bits/10)`.
    pub fn with_precision(precision_bits: u32) -> Self {
        SolveOptions {
            precision_bits,
            tolerance: BigFloat::ten_pow_neg(precision_bits / 10, precision_bits),
            seed: 1,
        }
    }
}

/// One solution `V_E = ker D-_E` with the data used to validate it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub eigenspace: EigenspaceRecord,
    pub d_minus_e: ScalarOperator,
    pub d_plus_e: ScalarOperator,
    pub v_e: PolySubspace<BigComplex>,
    /// `ker D+_E`, as numerators over `w`
    pub v_plus_e: Option<PolySubspace<BigComplex>>,
    pub schubert: SchubertData,
    /// `monic Wr(V_E) - w`, relative to `w`
    pub wr_residual: BigFloat,
    /// `D+_E D-_E - d^2n`
    pub product_residual: BigFloat,
    /// distance between the indicial vector of `D-_E` and `c^lambda`
    pub indicial_residual: BigFloat,
    /// the indicial polynomial vanishes at every exponent of `V_E`
    pub exponents_match: bool,
}

impl SolutionRecord {
    pub fn lambda(&self) -> &Partition {
        &self.eigenspace.lambda
    }

    pub fn d_minus(&self, w: &Poly<BigComplex>) -> DiffOp<WFrac<BigComplex>> {
        self.d_minus_e.to_op(w)
    }

    pub fn d_plus(&self, w: &Poly<BigComplex>) -> DiffOp<WFrac<BigComplex>> {
        self.d_plus_e.to_op(w)
    }

    /// The Schubert type is the module's partition and the indicial data
    /// match `c^lambda`.
    pub fn placement_ok(&self, tol: &BigFloat) -> bool {
        self.schubert.lambda == self.eigenspace.lambda
            && self.indicial_residual < *tol
            && self.exponents_match
    }
}

/// An eigenspace (or a whole module) that did not yield a valid solution.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Rejection {
    pub lambda: Partition,
    pub eigenspace: Option<EigenspaceRecord>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LambdaCount {
    pub lambda: Partition,
    pub module_dim: usize,
    pub solutions: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolveReport {
    pub z: Vec<BigComplex>,
    pub options: SolveOptions,
    pub records: Vec<SolutionRecord>,
    pub rejected: Vec<Rejection>,
    pub counts: Vec<LambdaCount>,
    /// index pairs of records with numerically equal `V_E`
    pub duplicates: Vec<(usize, usize)>,
    pub max_wr_residual: BigFloat,
    pub max_product_residual: BigFloat,
}

impl SolveReport {
    pub fn total(&self) -> usize {
        self.records.len()
    }

    pub fn config(&self) -> BetheConfig<BigComplex> {
        BetheConfig::new(self.z.clone())
    }

    /// Every module split completely into accepted solutions.
    pub fn complete(&self) -> bool {
        self.rejected.is_empty()
    }
}

fn relative_diff(a: &Poly<BigComplex>, b: &Poly<BigComplex>) -> BigFloat {
    poly_norm(&(a - b)) / poly_norm(b)
}

fn indicial_check(
    d_minus: &DiffOp<WFrac<BigComplex>>,
    sd: &SchubertData,
    prec: u32,
    tol: &BigFloat,
) -> (BigFloat, bool) {
    let iv = indicial_numeric(d_minus);
    let c = c_lambda(&sd.lambda);
    let last = c.iter().rposition(|x| !x.is_zero());
    let mut r = BigFloat::from_i64(0);
    if iv.entries.len() != c.len() || last.is_none() {
        return (BigFloat::from_i64(1), false);
    }
    let scale = c[last.unwrap()].inv();
    for (a, b) in iv.entries.iter().zip(&c) {
        let b = BigComplex::from_rat(&(b.clone() * scale.clone()), prec);
        r = r.max((a.clone() - b).abs());
    }
    // roots: the polynomial is monic of degree n up to scaling and must
    // vanish at the n distinct exponents
    let p = indicial_polynomial(&iv);
    let norm = poly_norm(&p);
    let exps = sd.d.iter().all(|&d| {
        let x = BigComplex::from_rat(&crate::exactalg::Rat::from_int(d as i64), prec);
        let scale = (0..p.coeffs().len()).fold(BigFloat::from_i64(1), |acc, _| {
            acc * BigFloat::from_i64(d.max(1) as i64)
        });
        p.eval(&x).abs() / (&norm * &scale) < *tol
    });
    (r, exps)
}

fn solve_one(
    cfg: &BetheConfig<BigComplex>,
    rec: EigenspaceRecord,
    opts: &SolveOptions,
) -> Result<SolutionRecord, Rejection> {
    let n = cfg.n();
    let w = cfg.w();
    let tol = &opts.tolerance;
    let reject = |rec: &EigenspaceRecord, reason: String| Rejection {
        lambda: rec.lambda.clone(),
        eigenspace: Some(rec.clone()),
        reason,
    };
    let (d_minus, d_plus) = restrict(cfg, &rec);
    let product_residual = product_residual(&d_plus.mul(&d_minus), 2 * n, &w);
    if product_residual > *tol {
        return Err(reject(&rec, format!("D+_E D-_E differs from d^2n by {}", product_residual.to_f64())));
    }
    let v_e = match poly_kernel_numeric(&d_minus, 2 * n - 1, tol) {
        Ok(Some(v)) if v.dim() == n => v,
        Ok(v) => {
            let dim = v.map_or(0, |v| v.dim());
            return Err(reject(&rec, format!("kernel of D-_E has dimension {dim}, expected {n}")));
        }
        Err(e) => return Err(reject(&rec, e.to_string())),
    };
    let (wr_num, wr_den) = v_e.monic_wronskian_parts();
    let wr_residual = if wr_den.degree() == Some(0) {
        relative_diff(&wr_num, &w)
    } else {
        BigFloat::from_i64(1)
    };
    if wr_residual > *tol {
        return Err(reject(&rec, format!("monic Wronskian differs from w by {}", wr_residual.to_f64())));
    }
    // V+_E = { p / w : D+_E (p / w) = 0 }
    let cleared = d_plus.mul(&DiffOp::monomial(WFrac::new(Poly::one(), 1, &w), 0));
    let v_plus_e = match poly_kernel_numeric(&cleared, 2 * n, tol) {
        Ok(Some(k)) if k.dim() == n => Some(
            PolySubspace::numeric(k.basis().to_vec(), w.clone(), tol)
                .map_err(|e| reject(&rec, e.to_string()))?,
        ),
        _ => None,
    };
    let schubert = schubert_type(&v_e);
    let (indicial_residual, exponents_match) =
        indicial_check(&d_minus, &schubert, opts.precision_bits, tol);
    Ok(SolutionRecord {
        d_minus_e: ScalarOperator::from_op(&d_minus),
        d_plus_e: ScalarOperator::from_op(&d_plus),
        eigenspace: rec,
        v_e,
        v_plus_e,
        schubert,
        wr_residual,
        product_residual,
        indicial_residual,
        exponents_match,
    })
}

/// Runs every irreducible module through the eigenspace decomposition and
/// turns each eigenspace into `V_E = ker D-_E`. Records come out in
/// canonical order: partitions in decreasing lexicographic order, then
/// eigenvalue tuples.
pub fn solve_inverse_wronskian(
    cfg: &BetheConfig<BigComplex>,
    opts: &SolveOptions,
) -> Result<SolveReport, BetheError> {
    let n = cfg.n();
    set_constant_precision(opts.precision_bits);
    let cfg = cfg.map(|z| z.set_precision(opts.precision_bits));
    let per_lambda: Vec<(Partition, usize, Vec<Result<SolutionRecord, Rejection>>)> =
        Partition::all(n)
            .into_par_iter()
            .map(|lambda| {
                let model = match IrrepModel::build(&lambda) {
                    Ok(m) => m,
                    Err(e) => {
                        return (lambda.clone(), 0, vec![Err(module_rejection(&lambda, e.to_string()))])
                    }
                };
                let dim = model.dim();
                let out = match simultaneous_eigenspaces(&model, &cfg, &opts.tolerance, opts.seed) {
                    Ok(recs) => recs
                        .into_par_iter()
                        .map(|rec| solve_one(&cfg, rec, opts))
                        .collect(),
                    Err(e) => vec![Err(module_rejection(&lambda, e.to_string()))],
                };
                (lambda, dim, out)
            })
            .collect();
    let mut records = Vec::new();
    let mut rejected = Vec::new();
    let mut counts = Vec::new();
    for (lambda, module_dim, results) in per_lambda {
        let mut solutions = 0;
        for r in results {
            match r {
                Ok(rec) => {
                    solutions += 1;
                    records.push(rec);
                }
                Err(rej) => rejected.push(rej),
            }
        }
        counts.push(LambdaCount {
            lambda,
            module_dim,
            solutions,
        });
    }
    let duplicates = duplicate_pairs(&records, &opts.tolerance);
    let zero = BigFloat::from_i64(0);
    let max_wr_residual = records.iter().fold(zero.clone(), |m, r| m.max(r.wr_residual.clone()));
    let max_product_residual = records
        .iter()
        .fold(zero, |m, r| m.max(r.product_residual.clone()));
    Ok(SolveReport {
        z: cfg.z().to_vec(),
        options: opts.clone(),
        records,
        rejected,
        counts,
        duplicates,
        max_wr_residual,
        max_product_residual,
    })
}

fn module_rejection(lambda: &Partition, reason: String) -> Rejection {
    Rejection {
        lambda: lambda.clone(),
        eigenspace: None,
        reason,
    }
}

/// Pairs of records whose canonical bases agree after rounding every
/// coefficient to a multiple of half the tolerance.
pub fn duplicate_pairs(records: &[SolutionRecord], tol: &BigFloat) -> Vec<(usize, usize)> {
    let quantum = tol / &BigFloat::from_i64(2);
    let keys: Vec<_> = records.iter().map(|r| r.v_e.quantized(&quantum)).collect();
    let mut out = Vec::new();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] == keys[j] {
                out.push((i, j));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealityReport {
    pub max_imaginary: BigFloat,
    pub per_record: Vec<BigFloat>,
    pub passed: bool,
}

/// Largest imaginary part of any canonical coefficient of any `V_E`.
pub fn check_reality(records: &[SolutionRecord], tol: &BigFloat) -> RealityReport {
    let per_record: Vec<BigFloat> = records.iter().map(|r| r.v_e.max_imaginary()).collect();
    let max_imaginary = per_record
        .iter()
        .cloned()
        .fold(BigFloat::from_i64(0), BigFloat::max);
    RealityReport {
        passed: max_imaginary < *tol,
        max_imaginary,
        per_record,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WPowerReport {
    pub present: bool,
    /// largest relative value of `D+_E (p / w)` over the numerators `p`
    pub kernel_residual: BigFloat,
    /// `monic Wr(w V+_E) - w^(n-1)`, relative
    pub wr_residual: BigFloat,
    pub lambda: Option<Partition>,
    pub lambda1_ok: bool,
    pub passed: bool,
}

/// Checks that `w V+_E` is a space of polynomials solving the inverse
/// Wronskian problem for `w^(n-1)`, of Schubert type with `lambda_1 <= n`.
pub fn check_w_power_wronskian(
    rec: &SolutionRecord,
    cfg: &BetheConfig<BigComplex>,
    tol: &BigFloat,
) -> WPowerReport {
    let n = cfg.n();
    let w = cfg.w();
    let Some(vp) = &rec.v_plus_e else {
        return WPowerReport {
            present: false,
            kernel_residual: BigFloat::from_i64(1),
            wr_residual: BigFloat::from_i64(1),
            lambda: None,
            lambda1_ok: false,
            passed: false,
        };
    };
    let d_plus = rec.d_plus(&w);
    let mut kernel_residual = BigFloat::from_i64(0);
    for p in vp.basis() {
        let img = d_plus.apply(&WFrac::new(p.clone(), 1, &w));
        let scale = poly_norm(p) * poly_norm(&w.pow(img.pow()));
        kernel_residual = kernel_residual.max(poly_norm(img.num()) / scale);
    }
    let numerators = PolySubspace::numeric(vp.basis().to_vec(), Poly::one(), tol);
    let (wr_residual, lambda) = match numerators {
        Ok(space) => {
            let (num, den) = space.monic_wronskian_parts();
            let r = if den.degree() == Some(0) {
                relative_diff(&num, &w.pow(n as u32 - 1))
            } else {
                BigFloat::from_i64(1)
            };
            (r, Some(schubert_type(&space).lambda))
        }
        Err(_) => (BigFloat::from_i64(1), None),
    };
    let lambda1_ok = lambda.as_ref().is_some_and(|l| l.part(0) <= n);
    WPowerReport {
        present: true,
        passed: kernel_residual < *tol && wr_residual < *tol && lambda1_ok,
        kernel_residual,
        wr_residual,
        lambda,
        lambda1_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rat;

    const PREC: u32 = 256;

    fn example_cfg() -> BetheConfig<BigComplex> {
        let s = BigComplex::real(BigFloat::from_i64(3).set_precision(PREC).sqrt());
        BetheConfig::new(vec![s.clone(), -s, BigComplex::zero_prec(PREC)])
    }

    fn rat_cfg(z: &[i64]) -> BetheConfig<BigComplex> {
        BetheConfig::new(z.iter().map(|&v| BigComplex::from_rat(&Rat::from_int(v), PREC)).collect())
    }

    fn ints(p: &Poly<BigComplex>) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.re.to_f64().round() as i64).collect()
    }

    #[test]
    fn example_has_four_solutions() {
        let opts = SolveOptions::with_precision(PREC);
        let report = solve_inverse_wronskian(&example_cfg(), &opts).unwrap();
        assert!(report.complete(), "{:?}", report.rejected);
        assert_eq!(report.total(), 4);
        let counts: Vec<usize> = report.counts.iter().map(|c| c.solutions).collect();
        assert_eq!(counts, vec![1, 2, 1]);
        let mut kernels: Vec<Vec<Vec<i64>>> = report
            .records
            .iter()
            .filter(|r| r.lambda().parts() == [2, 1])
            .map(|r| r.v_e.basis().iter().map(ints).collect())
            .collect();
        kernels.sort();
        assert_eq!(
            kernels,
            vec![
                vec![vec![0, 0, 0, -4, 1], vec![0, 2, 1], vec![1]],
                vec![vec![0, 0, 0, 4, 1], vec![0, -2, 1], vec![1]],
            ]
        );
        assert!(report.duplicates.is_empty());
        let tol = BigFloat::ten_pow_neg(25, PREC);
        assert!(check_reality(&report.records, &tol).passed);
        let cfg = report.config();
        for r in &report.records {
            assert!(r.placement_ok(&tol), "{:?}", r.schubert);
            let wp = check_w_power_wronskian(r, &cfg, &tol);
            assert!(wp.passed, "{wp:?}");
        }
    }

    #[test]
    fn single_point() {
        let opts = SolveOptions::with_precision(PREC);
        let report = solve_inverse_wronskian(&rat_cfg(&[5]), &opts).unwrap();
        assert_eq!(report.total(), 1);
        assert_eq!(ints(&report.records[0].v_e.basis()[0]), vec![5, 1]);
        let wp = check_w_power_wronskian(&report.records[0], &report.config(), &opts.tolerance);
        assert!(wp.passed);
    }

    #[test]
    fn generic_points_give_module_dimension_counts() {
        let opts = SolveOptions::with_precision(PREC);
        for z in [&[1, 2, 5][..], &[0, 3]] {
            let report = solve_inverse_wronskian(&rat_cfg(z), &opts).unwrap();
            assert!(report.complete(), "{:?}", report.rejected);
            for c in &report.counts {
                assert_eq!(c.solutions, c.module_dim, "{z:?} {}", c.lambda);
            }
            assert!(report.duplicates.is_empty());
        }
    }

    #[test]
    fn repeated_points_are_real() {
        let opts = SolveOptions::with_precision(PREC);
        let report = solve_inverse_wronskian(&rat_cfg(&[0, 0]), &opts).unwrap();
        assert!(report.total() >= 2);
        assert!(check_reality(&report.records, &opts.tolerance).passed);
    }

    #[test]
    fn report_round_trips_through_json() {
        let opts = SolveOptions::with_precision(PREC);
        let report = solve_inverse_wronskian(&rat_cfg(&[1, 2]), &opts).unwrap();
        let s = serde_json::to_string(&report).unwrap();
        let back: SolveReport = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
