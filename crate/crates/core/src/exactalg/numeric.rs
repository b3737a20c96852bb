//! High-precision numeric linear algebra over [`BigComplex`]: one-sided Jacobi
//! SVD for numerical nullspaces, characteristic polynomials, Aberth root
//! finding and eigenspaces.

use thiserror::Error;

use super::{BigComplex, BigFloat, Field, Matrix, Ring};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("singular value {ratio:.3e} (relative) lies within 10x of the cut {cut:.3e}; rank is ambiguous")]
    IllConditioned { ratio: f64, cut: f64 },
    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("defective eigenvalue {value}: algebraic multiplicity {algebraic}, geometric {geometric}")]
    Defective {
        value: String,
        algebraic: usize,
        geometric: usize,
    },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// An eigenvalue with its algebraic multiplicity and an orthonormal basis of
/// its eigenspace.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: BigComplex,
    pub multiplicity: usize,
    pub basis: Vec<Vec<BigComplex>>,
}

fn working_precision(m: &Matrix<BigComplex>) -> u32 {
    let mut p = 64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            p = p.max(m.get(i, j).precision());
        }
    }
    p
}

fn inner(a: &[BigComplex], b: &[BigComplex]) -> BigComplex {
    // a^H b
    a.iter()
        .zip(b)
        .fold(BigComplex::zero(), |acc, (x, y)| acc + &x.conj() * y)
}

fn norm(a: &[BigComplex]) -> BigFloat {
    a.iter()
        .fold(BigFloat::from_i64(0), |acc, x| acc + x.norm_sqr())
        .sqrt()
}

/// One-sided Jacobi SVD. Returns singular values (unsorted, one per column)
/// and the right singular vectors as columns.
fn jacobi_svd(
    m: &Matrix<BigComplex>,
) -> Result<(Vec<BigFloat>, Vec<Vec<BigComplex>>), NumericError> {
    let prec = working_precision(m);
    let n = m.cols();
    let mut cols: Vec<Vec<BigComplex>> = (0..n)
        .map(|j| m.column(j).into_iter().map(|x| x.set_precision(prec)).collect())
        .collect();
    let mut v: Vec<Vec<BigComplex>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    BigComplex::from_i64(if i == j { 1 } else { 0 }).set_precision(prec)
                })
                .collect()
        })
        .collect();
    let eps = BigFloat::two_pow_neg(prec.saturating_sub(16), prec);
    let fro = cols
        .iter()
        .flatten()
        .fold(BigFloat::zero(prec), |a, x| a + x.norm_sqr());
    // columns this small are numerically zero; rotating them only stirs noise
    let negligible = &(&eps * &eps) * &fro;
    const MAX_SWEEPS: usize = 80;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = cols[p].iter().fold(BigFloat::zero(prec), |a, x| a + x.norm_sqr());
                let beta = cols[q].iter().fold(BigFloat::zero(prec), |a, x| a + x.norm_sqr());
                let gamma = inner(&cols[p], &cols[q]);
                let g = gamma.abs();
                if g.is_zero()
                    || alpha < negligible
                    || beta < negligible
                    || g <= &eps * &(&alpha * &beta).sqrt()
                {
                    continue;
                }
                rotated = true;
                let two = BigFloat::from_i64(2);
                let zeta = (&beta - &alpha) / (&two * &g);
                let one = BigFloat::from_i64(1);
                let root = (&one + &(&zeta * &zeta)).sqrt();
                let t = if zeta.is_sign_negative() {
                    -(&one / &(&zeta.abs() + &root))
                } else {
                    &one / &(&zeta + &root)
                };
                let c = &one / &(&one + &(&t * &t)).sqrt();
                let s = &c * &t;
                // phase e^{-i phi} with gamma = |gamma| e^{i phi}
                let ph = BigComplex::new(&gamma.re / &g, -(&gamma.im / &g));
                let rot = |a: &mut Vec<Vec<BigComplex>>| {
                    let (ap, aq) = (a[p].clone(), a[q].clone());
                    for k in 0..ap.len() {
                        let aqk = &ph * &aq[k];
                        a[p][k] = ap[k].scale(&c) - aqk.scale(&s);
                        a[q][k] = ap[k].scale(&s) + aqk.scale(&c);
                    }
                };
                rot(&mut cols);
                rot(&mut v);
            }
        }
        if !rotated {
            let sv = cols.iter().map(|c| norm(c)).collect();
            return Ok((sv, v));
        }
    }
    Err(NumericError::NoConvergence {
        what: "one-sided Jacobi SVD",
        iterations: MAX_SWEEPS,
    })
}

/// Singular values in decreasing order.
pub fn singular_values(m: &Matrix<BigComplex>) -> Result<Vec<BigFloat>, NumericError> {
    let (mut sv, _) = jacobi_svd(m)?;
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(sv)
}

/// Orthonormal basis of the numerical right nullspace: right singular vectors
/// whose singular value is below `tol` times the largest one.
pub fn nullspace_numeric(
    m: &Matrix<BigComplex>,
    tol: &BigFloat,
) -> Result<Vec<Vec<BigComplex>>, NumericError> {
    nullspace_scaled(m, tol, &BigFloat::from_i64(0))
}

/// As [`nullspace_numeric`], with singular values measured against at least
/// `floor` (used when the matrix is a shift `A - mu I` that may be tiny).
fn nullspace_scaled(
    m: &Matrix<BigComplex>,
    tol: &BigFloat,
    floor: &BigFloat,
) -> Result<Vec<Vec<BigComplex>>, NumericError> {
    assert!(!tol.is_zero() && !tol.is_sign_negative(), "tolerance must be positive");
    if m.cols() == 0 {
        return Ok(Vec::new());
    }
    let (sv, v) = jacobi_svd(m)?;
    let smax = sv
        .iter()
        .cloned()
        .fold(floor.clone(), BigFloat::max);
    if smax.is_zero() {
        return Ok(v);
    }
    let ten = BigFloat::from_i64(10);
    let lo = tol / &ten;
    let hi = tol * &ten;
    let mut out = Vec::new();
    for (s, vec) in sv.iter().zip(v) {
        let ratio = s / &smax;
        if ratio > lo && ratio < hi {
            return Err(NumericError::IllConditioned {
                ratio: ratio.to_f64(),
                cut: tol.to_f64(),
            });
        }
        if ratio < *tol {
            out.push(vec);
        }
    }
    Ok(out)
}

/// Reduced row echelon form of a numerically computed basis. A column
/// becomes a pivot when some remaining row has an entry above `tol` times the
/// largest entry of the input; rows that never receive a pivot are dropped,
/// so the result has as many rows as the numerical rank.
pub fn echelon_rows_numeric(mut rows: Vec<Vec<BigComplex>>, tol: &BigFloat) -> Vec<Vec<BigComplex>> {
    let cols = rows.first().map_or(0, |r| r.len());
    let scale = rows
        .iter()
        .flatten()
        .map(|c| c.abs())
        .fold(BigFloat::from_i64(0), BigFloat::max);
    let cut = tol * &scale;
    let mut done = 0;
    for c in 0..cols {
        if done == rows.len() {
            break;
        }
        let best = (done..rows.len())
            .max_by(|&a, &b| rows[a][c].abs().partial_cmp(&rows[b][c].abs()).unwrap())
            .unwrap();
        if rows[best][c].abs() <= cut {
            // noise ahead of the later pivots would fake a leading entry
            for r in rows.iter_mut().skip(done) {
                r[c] = BigComplex::zero_prec(r[c].precision());
            }
            continue;
        }
        rows.swap(done, best);
        let inv = rows[done][c].inv();
        for x in rows[done].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let prec = inv.precision();
        rows[done][c] = BigComplex::real(BigFloat::from_i64(1).set_precision(prec));
        for i in 0..rows.len() {
            if i == done {
                continue;
            }
            let f = rows[i][c].clone();
            for j in 0..cols {
                let v = rows[i][j].clone() - f.clone() * rows[done][j].clone();
                rows[i][j] = v;
            }
            // an exact zero keeps the echelon shape clean
            rows[i][c] = BigComplex::zero_prec(prec);
        }
        done += 1;
    }
    rows.truncate(done);
    rows
}

/// Characteristic polynomial `det(xI - A)`, ascending coefficients, by the
/// Faddeev-LeVerrier recurrence.
pub fn char_poly(a: &Matrix<BigComplex>) -> Vec<BigComplex> {
    let n = a.rows();
    let prec = working_precision(a);
    let mut c = vec![BigComplex::zero_prec(prec); n + 1];
    c[n] = BigComplex::one();
    let mut mk = Matrix::<BigComplex>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.mul(&mk);
        for i in 0..n {
            let v = next.get(i, i).clone() + c[n - k + 1].clone();
            next.set(i, i, v);
        }
        let tr = a.mul(&next).trace();
        c[n - k] = -(tr / BigComplex::from_i64(k as i64));
        mk = next;
    }
    c
}

fn horner(p: &[BigComplex], z: &BigComplex) -> (BigComplex, BigComplex) {
    // value and derivative
    let mut v = BigComplex::zero();
    let mut d = BigComplex::zero();
    for c in p.iter().rev() {
        d = d * z.clone() + v.clone();
        v = v * z.clone() + c.clone();
    }
    (v, d)
}

/// All complex roots (with multiplicity) of a polynomial given by ascending
/// coefficients, by Aberth-Ehrlich iteration.
pub fn poly_roots(coeffs: &[BigComplex]) -> Result<Vec<BigComplex>, NumericError> {
    let mut p: Vec<BigComplex> = coeffs.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let deg = p.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let prec = p.iter().map(|c| c.precision()).max().unwrap_or(64);
    // strip zero roots exactly
    let zeros = p.iter().take_while(|c| c.is_zero()).count();
    let q: Vec<BigComplex> = p[zeros..].to_vec();
    let mut roots: Vec<BigComplex> = vec![BigComplex::zero_prec(prec); zeros];
    let d = q.len() - 1;
    if d == 0 {
        return Ok(roots);
    }
    let lead = q[d].clone();
    let q: Vec<BigComplex> = q.iter().map(|c| c.clone() / lead.clone()).collect();
    let radius = 1.0 + q[..d].iter().map(|c| c.magnitude()).fold(0.0, f64::max);
    let mut z: Vec<BigComplex> = (0..d)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.4;
            BigComplex::new(
                BigFloat::with_prec(radius * th.cos(), prec),
                BigFloat::with_prec(radius * th.sin(), prec),
            )
        })
        .collect();
    let target = BigFloat::two_pow_neg(prec.saturating_sub(12), prec);
    const MAX_ITER: usize = 4000;
    let mut converged = false;
    let mut last_step = BigFloat::from_i64(1);
    for _ in 0..MAX_ITER {
        let mut max_step = BigFloat::zero(prec);
        for k in 0..d {
            let (v, dv) = horner(&q, &z[k]);
            if v.is_zero() {
                continue;
            }
            if dv.is_zero() {
                // nudge off a critical point
                z[k] = z[k].clone() + BigComplex::from_f64(1e-30, prec);
                max_step = max_step.max(BigFloat::with_prec(1.0, prec));
                continue;
            }
            let ratio = v / dv;
            let mut s = BigComplex::zero();
            for j in 0..d {
                if j != k {
                    let diff = z[k].clone() - z[j].clone();
                    if !diff.is_zero() {
                        s = s + diff.inv();
                    }
                }
            }
            let denom = BigComplex::one() - ratio.clone() * s;
            let step = if denom.is_zero() { ratio } else { ratio / denom };
            let scale = z[k].abs().max(BigFloat::from_i64(1));
            max_step = max_step.max(&step.abs() / &scale);
            z[k] = z[k].clone() - step;
        }
        last_step = max_step.clone();
        if max_step < target {
            converged = true;
            break;
        }
    }
    if !converged {
        // multiple roots converge only linearly; accept a stagnated iterate
        // whose steps are already far below any grouping tolerance
        let loose = BigFloat::two_pow_neg(prec / 3, prec);
        if last_step > loose {
            return Err(NumericError::NoConvergence {
                what: "Aberth root iteration",
                iterations: MAX_ITER,
            });
        }
    }
    roots.extend(z);
    Ok(roots)
}

/// Eigenvalues grouped within `tol` (relative to `max(1, |mu|)`), each with
/// its eigenspace from [`nullspace_numeric`] of `A - mu I`.
pub fn eig_numeric(
    m: &Matrix<BigComplex>,
    tol: &BigFloat,
) -> Result<Vec<EigenPair>, NumericError> {
    if m.rows() != m.cols() {
        return Err(NumericError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let prec = working_precision(m);
    let charp = char_poly(m);
    let roots = poly_roots(&charp)?;
    // A k-fold root of the characteristic polynomial is only resolved to
    // about eps^(1/k), so roots are first grouped loosely and clusters are
    // split at tighter thresholds until each one carries a full eigenspace.
    // The final threshold is `tol` itself.
    let mut levels = Vec::new();
    let tol_bits = (-tol.to_f64().log2()).max(1.0) as u32;
    let mut bits = (prec / (n as u32 + 1)).max(1);
    while bits < tol_bits {
        levels.push(BigFloat::two_pow_neg(bits, prec));
        bits *= 2;
    }
    levels.push(tol.clone());
    let mut out = Vec::new();
    refine(m, &charp, roots, &levels, tol, &mut out)?;
    Ok(out)
}

fn frobenius(m: &Matrix<BigComplex>) -> BigFloat {
    let mut acc = BigFloat::zero(working_precision(m));
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            acc = acc + m.get(i, j).norm_sqr();
        }
    }
    acc.sqrt()
}

/// Newton iteration on the `(k-1)`-th derivative, whose root near a k-fold
/// cluster is simple, to recover the cluster centre to full precision.
fn polish_multiple_root(p: &[BigComplex], start: BigComplex, k: usize) -> BigComplex {
    let mut q = p.to_vec();
    for _ in 1..k {
        q = q
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * BigComplex::from_i64(i as i64))
            .collect();
    }
    let prec = start.precision();
    let target = BigFloat::two_pow_neg(prec.saturating_sub(8), prec);
    let mut z = start;
    for _ in 0..200 {
        let (v, d) = horner(&q, &z);
        if v.is_zero() || d.is_zero() {
            break;
        }
        let step = v / d;
        let done = step.abs() < &target * &z.abs().max(BigFloat::from_i64(1));
        z = z - step;
        if done {
            break;
        }
    }
    z
}

fn single_linkage(roots: Vec<BigComplex>, delta: &BigFloat) -> Vec<Vec<BigComplex>> {
    let k = roots.len();
    let mut label: Vec<usize> = (0..k).collect();
    for i in 0..k {
        for j in i + 1..k {
            let scale = roots[i].abs().max(BigFloat::from_i64(1));
            if (&roots[i] - &roots[j]).abs() < delta * &scale {
                let (a, b) = (label[i], label[j]);
                if a != b {
                    label.iter_mut().filter(|l| **l == b).for_each(|l| *l = a);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<BigComplex>)> = Vec::new();
    for (r, l) in roots.into_iter().zip(label) {
        match groups.iter_mut().find(|(g, _)| *g == l) {
            Some((_, v)) => v.push(r),
            None => groups.push((l, vec![r])),
        }
    }
    groups.into_iter().map(|(_, v)| v).collect()
}

fn refine(
    m: &Matrix<BigComplex>,
    charp: &[BigComplex],
    roots: Vec<BigComplex>,
    levels: &[BigFloat],
    tol: &BigFloat,
    out: &mut Vec<EigenPair>,
) -> Result<(), NumericError> {
    let (delta, rest) = levels.split_first().expect("at least one level");
    let n = m.rows();
    for cluster in single_linkage(roots, delta) {
        let k = cluster.len();
        let mean = cluster.iter().fold(BigComplex::zero(), |a, x| a + x.clone())
            / BigComplex::from_i64(k as i64);
        let mean = if k > 1 {
            polish_multiple_root(charp, mean, k)
        } else {
            mean
        };
        let shifted = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                m.get(i, j).clone() - mean.clone()
            } else {
                m.get(i, j).clone()
            }
        });
        let found = nullspace_scaled(&shifted, tol, &frobenius(m));
        match found {
            Ok(basis) if basis.len() >= k => out.push(EigenPair {
                value: mean,
                multiplicity: k,
                basis,
            }),
            _ if !rest.is_empty() => refine(m, charp, cluster, rest, tol, out)?,
            Err(e) => return Err(e),
            Ok(basis) => {
                return Err(NumericError::Defective {
                    value: format!("{:?}", mean),
                    algebraic: k,
                    geometric: basis.len(),
                })
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{nullspace_exact, Rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const P: u32 = 256;

    fn cm(rows: &[&[i64]]) -> Matrix<BigComplex> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigComplex::from_rat(&Rat::from_int(x), P)).collect())
                .collect(),
        )
    }

    fn tol(d: u32) -> BigFloat {
        BigFloat::ten_pow_neg(d, P)
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let m = cm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(nullspace_numeric(&m, &tol(30)).unwrap().is_empty());
    }

    #[test]
    fn tiny_singular_value_is_cut() {
        let mut m = cm(&[&[1, 0], &[0, 1]]);
        m.set(1, 1, BigComplex::real(BigFloat::ten_pow_neg(40, P)));
        assert_eq!(nullspace_numeric(&m, &tol(30)).unwrap().len(), 1);
    }

    #[test]
    fn borderline_singular_value_is_reported() {
        let mut m = cm(&[&[1, 0], &[0, 1]]);
        m.set(1, 1, BigComplex::real(BigFloat::ten_pow_neg(30, P)));
        assert!(matches!(
            nullspace_numeric(&m, &tol(30)),
            Err(NumericError::IllConditioned { .. })
        ));
    }

    #[test]
    fn numeric_and_exact_kernels_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let rows = rng.gen_range(2..6);
            let cols = rng.gen_range(2..7);
            let rank = rng.gen_range(1..=rows.min(cols));
            // product of random rows x rank and rank x cols integer matrices
            let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(-4..5)).collect()).collect();
            let b: Vec<Vec<i64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(-4..5)).collect()).collect();
            let exact = Matrix::from_fn(rows, cols, |i, j| {
                Rat::from_int((0..rank).map(|k| a[i][k] * b[k][j]).sum())
            });
            let numeric = exact.map(|x| BigComplex::from_rat(x, P));
            let ne = nullspace_exact(&exact).len();
            for d in [20, 30, 40] {
                let nn = nullspace_numeric(&numeric, &tol(d)).unwrap();
                assert_eq!(nn.len(), ne, "tol 1e-{d}");
                for v in &nn {
                    let r = numeric.mul_vec(v);
                    assert!(norm(&r) < tol(60));
                }
            }
        }
    }

    #[test]
    fn cubic_example_eigenvectors() {
        // [[-2, 1], [-1, 2]] has eigenvalues +-sqrt(3)
        let m = cm(&[&[-2, 1], &[-1, 2]]);
        let pairs = eig_numeric(&m, &tol(32)).unwrap();
        assert_eq!(pairs.len(), 2);
        let three = BigFloat::from_rat(&Rat::from_int(3), P);
        let s3 = three.sqrt();
        let two_plus = &BigFloat::from_i64(2) + &s3;
        for pair in pairs {
            let v = &pair.basis[0];
            let lam = &pair.value;
            assert!((&(&lam.re * &lam.re) - &three).abs() < tol(60));
            assert!(lam.im.abs() < tol(60));
            // eigenvalue +sqrt3 <-> (1, 2+sqrt3); -sqrt3 <-> (2+sqrt3, 1)
            let ratio = v[1].clone() / v[0].clone();
            let expect = if lam.re.is_sign_negative() {
                &BigFloat::from_i64(1) / &two_plus
            } else {
                two_plus.clone()
            };
            assert!((ratio - BigComplex::real(expect)).abs() < tol(60));
        }
    }

    #[test]
    fn identity_and_diagonal_eigenspaces() {
        let id = cm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let pairs = eig_numeric(&id, &tol(32)).unwrap();
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].basis.len(), 3);
        let d = cm(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]]);
        let pairs = eig_numeric(&d, &tol(32)).unwrap();
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|p| p.basis.len() == 1));
    }

    #[test]
    fn jordan_block_is_defective() {
        let j = cm(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            eig_numeric(&j, &tol(20)),
            Err(NumericError::Defective { .. })
        ));
    }
}
