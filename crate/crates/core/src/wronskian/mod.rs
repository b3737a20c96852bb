//! Wronskians, fundamental differential operators and polynomial kernels.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{
    determinant, echelon_rows_numeric, nullspace_exact, nullspace_numeric, rank_exact, BigComplex, BigFloat, DiffRing,
    Field, Matrix, NumericError, Poly, Rat, RatFunc, Ring, WFrac,
};
use crate::weylalg::DiffOp;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WronskianError {
    #[error("basis is linearly dependent (rank {rank} < {len})")]
    Dependent { rank: usize, len: usize },
    #[error("empty basis")]
    Empty,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// A finite-dimensional space of functions `p_i / den` with polynomial `p_i`
/// and one common monic denominator (`1` for spaces of polynomials).
///
/// The basis is kept in reduced echelon form with respect to descending
/// degree: numerators are monic, listed by decreasing degree, and each
/// leading degree appears in no other basis element. Equal spaces therefore
/// compare equal.
#[derive(Clone, PartialEq)]
pub struct PolySubspace<S> {
    basis: Vec<Poly<S>>,
    den: Poly<S>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr<S> {
    basis: Vec<Vec<S>>,
    denominator: Vec<S>,
    canonical: bool,
}

impl<S: Field + Serialize> Serialize for PolySubspace<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        SubspaceRepr {
            basis: self.basis.iter().map(|p| p.coeffs().to_vec()).collect(),
            denominator: self.den.coeffs().to_vec(),
            canonical: true,
        }
        .serialize(s)
    }
}

impl<'de, S: Field + Deserialize<'de>> Deserialize<'de> for PolySubspace<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SubspaceRepr::<S>::deserialize(d)?;
        let basis = r.basis.into_iter().map(Poly::new).collect();
        Ok(PolySubspace {
            basis,
            den: Poly::new(r.denominator),
        })
    }
}

impl PolySubspace<Rat> {
    /// Span of the given polynomials; fails on linear dependence.
    pub fn new(basis: Vec<Poly<Rat>>) -> Result<Self, WronskianError> {
        PolySubspace::with_denominator(basis, Poly::one())
    }

    pub fn with_denominator(basis: Vec<Poly<Rat>>, den: Poly<Rat>) -> Result<Self, WronskianError> {
        if basis.is_empty() {
            return Err(WronskianError::Empty);
        }
        let len = basis.len();
        let m = coefficient_rows(&basis);
        let rank = rank_exact(&m);
        if rank < len {
            return Err(WronskianError::Dependent { rank, len });
        }
        let lc = den.leading().cloned().expect("zero denominator");
        let scaled: Vec<_> = basis.iter().map(|p| p.scale(&lc)).collect();
        Ok(PolySubspace {
            basis: echelon_exact(&scaled),
            den: den.make_monic(),
        })
    }

    /// Span of rational functions, brought over a common denominator.
    pub fn from_ratfuncs(fs: &[RatFunc]) -> Result<Self, WronskianError> {
        let mut den = Poly::one();
        for f in fs {
            let g = den.gcd(f.den());
            den = (&den * f.den()).div_rem(&g).0;
        }
        let nums = fs
            .iter()
            .map(|f| (f.num() * &den).div_rem(f.den()).0)
            .collect();
        PolySubspace::with_denominator(nums, den)
    }

    pub fn to_ratfuncs(&self) -> Vec<RatFunc> {
        self.basis
            .iter()
            .map(|p| RatFunc::new(p.clone(), self.den.clone()))
            .collect()
    }

    /// `{f in C[u] : f' in V}`: antiderivatives of the basis together with the
    /// constants. Only defined for spaces of polynomials.
    pub fn lift_dimension(&self) -> PolySubspace<Rat> {
        assert_eq!(self.den, Poly::one(), "lift_dimension needs a polynomial space");
        let mut b: Vec<Poly<Rat>> = self.basis.iter().map(antiderivative).collect();
        b.push(Poly::one());
        PolySubspace::new(b).expect("antiderivatives and 1 are independent")
    }

    pub fn monic_wronskian(&self) -> RatFunc {
        let (num, den) = self.monic_wronskian_parts();
        RatFunc::new(num, den)
    }

    pub fn fundamental_operator(&self) -> DiffOp<RatFunc> {
        fundamental_operator(&self.to_ratfuncs())
    }

    pub fn contains(&self, p: &Poly<Rat>) -> bool {
        let mut rows = self.basis.clone();
        rows.push(&p.clone() * &Poly::one());
        rank_exact(&coefficient_rows(&rows)) == self.basis.len()
    }
}

impl PolySubspace<BigComplex> {
    /// Numeric span, canonicalized with pivots below `tol` (relative to the
    /// largest coefficient) treated as zero.
    pub fn numeric(
        basis: Vec<Poly<BigComplex>>,
        den: Poly<BigComplex>,
        tol: &BigFloat,
    ) -> Result<Self, WronskianError> {
        if basis.is_empty() {
            return Err(WronskianError::Empty);
        }
        let len = basis.len();
        let b = echelon_numeric(&basis, tol);
        if b.len() < len {
            return Err(WronskianError::Dependent { rank: b.len(), len });
        }
        let lc = den.leading().cloned().expect("zero denominator");
        Ok(PolySubspace {
            basis: b,
            den: den.scale(&lc.inv()),
        })
    }

    /// Largest imaginary part among the canonical coefficients.
    pub fn max_imaginary(&self) -> BigFloat {
        let mut m = BigFloat::from_i64(0);
        for p in self.basis.iter().chain(std::iter::once(&self.den)) {
            for c in p.coeffs() {
                m = m.max(c.im.abs());
            }
        }
        m
    }

    /// Rounds every coefficient to a multiple of `quantum`; used to compare
    /// numerically computed spaces.
    pub fn quantized(&self, quantum: &BigFloat) -> Vec<Vec<(rug::Integer, rug::Integer)>> {
        self.basis
            .iter()
            .map(|p| p.coeffs().iter().map(|c| c.quantize(quantum)).collect())
            .collect()
    }
}

impl<S: Field> std::fmt::Debug for PolySubspace<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<{:?}> / {:?}", self.basis, self.den)
    }
}

impl<S: Field> PolySubspace<S> {
    /// Wraps a basis that is already in canonical form.
    pub(crate) fn from_canonical(basis: Vec<Poly<S>>, den: Poly<S>) -> Self {
        debug_assert!(basis.iter().all(|p| p.leading().is_some()));
        PolySubspace { basis, den }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Canonical numerators.
    pub fn basis(&self) -> &[Poly<S>] {
        &self.basis
    }

    pub fn denominator(&self) -> &Poly<S> {
        &self.den
    }

    /// Monic Wronskian as `(numerator, denominator)` with monic numerator:
    /// `Wr(p_i / den) = Wr(p_i) / den^m`.
    pub fn monic_wronskian_parts(&self) -> (Poly<S>, Poly<S>) {
        let wr = wronskian(&self.basis);
        (wr.make_monic(), self.den.pow(self.basis.len() as u32))
    }

    /// Degrees of the canonical basis, descending.
    pub fn degrees(&self) -> Vec<usize> {
        self.basis.iter().map(|p| p.degree().unwrap_or(0)).collect()
    }
}

fn coefficient_rows<S: Field>(basis: &[Poly<S>]) -> Matrix<S> {
    let width = basis.iter().filter_map(|p| p.degree()).max().unwrap_or(0) + 1;
    Matrix::from_fn(basis.len(), width, |i, j| basis[i].coeff(width - 1 - j))
}

fn rows_to_polys<S: Field>(rows: Vec<Vec<S>>) -> Vec<Poly<S>> {
    rows.into_iter()
        .map(|mut r| {
            r.reverse();
            Poly::new(r)
        })
        .collect()
}

fn echelon_exact(basis: &[Poly<Rat>]) -> Vec<Poly<Rat>> {
    let (r, pivots) = crate::exactalg::rref(&coefficient_rows(basis));
    rows_to_polys(r.to_rows().into_iter().take(pivots.len()).collect())
}

fn echelon_numeric(basis: &[Poly<BigComplex>], tol: &BigFloat) -> Vec<Poly<BigComplex>> {
    rows_to_polys(echelon_rows_numeric(coefficient_rows(basis).to_rows(), tol))
}

fn antiderivative(p: &Poly<Rat>) -> Poly<Rat> {
    let mut v = vec![Rat::zero()];
    for (i, c) in p.coeffs().iter().enumerate() {
        v.push(c.clone() / Rat::from_int(i as i64 + 1));
    }
    Poly::new(v)
}

/// `det (f_i^(j))_{i,j < m}` over any differential ring.
pub fn wronskian<F: DiffRing>(fs: &[F]) -> F {
    assert!(!fs.is_empty(), "Wronskian of an empty list");
    let m = fs.len();
    let ders = derivative_table(fs, m);
    determinant(&Matrix::from_fn(m, m, |i, j| ders[i][j].clone()))
}

fn derivative_table<F: DiffRing>(fs: &[F], upto: usize) -> Vec<Vec<F>> {
    fs.iter()
        .map(|f| {
            let mut row = vec![f.clone()];
            for _ in 1..upto {
                let d = row.last().unwrap().derivative();
                row.push(d);
            }
            row
        })
        .collect()
}

/// The determinant with rows `(f_i, f_i', .., f_i^(m))` and a last row
/// `(1, d, .., d^m)`, expanded along the last row. The coefficient of `d^m`
/// is `Wr(f_1, .., f_m)`; applied to `g` it gives `Wr(f_1, .., f_m, g)`.
pub fn cofactor_operator<F: DiffRing>(fs: &[F]) -> DiffOp<F> {
    let m = fs.len();
    let ders = derivative_table(fs, m + 1);
    let coeffs = (0..=m)
        .map(|j| {
            if m == 0 {
                panic!("cofactor operator of an empty list");
            }
            let minor = Matrix::from_fn(m, m, |i, c| {
                let col = if c < j { c } else { c + 1 };
                ders[i][col].clone()
            });
            let d = determinant(&minor);
            if (m + j) % 2 == 1 {
                d.negated()
            } else {
                d
            }
        })
        .collect();
    DiffOp::new(coeffs)
}

/// The monic operator of order `m` whose kernel is the span of `fs`.
pub fn fundamental_operator<F: Field + DiffRing>(fs: &[F]) -> DiffOp<F> {
    let c = cofactor_operator(fs);
    let wr = c.coeffs().last().cloned().expect("independent functions");
    let inv = wr.inv();
    c.map(|x| x.clone() * inv.clone())
}

/// Matrix of the polynomial operator `sum_j P_j d^j` on `1, u, .., u^bound`:
/// column `d` holds the coefficients of the image of `u^d`.
fn action_matrix<S: Field>(polys: &[Poly<S>], bound: usize) -> Matrix<S> {
    let images: Vec<Poly<S>> = (0..=bound)
        .map(|d| {
            let mut acc = Poly::zero();
            let mut mono = Poly::monomial(S::one(), d);
            for p in polys {
                if !p.is_zero() && !mono.is_zero() {
                    acc = &acc + &(p * &mono);
                }
                mono = mono.derivative();
            }
            acc
        })
        .collect();
    let height = images.iter().filter_map(|p| p.degree()).max().unwrap_or(0) + 1;
    Matrix::from_fn(height, bound + 1, |i, j| images[j].coeff(i))
}

/// Polynomial solutions of degree at most `bound`, found by clearing
/// denominators and solving the linear system on coefficient vectors.
pub fn poly_kernel(op: &DiffOp<RatFunc>, bound: usize) -> Option<PolySubspace<Rat>> {
    let mut den = Poly::one();
    for c in op.coeffs() {
        let g = den.gcd(c.den());
        den = (&den * c.den()).div_rem(&g).0;
    }
    let polys: Vec<Poly<Rat>> = op
        .coeffs()
        .iter()
        .map(|c| (c.num() * &den).div_rem(c.den()).0)
        .collect();
    let ns = nullspace_exact(&action_matrix(&polys, bound));
    if ns.is_empty() {
        return None;
    }
    Some(PolySubspace::new(ns.into_iter().map(Poly::new).collect()).expect("nullspace basis"))
}

/// Numeric polynomial kernel of an operator whose coefficients share the
/// denominator `w^k`.
pub fn poly_kernel_numeric(
    op: &DiffOp<WFrac<BigComplex>>,
    bound: usize,
    tol: &BigFloat,
) -> Result<Option<PolySubspace<BigComplex>>, WronskianError> {
    let top = op.coeffs().iter().map(|c| c.pow()).max().unwrap_or(0);
    let polys: Vec<Poly<BigComplex>> = op.coeffs().iter().map(|c| c.num_over(top)).collect();
    let m = action_matrix(&polys, bound);
    let ns = nullspace_numeric(&m, tol)?;
    if ns.is_empty() {
        return Ok(None);
    }
    let basis = ns.into_iter().map(Poly::new).collect();
    PolySubspace::numeric(basis, Poly::one(), tol).map(Some)
}

/// The kernel space when `op` has a full polynomial kernel of degree at most
/// `bound`.
pub fn is_fundamental(op: &DiffOp<RatFunc>, bound: usize) -> Option<PolySubspace<Rat>> {
    let ord = op.order()?;
    poly_kernel(op, bound).filter(|v| v.dim() == ord)
}
