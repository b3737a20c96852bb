//! The Bethe operators `D-` and `D+` with group-algebra coefficients, their
//! scalar restrictions to common eigenspaces, and the pipeline that turns
//! eigenspaces into solutions of the inverse Wronskian problem.

mod pipeline;
mod restrict;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{DiffRing, Field, Poly, Rat, RatFunc, Ring, WFrac};
use crate::repn::RepnError;
use crate::symgroup::{beta_shifted, BetheConfig, GroupAlgebraElement, Perm, Sign};
use crate::weylalg::{omega_group, subset_form, DiffOp};
use crate::wronskian::WronskianError;

pub use pipeline::{
    check_reality, check_w_power_wronskian, duplicate_pairs, solve_inverse_wronskian,
    LambdaCount, RealityReport, Rejection, SolutionRecord, SolveOptions, SolveReport,
    WPowerReport,
};
pub use restrict::{product_residual, restrict, ScalarOperator};

#[derive(Debug, Error)]
pub enum BetheError {
    #[error(transparent)]
    Repn(#[from] RepnError),
    #[error(transparent)]
    Wronskian(#[from] WronskianError),
    #[error("configuration has {got} points, expected {expected}")]
    Size { got: usize, expected: usize },
}

pub type GaOp = DiffOp<GroupAlgebraElement<RatFunc>>;

/// `D- = sum_k (-1)^k beta-_{k,n-k}(u)/w d^(n-k)` and
/// `D+ = sum_k d^(n-k) beta+_{k,n-k}(u)/w`, both in canonical form.
#[derive(Clone, Debug)]
pub struct BetheOperatorPair {
    pub cfg: BetheConfig<Rat>,
    pub d_minus: GaOp,
    pub d_plus: GaOp,
}

pub fn build_operators(cfg: &BetheConfig<Rat>) -> BetheOperatorPair {
    let w = cfg.w();
    let (d_minus, d_plus) = assemble(cfg, |p| RatFunc::new(p, w.clone()));
    BetheOperatorPair {
        cfg: cfg.clone(),
        d_minus,
        d_plus,
    }
}

/// `(D-, D+)` with `beta(u) / w` represented by `over_w(beta(u))`.
fn assemble<C: DiffRing>(
    cfg: &BetheConfig<Rat>,
    over_w: impl Fn(Poly<Rat>) -> C,
) -> (DiffOp<GroupAlgebraElement<C>>, DiffOp<GroupAlgebraElement<C>>) {
    let n = cfg.n();
    let coeff = |k, sign| beta_shifted(cfg, k, sign).map_coeffs(|p| over_w(p.clone()));
    let mut d_minus = DiffOp::zero();
    let mut d_plus = DiffOp::zero();
    for k in 0..=n {
        let c = coeff(k, Sign::Minus);
        let c = if k % 2 == 1 { c.negated() } else { c };
        d_minus = d_minus.add(&DiffOp::monomial(c, n - k));
        d_plus = d_plus.add(&DiffOp::d_power_times(n - k, &coeff(k, Sign::Plus)));
    }
    (d_minus, d_plus)
}

impl BetheOperatorPair {
    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    /// Leading coefficient 1, and `-w'/w`, `+w'/w` one order below.
    pub fn invariants_hold(&self) -> bool {
        let n = self.n();
        let w = self.cfg.w();
        let lw = RatFunc::new(w.derivative(), w);
        let scalar = |c: RatFunc| GroupAlgebraElement::scalar(n, c);
        self.d_minus.coeff(n) == scalar(RatFunc::one())
            && self.d_plus.coeff(n) == scalar(RatFunc::one())
            && self.d_minus.coeff(n - 1) == scalar(-lw.clone())
            && self.d_plus.coeff(n - 1) == scalar(lw)
    }

    /// `omega(D-) = (-1)^n D+`.
    pub fn omega_relation_holds(&self) -> bool {
        let o = omega_group(&self.d_minus);
        if self.n().is_multiple_of(2) {
            o == self.d_plus
        } else {
            o == self.d_plus.neg()
        }
    }

    /// Both operators agree with the sums over subsets.
    pub fn matches_subset_form(&self) -> bool {
        let (plus, minus) = subset_form(&self.cfg);
        plus == self.d_plus && minus == self.d_minus
    }
}

/// Outcome of the exact check `D+ D- = d^(2n)` for one configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: usize,
    pub z: Vec<Rat>,
    pub holds: bool,
    /// the same identity after applying `sigma -> sgn(sigma) sigma` to both
    /// factors
    pub star_holds: bool,
    pub omega_holds: bool,
    pub invariants_hold: bool,
    pub max_support: usize,
    /// `(order, permutation, coefficient)` of the first wrong term
    pub first_mismatch: Option<(usize, String, String)>,
    /// wall-clock time; cleared when byte-stable output is wanted
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.holds && self.star_holds && self.omega_holds && self.invariants_hold
    }
}

fn first_mismatch<C: DiffRing + fmt::Display>(
    op: &DiffOp<GroupAlgebraElement<C>>,
    n: usize,
    minus_one: &C,
) -> Option<(usize, String, String)> {
    let top = 2 * n;
    let len = op.coeffs().len().max(top + 1);
    for j in 0..len {
        let mut c = op.coeff(j);
        if j == top {
            c.add_term(Perm::identity(n), minus_one.clone());
        }
        if let Some((p, v)) = c.terms().iter().next() {
            return Some((j, p.to_string(), v.to_string()));
        }
    }
    None
}

/// Exact check of `D+ D- = d^(2n)`. Every coefficient is a polynomial over
/// a power of `w`, so the product is formed on numerators without any gcd
/// computations.
pub fn verify_identity(cfg: &BetheConfig<Rat>) -> IdentityReport {
    let start = Instant::now();
    let n = cfg.n();
    let w = cfg.w();
    let (d_minus, d_plus) = assemble(cfg, |p| WFrac::new(p, 1, &w));
    let product = d_plus.mul(&d_minus);
    let max_support = product
        .coeffs()
        .iter()
        .chain(d_plus.coeffs())
        .chain(d_minus.coeffs())
        .map(|c| c.len())
        .max()
        .unwrap_or(0);
    let minus_one = WFrac::new(Poly::constant(-Rat::one()), 0, &w);
    let mismatch = first_mismatch(&product, n, &minus_one);
    // sigma -> sgn(sigma) sigma is multiplicative, so this is the product
    // of the twisted operators
    let star_product = product.map(|c| c.star());
    let omega = d_minus.omega(|c| c.signed_inverse());
    let omega_holds = if n.is_multiple_of(2) {
        omega == d_plus
    } else {
        omega == d_plus.neg()
    };
    IdentityReport {
        n,
        z: cfg.z().to_vec(),
        holds: mismatch.is_none(),
        star_holds: first_mismatch(&star_product, n, &minus_one).is_none(),
        omega_holds,
        invariants_hold: build_operators(cfg).invariants_hold(),
        max_support,
        first_mismatch: mismatch,
        millis: Some(start.elapsed().as_millis()),
    }
}
