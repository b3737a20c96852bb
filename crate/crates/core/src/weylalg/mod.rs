//! Differential operators with rational-function or group-algebra
//! coefficients, and the factorization polynomials used to expand the
//! product of the Bethe operators.

mod check;
mod diffop;
mod phi;

pub use check::{check_f_vanishing, FVanishingReport};
pub use diffop::DiffOp;
pub use phi::{
    cycle_type_on, expansion_sum, f_operator, factorization_poly, lift, phi, q_subset,
    subset_form, subset_form_with, PhiPoly,
};

use crate::exactalg::RatFunc;
use crate::symgroup::GroupAlgebraElement;

/// `omega` on group-algebra valued operators: `d -> -d`, `g -> g`,
/// `sigma -> sgn(sigma) sigma^-1`, reversing products.
pub fn omega_group(
    op: &DiffOp<GroupAlgebraElement<RatFunc>>,
) -> DiffOp<GroupAlgebraElement<RatFunc>> {
    op.omega(|c| c.signed_inverse())
}

/// `omega` on scalar operators.
pub fn omega_scalar(op: &DiffOp<RatFunc>) -> DiffOp<RatFunc> {
    op.omega(|c| c.clone())
}
