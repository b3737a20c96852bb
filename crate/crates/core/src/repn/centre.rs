use serde::{Deserialize, Serialize};

use super::{central_scalar, IrrepModel, Partition, RepnError};
use crate::exactalg::Rat;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentreReport {
    pub n: usize,
    pub partitions: usize,
    /// pairs of partitions sharing a `c^lambda` tuple
    pub collisions: Vec<(Partition, Partition)>,
    /// whether `b^lambda_k` was compared against the matrix action
    pub matrices_checked: bool,
    /// `(lambda, k, message)` for each scalar that did not match
    pub scalar_failures: Vec<(Partition, usize, String)>,
}

impl CentreReport {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.scalar_failures.is_empty()
    }
}

/// The central elements `beta^-_{n-k,0}` separate the irreducible modules:
/// checks that the `c^lambda` tuples are pairwise distinct and, when
/// `with_matrices`, that each `beta^-_{n-k,0}` acts on the seminormal model
/// of `M^lambda` as the scalar `(n! / dim M^lambda) c^lambda_k`.
pub fn check_centre(n: usize, with_matrices: bool) -> Result<CentreReport, RepnError> {
    let parts = Partition::all(n);
    let tuples: Vec<Vec<Rat>> = parts.iter().map(crate::schubert::c_lambda).collect();
    let mut collisions = Vec::new();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if tuples[i] == tuples[j] {
                collisions.push((parts[i].clone(), parts[j].clone()));
            }
        }
    }
    let mut scalar_failures = Vec::new();
    if with_matrices && n > 0 {
        for lambda in &parts {
            let model = IrrepModel::build(lambda)?;
            for k in 0..=n {
                match central_scalar(lambda, k, Some(&model)) {
                    Ok(_) => {}
                    Err(RepnError::Inconsistent(msg)) => scalar_failures.push((lambda.clone(), k, msg)),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(CentreReport {
        n,
        partitions: parts.len(),
        collisions,
        matrices_checked: with_matrices,
        scalar_failures,
    })
}
