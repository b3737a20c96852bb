//! Partitions, Young's seminormal representations of S_n, and common
//! eigenspaces of the Bethe generators inside each irreducible module.

mod centre;
mod eigen;
mod irrep;
mod partition;

use thiserror::Error;

use crate::exactalg::NumericError;

pub use centre::{check_centre, CentreReport};
pub use eigen::{
    central_scalar, generator_matrices, simultaneous_eigenspaces, EigenspaceRecord, GenKey,
};
pub use irrep::{standard_tableaux, IrrepModel, Tableau};
pub use partition::Partition;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepnError {
    #[error("not a partition: {0:?}")]
    NotAPartition(Vec<usize>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("the empty partition has no module")]
    Empty,
    #[error("Coxeter relation {0} fails")]
    Coxeter(String),
    #[error("a generator is not scalar on a candidate eigenspace (relative residual {residual:.3e})")]
    NotScalar { residual: f64 },
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}
