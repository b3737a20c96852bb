//! Computer algebra for the Gaudin Bethe subalgebra of the symmetric group
//! algebra, its fundamental differential operators, and the inverse
//! Wronskian problem with real polynomial kernels.

pub mod exactalg;
pub mod symgroup;
pub mod weylalg;
pub mod wronskian;
pub mod repn;
pub mod schubert;
pub mod bethe;
