//! Incidences between finite point sets and the curves cut out by `F`.
//!
//! For `q = (s_q, t_q)` the curve `C_q` is `F(x, y, s_q, t_q) = 0` in the
//! first plane, and for `p` the dual curve `C_p*` is `F(x_p, y_p, s, t) = 0`
//! in the second; `p ∈ C_q` exactly when `q ∈ C_p*`.

mod count;
mod envelope;
mod incidence;
mod kst;
mod modular;
mod partition;
mod points;
mod values;

pub use count::{count_intersections, specialize, CountOptions, IncidenceReport, Side, SpecializedCurve};
pub use envelope::{Envelope, EnvelopeKind, DIGITS};
pub use incidence::{incidence_graph, BitSet, IncidenceGraph};
pub use kst::{kst_free_check, KstWitness, DEFAULT_BUDGET};
pub use partition::{partition_rich, RichPartition};
pub use points::{Point, PointSet};
pub use values::{distinct_values, fiber_probe, map_values, repeated_values, DistinctValues, FiberOutcome, MapMode, MapValues};

use thiserror::Error;

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("duplicate point {point} at index {index}")]
    DuplicatePoint { index: usize, point: String },
    #[error("the zero polynomial defines no curve")]
    ZeroPolynomial,
    #[error("a system has one or two polynomials, got {0}")]
    SystemSize(usize),
    #[error("search needs about {estimate} steps, above the budget of {budget}")]
    ComplexityGuard { estimate: u128, budget: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
