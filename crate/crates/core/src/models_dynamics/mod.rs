//! Built-in models, the generated corpus, the integer Heisenberg lattice and
//! the diagonal flow on SL(2,ℝ). Floating point appears only in [`flow`].

pub mod flow;
mod gallery;
mod heisenberg;

use thiserror::Error;

use crate::lie_algebra::LieError;
use crate::path_structure::FrameError;

pub use flow::{
    cocycle_defect, diagonal_flow_differential, verify_anosov_estimate, verify_anosov_estimate_with,
    AnosovReport, FlowEstimate, REL_TOL_COMPOSED, REL_TOL_SINGLE,
};
pub use gallery::{builtin_model, corpus, family_member, BuiltinModel, FamilyParams};
pub use heisenberg::{central_flow_period, heis_mul, heis_reduce_mod_lattice, HeisPoint};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("unknown model {0:?} (expected one of heis3, sl2, sl2_k:<k>, su2)")]
    UnknownModel(String),
    #[error("time must be finite, got {0}")]
    NonFiniteTime(f64),
    #[error("time grid points must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("time grid is empty")]
    EmptyGrid,
    #[error("measured norm must be positive, got {0}")]
    NonPositiveNorm(f64),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}
