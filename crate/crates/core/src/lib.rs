//! Exact computation of the normal Cartan connection and curvature of
//! left-invariant strict path structures on three-dimensional Lie groups,
//! with the classification of the result and the mutation of constant
//! curvature structures to `sl(2) ⊕ a`.

pub mod cartan_connection;
pub mod cli_io;
pub mod curvature;
pub mod exact_field;
pub mod lie_algebra;
pub mod lorentz_metric;
pub mod models_dynamics;
pub mod mutation;
pub mod path_structure;
pub mod selftest;
