//! Exact Cartesian-decomposition machinery for polynomials `F(x, y, s, t)`
//! and exact incidence counting on products `P x Q` of planar point sets.
//!
//! Everything is computed over the Gaussian rationals `Q(i)`; no floating
//! point enters any count or membership test.

pub mod algebra;
pub mod geometry;
pub mod nullstellensatz;
pub mod constructions;
pub mod cli;
