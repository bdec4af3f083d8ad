//! Floating-point ground truth that shares no code path with the exact
//! formulas: Monte Carlo over Haar-random unitaries, and direct quadrature of
//! the defining integral `H(k, ζ)`.

mod haar;
mod mc;
mod quad;

pub use haar::{sample_cue_phases, v_values, PhaseSample};
pub use mc::{mc_moment, trial_rng, MCEstimate};
pub use quad::{adaptive_gauss_kronrod, quad_h, Integral};
