//! Exact joint moments of the characteristic polynomial of a CUE random
//! matrix and its derivative.
//!
//! For an `N×N` Haar-random unitary `U` with rotated characteristic
//! polynomial `V_U`, this crate computes
//!
//! ```text
//! F̃_N(h, k) = E[ |V_U(0)|^(2k-2h) |V'_U(0)|^(2h) ]
//! ```
//!
//! exactly (as rationals, or rational multiples of `1/π`) for integer and
//! half-integer `h`, together with the large-`N` limits `F(h, k)`. Every
//! result can be cross-checked by exact polynomial identities
//! ([`coefficients`], [`specfun`]), by direct quadrature and by Monte Carlo
//! over Haar-random unitaries ([`oracles`]).
//!
//! The half-integer order `h` is always carried as the integer `two_h = 2h`.

pub mod coefficients;
pub mod error;
pub mod moments;
pub mod oracles;
pub mod partitions;
pub mod rational;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use moments::{ExactScalar, LimitResult, MomentOrder};
pub use partitions::Partition;
pub use rational::Rational;
