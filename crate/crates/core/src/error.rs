use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The pair `(h, k)` violates `k > h - 1/2`.
    #[error("inadmissible order: two_h = {two_h}, k = {k} (need 2k + 1 > two_h)")]
    Inadmissible { two_h: u32, k: u32 },

    #[error("two_h = {0} has the wrong parity for this formula")]
    WrongParity(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no closed form for C(p, k) with k = {0}; only k = 1 and k = 2 are known")]
    NoClosedForm(u32),

    #[error("tail bound requires p >= 2, got p = {0}")]
    BoundHypothesis(u32),

    #[error("Laguerre polynomial L_{n}^({alpha}) needs n + alpha >= 0")]
    LaguerreDomain { n: u32, alpha: i64 },

    #[error("tolerance {tol:e} not reached within {cap} series terms")]
    ToleranceUnreachable { tol: f64, cap: usize },

    #[error("Haar sampler failure: {0}")]
    Sampler(String),

    #[error("phase sample hits the cotangent pole at theta = 0")]
    CotangentPole,

    #[error("quadrature did not converge: error estimate {estimate:e} after {subdivisions} subdivisions")]
    Quadrature { estimate: f64, subdivisions: usize },
}
