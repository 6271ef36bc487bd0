use thiserror::Error;

/// Errors produced by parameter validation and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor or operation received a value outside its domain.
    #[error("invalid parameter `{name}` = {value}: must satisfy {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// A power split violates the interference budget of the NOMA phase.
    #[error("infeasible split: beta1 * rho_n * g_n = {noma_power} exceeds tau_m = {tau_m}")]
    InfeasibleSplit { noma_power: f64, tau_m: f64 },

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error(
        "quadrature did not converge: error estimate {error_estimate:e} > {abs_tol:e} \
         after {subdivisions} subdivisions on [{a}, {b}]"
    )]
    QuadratureNonConvergence {
        error_estimate: f64,
        abs_tol: f64,
        subdivisions: usize,
        a: f64,
        b: f64,
    },

    /// The integrand returned a non-finite value.
    #[error("quadrature evaluated a non-finite integrand value near [{a}, {b}]")]
    NonFiniteIntegrand { a: f64, b: f64 },

    /// A quantity that must be a probability landed outside [0, 1] by more
    /// than the numerical tolerance, indicating an internal bug.
    #[error("internal consistency failure in {context}: {value} is outside [0, 1] by more than {tolerance:e}")]
    NotAProbability {
        context: &'static str,
        value: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
