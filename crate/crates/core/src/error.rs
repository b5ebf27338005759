use core::fmt;

/// Errors raised while configuring or evaluating the model.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical parameter is outside its admissible range.
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// The trapped-ion nonlinearity hits a Laguerre root inside the truncation.
    LaguerreDenominator {
        n: usize,
        eta: f64,
        denominator: f64,
    },
    /// A nonlinearity value is NaN or infinite.
    NonFiniteCoupling { n: usize, value: f64 },
    /// A custom nonlinearity table does not cover every required argument.
    CustomTableLength { expected: usize, found: usize },
    /// Probability mass beyond the Fock cutoff is too large.
    Truncation { n_max: usize, tail_mass: f64 },
    /// Supplied field amplitudes are not normalized.
    Normalization { norm: f64 },
    /// The quadrature grid misses part of the probability density.
    GridTooSmall { deficit: f64 },
    /// Mandel `Q` is undefined for a (numerically) empty field.
    UndefinedStatistic { mean_photon_number: f64 },
    /// Requested moment order exceeds the truncation.
    MomentOrder { r: usize, n_max: usize },
    /// RK4 norm drift exceeded the allowed budget.
    StepSize { dt: f64, drift: f64 },
    /// Two states live on different Hilbert spaces.
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter {
                name,
                value,
                reason,
            } => write!(f, "invalid parameter `{name}` = {value}: {reason}"),
            Error::LaguerreDenominator {
                n,
                eta,
                denominator,
            } => write!(
                f,
                "trapped-ion nonlinearity is singular at n = {n} for eta = {eta} \
                 (Laguerre denominator {denominator:e})"
            ),
            Error::NonFiniteCoupling { n, value } => {
                write!(f, "nonlinearity g({n}) = {value} is not finite")
            }
            Error::CustomTableLength { expected, found } => write!(
                f,
                "custom nonlinearity table needs {expected} values g(1..=n_max+1), got {found}"
            ),
            Error::Truncation { n_max, tail_mass } => write!(
                f,
                "Fock truncation n_max = {n_max} leaves tail mass {tail_mass:e}; increase n_max"
            ),
            Error::Normalization { norm } => {
                write!(f, "field amplitudes have norm {norm}, expected 1")
            }
            Error::GridTooSmall { deficit } => write!(
                f,
                "quadrature grid misses probability mass {deficit:e}; widen or refine the grid"
            ),
            Error::UndefinedStatistic { mean_photon_number } => write!(
                f,
                "Mandel Q undefined for mean photon number {mean_photon_number:e}"
            ),
            Error::MomentOrder { r, n_max } => {
                write!(
                    f,
                    "moment order {r} exceeds Fock truncation n_max = {n_max}"
                )
            }
            Error::StepSize { dt, drift } => write!(
                f,
                "RK4 norm drift {drift:e} with dt = {dt}; use a smaller step"
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
