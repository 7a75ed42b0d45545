use thiserror::Error;

/// Errors surfaced by the library. Contract violations that can only arise
/// from internal bugs (integrality of lambda, canonical-form breakage) are
/// asserted instead and abort loudly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied argument is outside the documented domain.
    #[error("invalid {name}: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    /// Formal log requires the X^0, q^0 coefficient to be exactly 1.
    #[error("leading coefficient is not the unit 1: found {found}")]
    NonUnitLeadingCoefficient { found: String },

    /// The coefficient-matching matrix was rank-deficient. The true matrix is
    /// invertible, so this signals a truncation-order bug in the caller.
    #[error("singular coefficient system at weight {weight}")]
    SingularSystem { weight: u32 },

    /// The series solved against the first rows but a later coefficient
    /// disagrees: it is not in the span of the requested basis.
    #[error("series is not in the weight-{weight} span: residual at q-exponent {exponent_x2}/2")]
    NotInSpan { weight: u32, exponent_x2: i64 },

    /// A decomposition needs the input known to at least basis size + 2.
    #[error("series order {available} too low: need at least {needed}")]
    OrderTooLow { needed: i64, available: i64 },

    /// Modular reduction of a rational whose denominator the modulus divides.
    #[error("denominator divisible by {p}: cannot reduce {coefficient} mod {p}")]
    DenominatorDivisibleByP { p: u64, coefficient: String },

    /// A requested truncation order is beyond what this build will attempt.
    #[error("requested order {order} exceeds the supported bound {bound}")]
    OrderInfeasible { order: i128, bound: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
