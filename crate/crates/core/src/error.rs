use thiserror::Error;

/// Errors raised by the model, dynamics and analysis layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A closed form would divide by (numerically) zero.
    #[error("singular denominator {expr} = {value}")]
    SingularDenominator { expr: &'static str, value: f64 },
    /// A fixed point of the dynamic map cannot be evaluated.
    #[error("fixed point {label} is undefined: singular denominator {expr} = {value}")]
    SingularFixedPoint {
        label: &'static str,
        expr: &'static str,
        value: f64,
    },
    /// The operation's precondition does not hold for these inputs.
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    /// A parameter lies outside its admissible range.
    #[error("{field} = {value} is out of range: expected {bound}")]
    OutOfRange {
        field: &'static str,
        bound: &'static str,
        value: f64,
    },
    /// An analysis setting is malformed (empty sweep, zero grid, ...).
    #[error("invalid setting: {0}")]
    InvalidSetting(&'static str),
}
