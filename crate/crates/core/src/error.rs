use thiserror::Error;

use crate::numerics::FieldDescriptor;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field descriptors differ: {0} vs {1}")]
    FieldMismatch(FieldDescriptor, FieldDescriptor),
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("expected an irrational number, got a rational one")]
    RationalInput,
    #[error("precision exhausted after {terms} terms")]
    PrecisionExhausted { terms: usize },
    #[error("digit {digit} at level {level} is outside 0..{bound}")]
    DigitOutOfRange { level: usize, digit: u64, bound: u64 },
    #[error("{0} is not a point of the constellation")]
    NotInConstellation(i64),
    #[error("channel gain h[{0}][{1}] is zero")]
    ZeroGain(usize, usize),
    #[error("gains mix exact and numeric values")]
    ModeMismatch,
    #[error("operation requires exact gains")]
    ExactModeRequired,
    #[error("G0 = {0} is rational: use the single-stream scheme with m = 1")]
    RationalG0(String),
    #[error("enumeration needs {needed} tuples but the cap is {cap} (about {bytes} bytes)")]
    CapExceeded { needed: u128, cap: u64, bytes: u128 },
    #[error("received constellation carries a single label")]
    SingleLabel,
    #[error("only {usable} usable sweep points, need at least {needed}")]
    TooFewPoints { usable: usize, needed: usize },
    #[error("every sweep point is noise dominated")]
    NoiseDominated,
    #[error("received constellation was not built from this model")]
    ModelMismatch,
    #[error("a kappa estimate is required for the Khintchine-Groshev bound")]
    MissingKappa,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch(..) => "field_mismatch",
            Error::InvalidField(_) => "invalid_field",
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::RationalInput => "rational_input",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::DigitOutOfRange { .. } => "digit_out_of_range",
            Error::NotInConstellation(_) => "not_in_constellation",
            Error::ZeroGain(..) => "zero_gain",
            Error::ModeMismatch => "mode_mismatch",
            Error::ExactModeRequired => "exact_mode_required",
            Error::RationalG0(_) => "rational_g0",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::SingleLabel => "single_label",
            Error::TooFewPoints { .. } => "too_few_points",
            Error::NoiseDominated => "noise_dominated",
            Error::ModelMismatch => "model_mismatch",
            Error::MissingKappa => "missing_kappa",
            Error::Overflow(_) => "overflow",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Csv(_) => "csv",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
