use tauroot::cyreduce::CyError;
use tauroot::io::FormatError;
use tauroot::mckay::McKayError;
use tauroot::shiftedsum::ShiftedSumError;
use tauroot::ztranslation::ZError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad invocation or an input file that does not parse.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    McKay(#[from] McKayError),
    #[error(transparent)]
    Z(#[from] ZError),
    #[error(transparent)]
    Cy(#[from] CyError),
    #[error(transparent)]
    ShiftedSum(#[from] ShiftedSumError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn format(path: &str, e: FormatError) -> Self {
        match e {
            FormatError::Invalid(q) => CliError::Invalid(format!("{path}: {q}")),
            other => CliError::Usage(format!("{path}: {other}")),
        }
    }
}
