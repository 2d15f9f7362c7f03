use std::fmt;
use std::process::ExitCode;

use kcsim::compressor::CompressError;
use kcsim::corpus::CorpusError;
use kcsim::distances::DistanceError;
use kcsim::relations::RelationError;

pub const MALFORMED: u8 = 2;
pub const NOT_FOUND: u8 = 3;
pub const UNDEFINED: u8 = 4;
pub const PROVIDER_FAILURE: u8 = 5;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Self::new(MALFORMED, message)
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CompressError> for CliError {
    fn from(e: CompressError) -> Self {
        Self::malformed(e.to_string())
    }
}

impl From<DistanceError> for CliError {
    fn from(e: DistanceError) -> Self {
        let code = match e {
            DistanceError::UnsupportedKind(_) | DistanceError::Compress(_) => MALFORMED,
            _ => UNDEFINED,
        };
        Self::new(code, e.to_string())
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        let code = match e {
            CorpusError::PairNotFound(..) => NOT_FOUND,
            CorpusError::Counts(ref d) => return Self::new(CliError::from(d.clone()).code, e.to_string()),
            _ => MALFORMED,
        };
        Self::new(code, e.to_string())
    }
}

impl From<RelationError> for CliError {
    fn from(e: RelationError) -> Self {
        Self::malformed(e.to_string())
    }
}
