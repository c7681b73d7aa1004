use std::fmt;
use std::process::ExitCode;

use rabi_core::Error;

/// Error carrying the process exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const USAGE: u8 = 2;
pub const COMPUTE: u8 = 1;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn compute(message: impl Into<String>) -> Self {
        Self {
            code: COMPUTE,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_)
            | Error::CutoffTooSmall { .. }
            | Error::CountOutOfRange { .. }
            | Error::Unknown { .. }
            | Error::Rejected(_)
            | Error::Config { .. } => USAGE,
            Error::NonFinite { .. } | Error::Regime { .. } | Error::Domain(_) | Error::Solver(_) => {
                COMPUTE
            }
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::compute(format!("i/o: {e}"))
    }
}
