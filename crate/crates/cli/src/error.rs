use std::process::ExitCode;

use padovan_core::closed_form::ForbiddenSet;
use padovan_core::Error;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("initial conditions lie in forbidden set {set} (denominator vanishes at n = {index})")]
    Forbidden { set: ForbiddenSet, index: i64 },

    #[error(transparent)]
    Core(Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ForbiddenInitials { set, index } => CliError::Forbidden { set, index },
            Error::ParameterDomain(_) | Error::InvalidInitials(_) | Error::Parse { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    schema_version: &'static str,
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    set: Option<ForbiddenSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<i64>,
}

impl CliError {
    /// 2 for configuration problems, 3 for forbidden initials under `--strict`.
    pub fn exit_code(&self, strict: bool) -> ExitCode {
        match self {
            CliError::Config(_) => ExitCode::from(2),
            CliError::Forbidden { .. } if strict => ExitCode::from(3),
            _ => ExitCode::FAILURE,
        }
    }

    /// Forbidden hits are reported as a JSON object so scripts can read the
    /// set and index; everything else is a plain message.
    pub fn report(&self) {
        match self {
            CliError::Forbidden { set, index } => {
                let envelope = ErrorEnvelope {
                    schema_version: "1",
                    error: ErrorBody {
                        kind: "forbidden_initials",
                        message: self.to_string(),
                        set: Some(*set),
                        index: Some(*index),
                    },
                };
                match serde_json::to_string(&envelope) {
                    Ok(line) => eprintln!("{line}"),
                    Err(_) => eprintln!("error: {self}"),
                }
            }
            _ => eprintln!("error: {self}"),
        }
    }
}
