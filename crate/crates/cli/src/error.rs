use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}invalid {field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation {
        line: Option<usize>,
        field: String,
        message: String,
    },
    #[error("unknown event {0:?}")]
    UnknownEvent(String),
    #[error("the tower suite needs a \"tower\" entry in the setup file")]
    MissingTower,
    #[error("{0} check(s) failed")]
    VerificationFailed(usize),
    #[error(transparent)]
    Core(#[from] fmeas_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed(_) => EXIT_VERIFICATION,
            CliError::Core(fmeas_core::Error::CapExceeded { .. }) => EXIT_CAP,
            CliError::Core(fmeas_core::Error::Internal(_)) => EXIT_INTERNAL,
            CliError::Core(_)
            | CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Validation { .. }
            | CliError::UnknownEvent(_)
            | CliError::MissingTower => EXIT_VALIDATION,
        }
    }
}
