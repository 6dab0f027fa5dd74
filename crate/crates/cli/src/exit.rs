use qutrit_kak::Error;

pub const FAILURE: u8 = 1;
pub const IO: u8 = 2;
pub const INVALID: u8 = 3;
pub const NON_UNITARY: u8 = 4;

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

    pub fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        Self::new(IO, format!("{}: {e}", path.display()))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::NoFeasiblePointFound { .. } => FAILURE,
            // CSV errors only come from writing output files.
            Error::Io(_) | Error::Csv(_) => IO,
            Error::Json(j) if j.is_io() => IO,
            Error::NotUnitary { .. } | Error::NotHermitian { .. } => NON_UNITARY,
            _ => INVALID,
        };
        Self::new(code, e.to_string())
    }
}
