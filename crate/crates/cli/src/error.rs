use std::io;
use std::path::Path;

/// CLI failure, grouped by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input data: exit 2.
    Usage(String),
    /// Numerical failure in the core: exit 3.
    Numerical(String),
    /// Filesystem failure: exit 4.
    Io(String),
}

impl CliError {
    pub fn io(path: &Path, err: io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numerical(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<netwalk::Error> for CliError {
    fn from(e: netwalk::Error) -> Self {
        use netwalk::Error as E;
        let msg = e.to_string();
        match e {
            E::NotSymmetric(_)
            | E::NotSquare { .. }
            | E::NoConvergence { .. }
            | E::InvalidSpectrum(_)
            | E::ProbabilityOutOfRange { .. }
            | E::Fit(_) => CliError::Numerical(msg),
            E::Io(_) | E::Json(_) => CliError::Io(msg),
            _ => CliError::Usage(msg),
        }
    }
}

impl CliError {
    pub fn with_context(self, what: &str) -> Self {
        match self {
            CliError::Usage(m) => CliError::Usage(format!("{what}: {m}")),
            CliError::Numerical(m) => CliError::Numerical(format!("{what}: {m}")),
            CliError::Io(m) => CliError::Io(format!("{what}: {m}")),
        }
    }
}
