//! Failure classification for the command line layer.
//!
//! Every failure is sorted into one of three classes, and the class
//! alone decides the process exit code and the `kind` tag of the error
//! JSON printed to stderr.

use std::fmt;

use crate::render::json_string;

/// Failure class; fixes the exit code and the error-JSON tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureKind {
    /// The request itself was invalid: bad parameters, a rejected
    /// curve file, a malformed input. Exit code 2.
    Validation,
    /// A computation was attempted and did not converge or left the
    /// representable range. Exit code 3.
    NonConvergence,
    /// The filesystem refused a read or write. Exit code 4.
    Io,
}

impl FailureKind {
    pub fn exit_code(self) -> u8 {
        match self {
            FailureKind::Validation => 2,
            FailureKind::NonConvergence => 3,
            FailureKind::Io => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            FailureKind::Validation => "validation",
            FailureKind::NonConvergence => "non-convergence",
            FailureKind::Io => "io",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    kind: FailureKind,
    message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError { kind: FailureKind::Validation, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError { kind: FailureKind::Io, message: message.into() }
    }

    pub fn kind(&self) -> FailureKind {
        self.kind
    }

    pub fn exit_code(&self) -> u8 {
        self.kind.exit_code()
    }

    pub fn message(&self) -> &str {
        &self.message
    }

    /// Machine-readable form, printed to stderr on failure.
    pub fn to_json(&self) -> String {
        format!(
            "{{\"error\": {{\"kind\": \"{}\", \"exit_code\": {}, \"message\": {}}}}}",
            self.kind.label(),
            self.kind.exit_code(),
            json_string(&self.message)
        )
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.label(), self.message)
    }
}

impl std::error::Error for CliError {}

impl From<tori::Error> for CliError {
    fn from(err: tori::Error) -> Self {
        let kind = if err.is_validation() {
            FailureKind::Validation
        } else {
            FailureKind::NonConvergence
        };
        CliError { kind, message: err.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError { kind: FailureKind::Io, message: err.to_string() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_failure_class() {
        assert_eq!(CliError::validation("x").exit_code(), 2);
        assert_eq!(CliError::io("x").exit_code(), 4);
        let computational: CliError =
            tori::Error::RootNoConvergence { residual: 1.0, tol: 0.1 }.into();
        assert_eq!(computational.exit_code(), 3);
        let bad_request: CliError = tori::Error::Domain("no".to_string()).into();
        assert_eq!(bad_request.exit_code(), 2);
    }

    #[test]
    fn error_json_is_well_formed_and_escaped() {
        let err = CliError::validation("a \"quoted\"\npath");
        let json = err.to_json();
        assert_eq!(
            json,
            "{\"error\": {\"kind\": \"validation\", \"exit_code\": 2, \
             \"message\": \"a \\\"quoted\\\"\\npath\"}}"
        );
    }
}
