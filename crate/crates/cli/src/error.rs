use thiserror::Error;

/// Command failures, each mapped to a fixed process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Mismatch(_) => 3,
            CliError::Inconsistent(_) => 4,
            CliError::NonConvergence(_) => 5,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_taxonomy() {
        let codes: Vec<i32> = [
            CliError::Verification(String::new()),
            CliError::Usage(String::new()),
            CliError::Mismatch(String::new()),
            CliError::Inconsistent(String::new()),
            CliError::NonConvergence(String::new()),
        ]
        .iter()
        .map(CliError::exit_code)
        .collect();
        assert_eq!(codes, [1, 2, 3, 4, 5]);
    }
}
