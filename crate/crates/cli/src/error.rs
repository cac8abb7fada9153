// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! CLI error type with the documented exit-code mapping:
//! 1 validation, 2 numerical failure, 3 invariant violation.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invariant violation: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Numerical(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<cntring::Error> for CliError {
    fn from(err: cntring::Error) -> Self {
        use cntring::Error as E;
        match err {
            E::IntegrationFailure { .. } => CliError::Numerical(err.to_string()),
            E::InvariantViolation(_) => CliError::Invariant(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
