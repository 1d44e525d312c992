//! Library side of the experiment runner; the `zerosum` binary is a thin
//! clap wrapper over these modules.

pub mod config;
pub mod csvfmt;
pub mod registry;
pub mod runner;

/// A CLI-level failure carrying its exit code (2 = configuration,
/// 3 = convergence).
#[derive(Debug)]
pub struct AppError {
    message: String,
    code: u8,
}

impl AppError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 2,
        }
    }

    pub fn convergence(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            code: 3,
        }
    }

    pub fn message(&self) -> &str {
        &self.message
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}
