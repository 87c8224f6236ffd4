use minkowski_surfaces::Error;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] Error),

    #[error("kernel failure at (u, v) = ({u}, {v}): {source}")]
    Kernel { u: f64, v: f64, source: Error },

    #[error("solver stopped early: {0}")]
    Solver(String),

    #[error("{0} verification check(s) failed")]
    Verify(usize),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exit status of a library error.
fn core_code(e: &Error) -> u8 {
    match e {
        Error::SingularityReached { .. } | Error::StepUnderflow { .. } | Error::MaxSteps { .. } => 4,
        Error::DegenerateTangentPlane { .. }
        | Error::LightlikeNormalDirection
        | Error::NotSpacelike { .. }
        | Error::NoAnalyticDerivatives
        | Error::NotPrincipalParameters { .. }
        | Error::MinimalPoint { .. }
        | Error::LightlikeMeanCurvature { .. }
        | Error::SingularConfiguration { .. } => 3,
        _ => 2,
    }
}

impl CliError {
    /// 0 ok, 1 verification failure, 2 input or domain error, 3 kernel
    /// error, 4 solver failure.
    pub fn code(&self) -> u8 {
        match self {
            Self::Verify(_) => 1,
            Self::Input(_) | Self::Io(_) | Self::Csv(_) | Self::Json(_) => 2,
            Self::Core(e) => core_code(e),
            Self::Kernel { .. } => 3,
            Self::Solver(_) => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Core(Error::EmptyDomain("x".into())).code(), 2);
        assert_eq!(CliError::Core(Error::LightlikeNormalDirection).code(), 3);
        assert_eq!(CliError::Core(Error::MaxSteps { u: 0.0, steps: 1 }).code(), 4);
        assert_eq!(CliError::Kernel { u: 0.0, v: 0.0, source: Error::MinimalPoint { u: 0.0, v: 0.0 } }.code(), 3);
        assert_eq!(CliError::Verify(2).code(), 1);
    }
}
