use ifn_core::{Error as CoreError, NonIntegerWitness};
use thiserror::Error;

pub type AppResult<T> = std::result::Result<T, AppError>;

#[derive(Debug, Error)]
pub enum AppError {
    /// Malformed input: bad JSON, missing fields, bad numbers, unreadable files.
    #[error("{detail}")]
    Input { code: &'static str, detail: String },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("linear decomposition is not a nonnegative integer signature")]
    NonIntegral(Box<NonIntegerWitness>),
}

impl AppError {
    pub fn input(code: &'static str, detail: impl Into<String>) -> Self {
        AppError::Input {
            code,
            detail: detail.into(),
        }
    }

    /// Domain errors: the input was well formed but violates a mathematical
    /// precondition.
    pub fn is_domain(&self) -> bool {
        match self {
            AppError::Input { .. } => false,
            AppError::NonIntegral(_) => true,
            AppError::Core(e) => matches!(
                e,
                CoreError::NotPremagic { .. }
                    | CoreError::NotIrreducible
                    | CoreError::InfeasibleKappa { .. }
                    | CoreError::CycleBudgetExceeded { .. }
                    | CoreError::NotStochastic(_)
                    | CoreError::NegativeFlowResult { .. }
                    | CoreError::FlowOverflow
                    | CoreError::ZeroNodeFlow(_)
                    | CoreError::EmptyNetwork
            ),
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_domain() {
            2
        } else {
            1
        }
    }

    pub fn http_status(&self) -> u16 {
        if self.is_domain() {
            422
        } else {
            400
        }
    }

    /// Stable machine-readable name, used as the `error` field of service
    /// responses.
    pub fn code(&self) -> &'static str {
        match self {
            AppError::Input { code, .. } => code,
            AppError::NonIntegral(_) => "NonIntegralWitness",
            AppError::Core(e) => match e {
                CoreError::InvalidNodeLabel(_) => "InvalidNodeLabel",
                CoreError::EmptyCycle => "EmptyCycle",
                CoreError::DuplicateNodeInCycle(_) => "DuplicateNodeInCycle",
                CoreError::NegativeCoefficient { .. } => "NegativeCoefficient",
                CoreError::Syntax { .. } => "SyntaxError",
                CoreError::EmptySignature => "EmptySignature",
                CoreError::NegativeFlowResult { .. } => "NegativeFlowResult",
                CoreError::FlowOverflow => "FlowOverflow",
                CoreError::NotIrreducible => "NotIrreducible",
                CoreError::NotPremagic { .. } => "NotPremagic",
                CoreError::CycleBudgetExceeded { .. } => "CycleBudgetExceeded",
                CoreError::UnknownLink { .. } => "UnknownLink",
                CoreError::DimensionMismatch { .. } => "DimensionMismatch",
                CoreError::InfeasibleKappa { .. } => "InfeasibleKappa",
                CoreError::InvalidNodeCount => "InvalidNodeCount",
                CoreError::NotStochastic(_) => "NotStochastic",
                CoreError::ZeroNodeFlow(_) => "ZeroNodeFlow",
                CoreError::EmptyNetwork => "EmptyNetwork",
                CoreError::DuplicateNode(_) => "DuplicateNode",
            },
        }
    }
}
