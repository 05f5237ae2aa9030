use std::fmt::Debug;

use ar_iet::analysis::AnalysisError;
use ar_iet::gasket::GasketError;
use ar_iet::iet::IetError;
use ar_iet::induction::InductionError;
use ar_iet::rational::ParseRationalError;
use ar_iet::towers::TowerError;
use ar_iet::words::WordsError;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A library error: the input is well formed but the mathematics refuses it.
    #[error("{message}")]
    Domain { kind: String, message: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    schema: &'static str,
    exit_code: u8,
    kind: &'a str,
    message: String,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    fn kind(&self) -> &str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Domain { kind, .. } => kind,
            CliError::Io(_) => "Io",
            CliError::ChecksFailed(_) => "ChecksFailed",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorObject {
            schema: "ar-iet/error/1",
            exit_code: self.exit_code(),
            kind: self.kind(),
            message: self.to_string(),
        })
        .expect("error objects serialize")
    }
}

/// Name of the outermost enum variant in a `Debug` rendering.
fn variant<E: Debug>(e: &E) -> String {
    format!("{e:?}")
        .split(|c: char| !c.is_alphanumeric() && c != '_')
        .next()
        .unwrap_or_default()
        .to_string()
}

fn domain<E: Debug + std::fmt::Display>(e: E) -> CliError {
    CliError::Domain {
        kind: variant(&e),
        message: e.to_string(),
    }
}

impl From<GasketError> for CliError {
    fn from(e: GasketError) -> Self {
        domain(e)
    }
}

impl From<IetError> for CliError {
    fn from(e: IetError) -> Self {
        domain(e)
    }
}

impl From<WordsError> for CliError {
    fn from(e: WordsError) -> Self {
        domain(e)
    }
}

impl From<ParseRationalError> for CliError {
    fn from(e: ParseRationalError) -> Self {
        CliError::Domain {
            kind: "ParseRational".into(),
            message: e.to_string(),
        }
    }
}

impl From<InductionError> for CliError {
    fn from(e: InductionError) -> Self {
        match e {
            InductionError::Layout(inner) => inner.into(),
            other => domain(other),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Induction(inner) => inner.into(),
            other => domain(other),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Gasket(inner) => inner.into(),
            AnalysisError::Iet(inner) => inner.into(),
            AnalysisError::Induction(inner) => inner.into(),
            other => domain(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ar_iet::gasket::StepReason;

    #[test]
    fn kinds_name_the_innermost_variant() {
        let e: CliError = AnalysisError::Gasket(GasketError::NotInGasket(StepReason::NonPositive)).into();
        assert_eq!(e.kind(), "NotInGasket");
        assert_eq!(e.exit_code(), 1);
        let e: CliError = TowerError::Induction(InductionError::Layout(IetError::Inadmissible)).into();
        assert_eq!(e.kind(), "Inadmissible");
        let json: serde_json::Value = serde_json::from_str(&CliError::usage("x").to_json()).unwrap();
        assert_eq!(json["exit_code"], 2);
    }
}
