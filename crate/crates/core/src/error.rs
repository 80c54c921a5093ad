use thiserror::Error;

use crate::koszul::KoszulError;
use crate::linalg::LinalgError;
use crate::models::ModelError;
use crate::multilinear::MapError;

/// Any failure of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Map(#[from] MapError),

    #[error(transparent)]
    Koszul(#[from] KoszulError),

    #[error(transparent)]
    Model(#[from] ModelError),
}

impl Error {
    /// Whether the request itself was invalid (bad model, field or range),
    /// as opposed to a computation that failed a consistency check.
    pub fn is_precondition(&self) -> bool {
        let linalg = |e: &LinalgError| {
            matches!(
                e,
                LinalgError::NotPrime(_) | LinalgError::ModulusTooLarge(_) | LinalgError::BadProxyPrimes { .. }
            )
        };
        match self {
            Error::Linalg(e) | Error::Map(MapError::Linalg(e)) => linalg(e),
            Error::Map(MapError::InvalidRange(_)) | Error::Map(MapError::ZeroFunctional) => true,
            Error::Model(e) => {
                matches!(
                    e,
                    ModelError::CharTwoUnsupported
                        | ModelError::UnsupportedDegree { .. }
                        | ModelError::CharTooSmall { .. }
                        | ModelError::UnknownModel(_)
                        | ModelError::Cache(_)
                ) || matches!(e, ModelError::Linalg(l) if linalg(l))
            }
            Error::Koszul(KoszulError::Linalg(e)) => linalg(e),
            Error::Koszul(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preconditions_are_told_apart_from_failed_checks() {
        assert!(Error::from(ModelError::CharTwoUnsupported).is_precondition());
        assert!(Error::from(LinalgError::NotPrime(9)).is_precondition());
        assert!(!Error::from(LinalgError::ProxyDisagreement("x".into())).is_precondition());
        assert!(!Error::from(KoszulError::NumeratorMismatch("m".into())).is_precondition());
    }
}
