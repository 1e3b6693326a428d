use thiserror::Error;

use crate::model::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator id {0} is not part of this generator set")]
    UnknownGeneratorId(u32),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("generator `{0}` must have degree at least 1")]
    ZeroDegree(String),

    #[error("polynomial refers to generator id {id} with degree {found}, expected degree {expected}")]
    ForeignPolynomial { id: u32, expected: u32, found: u32 },

    #[error("invalid model:\n{0}")]
    InvalidModel(ValidationReport),

    #[error("derivation degree must be at least 1, got {0}")]
    DerivationDegree(i64),

    #[error("matrix of D requested in degree {degree}, valid range is 1..={max}")]
    MatrixDegree { degree: u32, max: u32 },

    #[error("KS-extension: {0}")]
    KsExtension(String),

    #[error("weight system does not assign generator `{0}`")]
    MissingWeight(String),

    #[error("generator `{name}` has degree {degree}; only degrees 2, 3 and 4 are allowed here")]
    DegreeOutsideRange { name: String, degree: u32 },

    #[error("top-degree law disagrees with computed homology: expected rank {expected} in degree {degree}, found {found}")]
    TopDegreeMismatch {
        degree: u32,
        expected: usize,
        found: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
