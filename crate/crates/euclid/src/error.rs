use thiserror::Error;

/// Every failure the pipeline can report. Variants raised inside a
/// pipeline run are wrapped in [`Error::Stage`] so the caller learns
/// which step gave up.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("permutations have different degrees")]
    DegreeMismatch,
    #[error("applying sigma_a, sigma_b, sigma_c in turn is not the identity")]
    RelationViolated,
    #[error("the triple does not generate a transitive group")]
    NotTransitive,
    #[error("orders {0:?} are not Euclidean")]
    NotEuclidean((u32, u32, u32)),
    #[error("orders {found:?} must be relabeled as {required:?}")]
    NeedsRelabel {
        found: (u32, u32, u32),
        required: (u32, u32, u32),
    },
    #[error("translation matrix has rank below 2")]
    RankDeficient,
    #[error("rotation index c*N/d is not an integer")]
    NonIntegral,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs E_square or E_hex")]
    WrongCurve,
    #[error("point lies on the lattice")]
    LatticePoint,
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("could not recognize an algebraic number")]
    RecognitionFailed,
    #[error("numeric matching is ambiguous")]
    AmbiguousMatch,
    #[error("polynomial is not a kernel polynomial: {0}")]
    NotAKernel(String),
    #[error("dual isogeny does not land on the base curve")]
    NoIsomorphism,
    #[error("curve shape contradicts the rotation index: {0}")]
    ShapeViolation(String),
    #[error("function is not invariant under the rotation")]
    NotInvariant,
    #[error("unsupported case")]
    UnsupportedCase,
    #[error("ramification profiles do not match: {0}")]
    ProfileMismatch(String),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at(self, stage: &'static str) -> Error {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage {
                stage,
                source: Box::new(e),
            },
        }
    }

    /// The innermost error, with stage wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
