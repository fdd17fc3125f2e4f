use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose paths: {0}")]
    Composition(String),
    #[error("invalid substitution: {0}")]
    Substitution(String),
    #[error("not a potential: {0}")]
    Potential(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("potential is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("potential is zero; homogeneity degree undefined")]
    ZeroPotential,
    #[error("mutation undefined at vertex `{0}`: vertex lies on a loop")]
    LoopAtVertex(String),
    #[error("reduction did not reach a fixpoint within {0} sweeps")]
    NonTermination(usize),
    #[error("reduction needs a field extension: {0}")]
    FieldExtension(String),
    #[error("arrow name collision: `{0}`")]
    NameCollision(String),
    #[error("grading does not define a cut: arrow `{arrow}` has degree {degree}")]
    NoCut { arrow: String, degree: i64 },
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    #[error("relation `{0}` is not a basic element of the radical square")]
    NonBasicRelation(String),
    #[error("vertex `{0}` is not a source")]
    NotSource(String),
    #[error("projective at vertex `{0}` is injective; no APR tilt")]
    NotApr(String),
    #[error("hypothesis violated: injective dimension of P_{vertex} is {id}, expected at most 2")]
    HypothesisViolation { vertex: String, id: String },
    #[error("step {index} ({step}) is illegal: vertex is {classification}")]
    IllegalStep {
        index: usize,
        step: String,
        classification: String,
    },
    #[error("global dimension is {0}, expected at most 2")]
    GlobalDimension(String),
    #[error("algebra is not finite dimensional within bound {0}")]
    NotFiniteDimensional(usize),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
