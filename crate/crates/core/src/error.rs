use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("cycle detected: `{0}` and `{1}` are mutually comparable")]
    CycleDetected(String, String),
    #[error("syntax error at {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("missing operation `{0}` in algebra signature")]
    MissingOperation(String),
    #[error("not a lattice: pair ({0}, {1}) has no unique supremum or infimum")]
    NotALattice(String, String),
    #[error("induced order mismatch at ({0}, {1}): joins and meets disagree")]
    InducedOrderMismatch(String, String),
    #[error("lambda axioms fail: {0}")]
    NotALambdaLattice(String),
    #[error("algebra kinds or signatures do not match")]
    KindMismatch,
    #[error("scheme {scheme} does not apply to kind {kind}")]
    SchemeKindMismatch { scheme: String, kind: String },
    #[error("lattice is not orthomodular: {0}")]
    NotOrthomodular(String),
    #[error("not an orthomodular pseudoring: {0}")]
    NotAPseudoring(String),
    #[error("size {0} out of supported range {1}..={2}")]
    SizeOutOfRange(usize, usize, usize),
    #[error("pair ({0}, {1}) has an empty upper or lower cone")]
    NoBounds(String, String),
    #[error("unknown conjecture `{0}`")]
    UnknownConjecture(String),
    #[error("bound {bound} exceeds the guard {guard} for this kind")]
    BoundTooLarge { bound: usize, guard: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("algebra is not bounded")]
    UnboundedAlgebra,
    #[error("law uses `<=` but the algebra carries no order")]
    MissingOrder,
    #[error("too many variables: {0} (cap {1})")]
    TooManyVariables(usize, usize),
    #[error("validation failed for {axiom}: witness {witness}")]
    ValidationError { axiom: String, witness: String },
    #[error("parse error at line {line}: {msg}")]
    FileSyntaxError { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
