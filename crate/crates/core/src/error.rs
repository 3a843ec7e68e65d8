use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Element and generator positions carried in messages are 1-based, matching
/// every external format.
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplication table is empty")]
    EmptyTable,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("table entry at ({row}, {col}) is {value}, outside [1, {order}]")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("semigroup order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NonAssociative { x: usize, y: usize, z: usize },
    #[error("expected {expected} element names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("element index {index} outside [1, {order}]")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("unknown builtin semigroup {0:?}")]
    UnknownBuiltin(String),
    #[error("bad builtin parameter: {0}")]
    BuiltinParam(String),
    #[error("tuple length {found} does not match {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("tuples must have at least one coordinate")]
    EmptyTuple,
    #[error("witness word is empty")]
    EmptyWord,
    #[error("word refers to generator {index} but only {count} exist")]
    WordIndexOutOfRange { index: usize, count: usize },
    #[error("closure exceeded the cap of {cap} states")]
    CapExceeded { cap: usize },
    #[error("semigroup is not a group: {0}")]
    NotAGroup(String),
    #[error("semigroup is not a Clifford semigroup: {0}")]
    NotClifford(String),
    #[error("set is not an ideal: {x}*{y} = {product} leaves it")]
    NotAnIdeal { x: usize, y: usize, product: usize },
    #[error("ideal must be nonempty")]
    EmptyIdeal,
    #[error("Rees quotient is not {d}-nilpotent")]
    NotNilpotent { d: usize },
    #[error("idempotent {e} fixes {a} but {a} does not generate a group")]
    NonGroupFixedElement { e: usize, a: usize },
    #[error("embedding construction failed: {0}")]
    Embedding(String),
    #[error("exponent witness has all exponents zero")]
    ZeroExponentWitness,
    #[error("exponent {value} exceeds the bound {bound}")]
    ExponentTooLarge { value: u64, bound: u64 },
    #[error("semigroup is not commutative")]
    NotCommutative,
    #[error("wrong semigroup: {0}")]
    WrongSemigroup(String),
    #[error("automata do not share an alphabet")]
    AlphabetMismatch,
    #[error("no automata given")]
    NoAutomata,
    #[error("malformed automaton: {0}")]
    BadAutomaton(String),
    #[error("exact cover hypothesis violated: {0}")]
    ExactCoverHypothesis(String),
    #[error("method {method} is not applicable: {reason}")]
    MethodNotApplicable { method: String, reason: String },
    #[error("cross-check failed: {method} answered {solver}, closure oracle answered {oracle}")]
    CrossCheckMismatch {
        method: String,
        solver: bool,
        oracle: bool,
    },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Whether the error comes from malformed or inapplicable input rather
    /// than a failure while solving.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::CapExceeded { .. } | Error::CrossCheckMismatch { .. } | Error::InvalidWitness(_)
        )
    }
}
