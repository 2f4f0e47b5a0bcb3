use thiserror::Error;

use crate::word::Generator;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid name `{name}`: {reason}")]
pub struct NameError {
    pub name: String,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no image given for generator #{}", .0.index())]
    MissingImage(Generator),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("SyntaxError at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("UnknownGenerator `{name}` at {line}:{column}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("DuplicateGenerator `{name}` at {line}:{column}")]
    DuplicateGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("DuplicateMarker `{name}` at {line}:{column}")]
    DuplicateMarker {
        name: String,
        line: usize,
        column: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("InvalidParameter: {0}")]
    InvalidParameter(String),
    #[error("UnknownGenerator `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Name(#[from] NameError),
}

/// Checked-integer overflow in exact arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("Overflow: integer coefficient exceeds the 64-bit range")]
pub struct Overflow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error(transparent)]
    Overflow(#[from] Overflow),
    #[error("ZeroPolynomial: breadth is undefined for 0")]
    ZeroPolynomial,
    #[error("cannot parse Laurent polynomial `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FoxError {
    #[error("MissingWeight for generator #{}", .0.index())]
    MissingWeight(Generator),
    #[error("NotInfiniteCyclicH1: abelianization is {0}")]
    NotInfiniteCyclicH1(String),
    #[error("DeficiencyTooLarge: {relators} relators but {generators} generators")]
    DeficiencyTooLarge { relators: usize, generators: usize },
    #[error(transparent)]
    Overflow(#[from] Overflow),
}

impl From<LaurentError> for FoxError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::Overflow(o) => FoxError::Overflow(o),
            other => unreachable!("unexpected Laurent error in Fox calculus: {other}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("DegreeMismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("TooLarge: group order would exceed the cap of {cap} elements")]
    TooLarge { cap: u64 },
    #[error("NotAMember: {0} is not an element of the group")]
    NotAMember(String),
    #[error("invalid permutation `{text}`: {reason}")]
    InvalidPermutation { text: String, reason: String },
    #[error("invalid group spec `{text}`: {reason}")]
    InvalidSpec { text: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error(
        "TooLarge: naive enumeration of {candidates} candidate maps exceeds the budget of {budget}"
    )]
    TooLarge { candidates: String, budget: u64 },
    #[error("BudgetExceeded: more than {budget} search nodes")]
    BudgetExceeded { budget: u64 },
    #[error("UnknownMarker `{0}`")]
    UnknownMarker(String),
    #[error("MissingImage for generator `{0}`")]
    MissingImage(String),
    #[error("InvalidConstraint: {0}")]
    InvalidConstraint(String),
    #[error("NotAHomomorphism: relator {0} does not evaluate to the identity")]
    NotAHomomorphism(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}
