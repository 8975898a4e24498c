use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid root system type {letter}{rank}")]
    InvalidType { letter: char, rank: usize },

    #[error("Weyl group of {name} has {order} elements, above the default limit of {limit}; pass the large-rank override to proceed")]
    WeylGuard {
        name: String,
        order: u128,
        limit: u128,
    },

    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    RankMismatch {
        weight: String,
        got: usize,
        expected: usize,
    },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("weight {0} is not in the positive root cone")]
    NotInPositiveCone(String),

    #[error("weight {0} is not in the root lattice")]
    NotInRootLattice(String),

    #[error("{0} is not a positive root")]
    NotARoot(String),

    #[error("{0} is not a minuscule weight")]
    NotMinuscule(String),

    #[error("root system {0} has a single root length")]
    SimplyLaced(String),

    #[error("simple root index {0} is out of range")]
    BadSimpleRoot(usize),

    #[error("simple root {0} is long; a short simple root is required")]
    LongSimpleRoot(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("polynomial {0} has a negative exponent")]
    NegativeExponent(String),

    #[error("cannot evaluate a negative power of q at q = 0")]
    NegativeExponentAtZero,

    #[error("value {0} is not an integer")]
    NonIntegralValue(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("inexact division of {dividend} by {divisor}")]
    InexactDivision { dividend: String, divisor: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
