use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("Fibonacci polynomials are indexed from 1")]
    FibonacciIndexZero,
    #[error("grid side length must be at least 1")]
    EmptyGrid,
    #[error("cell {index} is outside a {n}x{n} grid")]
    CellOutOfRange { index: usize, n: usize },
    #[error("size mismatch: expected a {expected}x{expected} grid, found {found}x{found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("configuration is not solvable")]
    Unsolvable,
    #[error("nullity {nullity} exceeds the enumeration cap {cap}; use min_clicks_with_cap with a larger cap")]
    NullityCapExceeded { nullity: usize, cap: usize },
    #[error("pattern is not an even parity cover")]
    NotEvenCover,
    #[error("the {n}x{n} grid has nullity {nullity}, but exactly 2 is required")]
    NullityNotTwo { n: usize, nullity: usize },
    #[error("{n} is not of the form 6k-1")]
    NotSixKMinusOne { n: usize },
    #[error("{bits} coset bits exceed the brute-force budget of {budget}")]
    BudgetExceeded { bits: usize, budget: usize },
    #[error("invalid range [{min}, {max}]")]
    InvalidRange { min: usize, max: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
