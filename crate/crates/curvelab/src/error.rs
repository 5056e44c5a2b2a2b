//! Error taxonomy shared by every module.
//!
//! Each variant carries a stable SCREAMING_SNAKE code used in CLI
//! diagnostics, plus enough context to name the offending input. The CLI
//! maps codes to exit classes: input errors exit 2, honest uncertainty
//! exits 3, numeric degeneracy exits 4.

use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The word reduced to the empty word: the curve is non-essential.
    #[error("EMPTY_AFTER_REDUCTION: word `{word}` is trivial after reduction")]
    EmptyAfterReduction { word: String },

    /// A simple curve was required but the word has positive self-intersection.
    #[error("NOT_SIMPLE: word `{word}` has self-intersection {count}")]
    NotSimple { word: String, count: usize },

    /// The operation is not defined on this surface.
    #[error("WRONG_SURFACE: {op} is not available on ({genus},{cusps})")]
    WrongSurface {
        op: &'static str,
        genus: u32,
        cusps: u32,
    },

    /// An enumeration pool or search exceeded its configured cap.
    #[error("BUDGET_EXCEEDED: {what} exceeded cap {cap}")]
    BudgetExceeded { what: &'static str, cap: usize },

    /// Floating-point range exhausted (cuff length ceiling, pinch floor).
    #[error("NUMERIC_DEGENERACY: {what}")]
    NumericDegeneracy { what: String },

    /// The matrix image of a word is not hyperbolic: non-essential or
    /// boundary-parallel class.
    #[error("NOT_HYPERBOLIC: word `{word}` has |trace| = {abs_trace:.6} ≤ 2")]
    NotHyperbolic { word: String, abs_trace: f64 },

    /// The word is conjugate to a boundary power of the pair of pants.
    #[error("BOUNDARY_CLASS: word `{word}` is boundary-parallel (|trace| matches cuff)")]
    BoundaryClass { word: String },

    /// Intersection counts failed to stabilize at the configured radius.
    #[error("UNCERTIFIED: counts at radius {radius}-1 and {radius} differ ({prev} vs {last})")]
    Uncertified {
        radius: usize,
        prev: usize,
        last: usize,
    },

    /// Axis endpoints too close to decide linking.
    #[error("TANGENT_AXES: endpoint separation {separation:.3e} below tolerance")]
    TangentAxes { separation: f64 },

    /// An orbit-search state retained an uncertifiable intersection count.
    #[error("UNCERTIFIED_STATE: state `{state}` kept with pessimistic bound {bound}")]
    UncertifiedState { state: String, bound: usize },

    /// A search ran out of word budget before completing its goal.
    #[error("SEARCH_EXHAUSTED: {what} incomplete at word budget {budget}")]
    SearchExhausted { what: &'static str, budget: usize },

    /// Rejection sampling accepted fewer than 1% of draws.
    #[error("REJECTION_STALLED: {accepted}/{draws} draws accepted")]
    RejectionStalled { accepted: usize, draws: usize },

    /// Malformed textual input (curve strings, FN records, flags).
    #[error("PARSE: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyAfterReduction { .. } => "EMPTY_AFTER_REDUCTION",
            Error::NotSimple { .. } => "NOT_SIMPLE",
            Error::WrongSurface { .. } => "WRONG_SURFACE",
            Error::BudgetExceeded { .. } => "BUDGET_EXCEEDED",
            Error::NumericDegeneracy { .. } => "NUMERIC_DEGENERACY",
            Error::NotHyperbolic { .. } => "NOT_HYPERBOLIC",
            Error::BoundaryClass { .. } => "BOUNDARY_CLASS",
            Error::Uncertified { .. } => "UNCERTIFIED",
            Error::TangentAxes { .. } => "TANGENT_AXES",
            Error::UncertifiedState { .. } => "UNCERTIFIED_STATE",
            Error::SearchExhausted { .. } => "SEARCH_EXHAUSTED",
            Error::RejectionStalled { .. } => "REJECTION_STALLED",
            Error::Parse(_) => "PARSE",
        }
    }

    /// CLI exit class: 2 = input error, 3 = honest uncertainty,
    /// 4 = numeric degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::EmptyAfterReduction { .. }
            | Error::NotSimple { .. }
            | Error::WrongSurface { .. }
            | Error::BudgetExceeded { .. }
            | Error::NotHyperbolic { .. }
            | Error::BoundaryClass { .. }
            | Error::RejectionStalled { .. }
            | Error::Parse(_) => 2,
            Error::Uncertified { .. }
            | Error::UncertifiedState { .. }
            | Error::SearchExhausted { .. } => 3,
            Error::NumericDegeneracy { .. } | Error::TangentAxes { .. } => 4,
        }
    }
}
