use std::fmt;

use thiserror::Error;

/// A failing overlap test, named by the generator indices involved (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Overlap {
    /// `g_k (g_j g_i)` against `(g_k g_j) g_i`, `k > j > i`.
    Triple { k: usize, j: usize, i: usize },
    /// `(g_j^r) g_i` against `g_j^(r-1) (g_j g_i)`, `j > i`.
    PowerLeft { j: usize, i: usize },
    /// `g_j (g_i^r)` against `(g_j g_i) g_i^(r-1)`, `j > i`.
    PowerRight { j: usize, i: usize },
    /// `g_i g_i^r` against `g_i^r g_i`.
    PowerSelf { i: usize },
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Overlap::Triple { k, j, i } => write!(f, "g{k}*g{j}*g{i}"),
            Overlap::PowerLeft { j, i } => write!(f, "g{j}^r{j}*g{i}"),
            Overlap::PowerRight { j, i } => write!(f, "g{j}*g{i}^r{i}"),
            Overlap::PowerSelf { i } => write!(f, "g{i}^(r{i}+1)"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("line {line}: word is not in normal form: {message}")]
    NonNormalWord { line: usize, message: String },

    #[error("generator index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("inconsistent presentation; failing overlaps: {}", list_overlaps(.0))]
    Inconsistent(Vec<Overlap>),

    #[error("{what} has size {size}, which exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: u128,
        bound: u128,
    },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element set is not closed under multiplication")]
    NotClosed,

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("lattice is not contained in the ambient lattice")]
    NotSublattice,

    #[error("quotient has infinite order")]
    InfiniteIndex,

    #[error("hypotheses not satisfied: {0}")]
    Hypothesis(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("unknown catalog entry `{name}`{}", suggest(.suggestions))]
    UnknownCatalogEntry {
        name: String,
        suggestions: Vec<String>,
    },
}

fn list_overlaps(v: &[Overlap]) -> String {
    v.iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn suggest(v: &[String]) -> String {
    if v.is_empty() {
        String::new()
    } else {
        format!(" (did you mean: {}?)", v.join(", "))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
