//! Integer polynomials, root location and positive words in SL(2, Z).

pub mod classify;
pub mod modp;
pub mod numeric;
pub mod poly;
pub mod sl2;
pub mod sturm;

use thiserror::Error;

pub use classify::{
    classify_roots, exclusion_verdict, Certainty, ExclusionVerdict, RootClassification,
};
pub use numeric::numeric_roots;
pub use poly::IntPolynomial;
pub use sl2::{xy_word, XYWord};
pub use sturm::{isolate_real_roots, largest_real_root, RootInterval};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("the zero polynomial has no roots to isolate")]
    ZeroPolynomial,
    #[error("polynomial has repeated roots")]
    NotSquareFree,
    #[error("no real root greater than one, so this is not the polynomial of a stretch factor")]
    NoRealRootGreaterThanOne,
    #[error("root iteration did not converge after {iterations} steps")]
    NonConvergence { iterations: usize },
    #[error("matrix is not in SL(2, Z)")]
    NotSL2,
    #[error("trace {trace} is at most 2: the map is periodic or reducible")]
    TraceTooSmall { trace: i64 },
    #[error("internal error: {0}")]
    Internal(String),
}
