pub mod algebra;
pub mod antitwist;
pub mod builtin;
pub mod divide;
pub mod homology;
pub mod linalg;
pub mod surface;
pub mod traintrack;
