//! Exact rational linear algebra, quotient projections and sign predicates.

pub mod linalg;
pub mod lp;
pub mod predicates;
pub mod quotient;

pub use linalg::{affine_hull, AffineHull, VecN};
pub use predicates::{det3, float_sign, FloatSign, PredicateAudit, PredicateKind, SignContext};
pub use quotient::{ComplementStrategy, ProjectionMode, QuotientError, QuotientMap};
