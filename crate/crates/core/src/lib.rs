//! Local convexity verification for piecewise-linear hypersurfaces.

pub mod complex;
pub mod fan;
pub mod geometry;
pub mod scalar;
pub mod verifier;
pub mod oracle;
pub mod generator;
pub mod bench;
