//! Face posets, their realizations, validation, star extraction and I/O.

pub mod io;
pub mod poset;
pub mod star;
pub mod surface;
pub mod validate;

pub use io::{emit_surface, parse_surface, sniff, Format, SurfaceIoError};
pub use poset::{FaceId, FacePoset, FaceSpec, PosetError, Rank};
pub use star::{extract_star, Star, StarError};
pub use surface::{FacetEquation, PlSurface, Realization};
pub use validate::{validate, validate_poset, validate_realization, ValidationReport, Violation};
