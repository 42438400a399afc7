//! Brute-force convexity deciders used to cross-check the verifier on small
//! instances. Quadratic or worse; not meant for production sizes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{FaceId, PlSurface, Rank};
use crate::geometry::linalg::{self, VecN};
use crate::geometry::lp::{lex_max, Constraint};
use crate::scalar::{int, Rational, Scalar, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub convex: bool,
    pub failing_facet: Option<FaceId>,
    pub strictly_outside_vertex: Option<FaceId>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("facet {0} is not planar")]
    NonPlanarFacet(usize),
    #[error("oracle needs vertex coordinates")]
    MissingCoordinates,
}

/// Hyperplane `normal . x = normal . origin` through a facet's vertices.
fn facet_hyperplane(points: &[VecN<Rational>]) -> Option<VecN<Rational>> {
    let n = points.first()?.len();
    let hull = linalg::affine_hull(points);
    if hull.dimension != n - 1 {
        return None;
    }
    linalg::null_space(&hull.basis, n).into_iter().next()
}

/// Convex iff every facet hyperplane has all vertices weakly on one side.
pub fn supporting_hyperplane_oracle(surface: &PlSurface) -> Result<OracleVerdict, OracleError> {
    let raw = surface.coords().ok_or(OracleError::MissingCoordinates)?;
    // One common positive scale makes every coordinate an integer.
    let mut flat: Vec<Rational> = raw.iter().flatten().cloned().collect();
    Rational::clear_denominators(&mut flat);
    let n = surface.ambient_dim();
    let coords: Vec<VecN<Rational>> = flat.chunks(n.max(1)).map(<[Rational]>::to_vec).collect();
    let p = &surface.poset;
    for f in 0..p.count(Rank::Facet) {
        let pts: Vec<VecN<Rational>> = p.vertices(Rank::Facet, f).iter().map(|&v| coords[v as usize].clone()).collect();
        let mut normal = facet_hyperplane(&pts).ok_or(OracleError::NonPlanarFacet(f))?;
        Rational::clear_denominators(&mut normal);
        let level = Rational::dot(&normal, &pts[0]);
        let signs: Vec<Sign> = coords.iter().map(|c| (Rational::dot(&normal, c) - &level).sign()).collect();
        let pos = signs.iter().filter(|s| **s == Sign::Positive).count();
        let neg = signs.iter().filter(|s| **s == Sign::Negative).count();
        if pos > 0 && neg > 0 {
            let minority = if pos < neg { Sign::Positive } else { Sign::Negative };
            let v = signs.iter().position(|s| *s == minority).expect("minority side is nonempty");
            return Ok(OracleVerdict {
                convex: false,
                failing_facet: Some(p.face_id(Rank::Facet, f)),
                strictly_outside_vertex: Some(p.face_id(Rank::Vertex, v)),
            });
        }
    }
    Ok(OracleVerdict { convex: true, failing_facet: None, strictly_outside_vertex: None })
}

/// Indices of points that are not convex combinations of the others:
/// point `i` is kept iff some functional is strictly maximal at it, decided
/// by an exact linear program per point.
pub fn extreme_point_oracle(points: &[VecN<Rational>], seed: u64) -> Vec<usize> {
    let Some(n) = points.first().map(Vec::len) else { return Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Variables (t, w): maximize t subject to w . (p_j - p_i) + t <= 0.
    let objectives: Vec<Vec<Rational>> = (0..=n).map(|i| (0..=n).map(|j| int((i == j) as i64)).collect()).collect();
    (0..points.len())
        .filter(|&i| {
            let constraints: Vec<Constraint> = points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| {
                    let mut coeffs = vec![int(1)];
                    coeffs.extend(linalg::sub(q, &points[i]));
                    Constraint::new(coeffs, int(0))
                })
                .collect();
            lex_max(&constraints, &objectives, &int(1), &mut rng).is_some_and(|x| x[0].sign() == Sign::Positive)
        })
        .collect()
}
