use std::collections::VecDeque;

use serde::Serialize;

use super::poset::{FaceId, FacePoset, Rank};
use super::star::{extract_star, StarError};
use super::surface::{PlSurface, Realization};
use crate::geometry::linalg;
use crate::scalar::Rational;

/// First violated structural or geometric condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    EmptySurface,
    /// A ridge bounded by a number of facets other than two.
    RidgeFacetCount { ridge: usize, facets: usize },
    /// Link of a sub-face is not one cycle (pinch, branch or break).
    NotManifoldAtFace { face: usize },
    ShortLink { face: usize, length: usize },
    /// Facet not reachable from facet 0 across ridges.
    Disconnected { facet: usize },
    /// Coordinate list does not match the vertex count or ambient dimension.
    CoordinateShape { vertex: usize },
    /// Affine hull of a face's vertices has the wrong dimension.
    FaceDimension { face: FaceId, expected: usize, found: usize },
    ZeroNormal { facet: usize },
    /// A facet vertex off that facet's hyperplane.
    VertexOffFacet { facet: usize, vertex: usize },
}

impl Violation {
    pub fn face(&self, poset: &FacePoset) -> Option<FaceId> {
        let n = poset.ambient_dim();
        let id = |rank: Rank, index: usize| Some(FaceId { dim: rank.dimension(n), index });
        match *self {
            Violation::EmptySurface => None,
            Violation::RidgeFacetCount { ridge, .. } => id(Rank::Ridge, ridge),
            Violation::NotManifoldAtFace { face } | Violation::ShortLink { face, .. } => id(Rank::Sub, face),
            Violation::Disconnected { facet } | Violation::ZeroNormal { facet } | Violation::VertexOffFacet { facet, .. } => {
                id(Rank::Facet, facet)
            }
            Violation::CoordinateShape { vertex } => id(Rank::Vertex, vertex),
            Violation::FaceDimension { face, .. } => Some(face),
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            Violation::EmptySurface => "EmptySurface",
            Violation::RidgeFacetCount { .. } => "RidgeFacetCount",
            Violation::NotManifoldAtFace { .. } => "NotManifoldAtFace",
            Violation::ShortLink { .. } => "ShortLink",
            Violation::Disconnected { .. } => "Disconnected",
            Violation::CoordinateShape { .. } => "CoordinateShape",
            Violation::FaceDimension { .. } => "FaceDimension",
            Violation::ZeroNormal { .. } => "ZeroNormal",
            Violation::VertexOffFacet { .. } => "VertexOffFacet",
        }
    }
}

impl From<StarError> for Violation {
    fn from(e: StarError) -> Self {
        match e {
            StarError::NotManifoldAtFace { center } => Violation::NotManifoldAtFace { face: center },
            StarError::ShortLink { center, length } => Violation::ShortLink { face: center, length },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violation: Option<Violation>,
    /// Ridges whose two facets lie on the same hyperplane (facet-equation mode).
    pub flat_ridges: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }

    fn fail(v: Violation) -> Self {
        ValidationReport { violation: Some(v), flat_ridges: Vec::new() }
    }
}

/// Closed-manifold conditions: two facets per ridge, one link cycle of
/// length at least 3 per sub-face, connected facet graph.
pub fn validate_poset(poset: &FacePoset) -> ValidationReport {
    let nf = poset.count(Rank::Facet);
    if nf == 0 {
        return ValidationReport::fail(Violation::EmptySurface);
    }
    for r in 0..poset.count(Rank::Ridge) {
        let facets = poset.containing(Rank::Ridge, r);
        if facets.len() != 2 || facets[0] == facets[1] {
            return ValidationReport::fail(Violation::RidgeFacetCount { ridge: r, facets: facets.len() });
        }
    }
    for s in 0..poset.count(Rank::Sub) {
        if let Err(e) = extract_star(poset, s) {
            return ValidationReport::fail(e.into());
        }
    }
    let mut seen = vec![false; nf];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for &r in poset.contains(Rank::Facet, f) {
            for &g in poset.containing(Rank::Ridge, r as usize) {
                if !seen[g as usize] {
                    seen[g as usize] = true;
                    queue.push_back(g as usize);
                }
            }
        }
    }
    if let Some(facet) = seen.iter().position(|s| !s) {
        return ValidationReport::fail(Violation::Disconnected { facet });
    }
    ValidationReport::default()
}

/// Geometric conditions on the realization (assumes a valid poset).
pub fn validate_realization(surface: &PlSurface) -> ValidationReport {
    let poset = &surface.poset;
    let n = poset.ambient_dim();
    if let Some(coords) = surface.coords() {
        if coords.len() != poset.num_vertices() {
            return ValidationReport::fail(Violation::CoordinateShape { vertex: coords.len().min(poset.num_vertices()) });
        }
        if let Some(v) = coords.iter().position(|c| c.len() != n) {
            return ValidationReport::fail(Violation::CoordinateShape { vertex: v });
        }
    }
    match &surface.realization {
        Realization::VertexCoords(coords) => {
            let ranks: &[Rank] = if poset.subs_are_vertices() { &[Rank::Ridge, Rank::Facet] } else { &[Rank::Sub, Rank::Ridge, Rank::Facet] };
            for &rank in ranks {
                let expected = rank.dimension(n);
                for i in 0..poset.count(rank) {
                    let pts: Vec<Vec<Rational>> =
                        poset.vertices(rank, i).iter().map(|&v| coords[v as usize].clone()).collect();
                    let found = linalg::affine_hull(&pts).dimension;
                    if found != expected {
                        let face = poset.face_id(rank, i);
                        return ValidationReport::fail(Violation::FaceDimension { face, expected, found });
                    }
                }
            }
            ValidationReport::default()
        }
        Realization::FacetEquations { equations, coords } => {
            if equations.len() != poset.count(Rank::Facet) {
                return ValidationReport::fail(Violation::ZeroNormal { facet: equations.len().min(poset.count(Rank::Facet)) });
            }
            for (f, e) in equations.iter().enumerate() {
                if e.normal.len() != n || linalg::is_zero_vec(&e.normal) {
                    return ValidationReport::fail(Violation::ZeroNormal { facet: f });
                }
                if let Some(coords) = coords {
                    for &v in poset.vertices(Rank::Facet, f) {
                        if linalg::dot(&e.normal, &coords[v as usize]) != e.offset {
                            return ValidationReport::fail(Violation::VertexOffFacet { facet: f, vertex: v as usize });
                        }
                    }
                }
            }
            let flat_ridges = (0..poset.count(Rank::Ridge))
                .filter(|&r| {
                    let fs = poset.containing(Rank::Ridge, r);
                    fs.len() == 2 && same_hyperplane(&equations[fs[0] as usize], &equations[fs[1] as usize])
                })
                .collect();
            ValidationReport { violation: None, flat_ridges }
        }
    }
}

/// `(a, d)` and `(b, e)` describe one hyperplane iff they are proportional.
fn same_hyperplane(a: &super::surface::FacetEquation, b: &super::surface::FacetEquation) -> bool {
    let mut lhs = a.normal.clone();
    lhs.push(a.offset.clone());
    let mut rhs = b.normal.clone();
    rhs.push(b.offset.clone());
    linalg::rank(vec![lhs, rhs]) == 1
}

/// Both validations, poset first.
pub fn validate(surface: &PlSurface) -> ValidationReport {
    let report = validate_poset(&surface.poset);
    if !report.is_valid() {
        return report;
    }
    validate_realization(surface)
}
