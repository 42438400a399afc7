use std::collections::HashMap;

use super::poset::{FacePoset, FaceSpec, PosetError, Rank};
use crate::geometry::linalg::{self, VecN};
use crate::scalar::Rational;

/// Facet hyperplane `normal . x = offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetEquation {
    pub normal: VecN<Rational>,
    pub offset: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization {
    VertexCoords(Vec<VecN<Rational>>),
    /// Facet hyperplanes, optionally with vertex positions for sign anchoring.
    FacetEquations { equations: Vec<FacetEquation>, coords: Option<Vec<VecN<Rational>>> },
}

/// A face poset together with its geometric realization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlSurface {
    pub poset: FacePoset,
    pub realization: Realization,
}

impl PlSurface {
    pub fn new(poset: FacePoset, realization: Realization) -> Self {
        PlSurface { poset, realization }
    }

    pub fn ambient_dim(&self) -> usize {
        self.poset.ambient_dim()
    }

    pub fn coords(&self) -> Option<&[VecN<Rational>]> {
        match &self.realization {
            Realization::VertexCoords(c) => Some(c),
            Realization::FacetEquations { coords, .. } => coords.as_deref(),
        }
    }

    pub fn equations(&self) -> Option<&[FacetEquation]> {
        match &self.realization {
            Realization::FacetEquations { equations, .. } => Some(equations),
            Realization::VertexCoords(_) => None,
        }
    }

    /// Polyhedral surface in R^3 from vertex positions and facet polygons
    /// (each a cyclic vertex list). Edges are derived from consecutive pairs.
    pub fn from_polygons(coords: Vec<VecN<Rational>>, polygons: &[Vec<u32>]) -> Result<Self, PosetError> {
        let mut edge_ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut ridges: Vec<FaceSpec> = Vec::new();
        let mut facets = Vec::with_capacity(polygons.len());
        for poly in polygons {
            let mut contains = Vec::with_capacity(poly.len());
            for i in 0..poly.len() {
                let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
                let key = (a.min(b), a.max(b));
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    ridges.push(FaceSpec { vertices: vec![key.0, key.1], contains: vec![key.0, key.1] });
                    (ridges.len() - 1) as u32
                });
                contains.push(id);
            }
            facets.push(FaceSpec { vertices: poly.clone(), contains });
        }
        let poset = FacePoset::new(3, coords.len(), Vec::new(), ridges, facets)?;
        Ok(PlSurface::new(poset, Realization::VertexCoords(coords)))
    }

    /// Surface from vertex sets of the (n-3)-, (n-2)- and (n-1)-faces;
    /// containment is derived by vertex-set inclusion.
    pub fn from_vertex_sets(
        coords: Vec<VecN<Rational>>,
        subs: &[Vec<u32>],
        ridges: &[Vec<u32>],
        facets: &[Vec<u32>],
    ) -> Result<Self, PosetError> {
        let n = coords.first().map_or(0, Vec::len);
        let nv = coords.len();
        let subs: Vec<Vec<u32>> = if n == 3 { (0..nv as u32).map(|v| vec![v]).collect() } else { subs.to_vec() };
        let ridge_specs = contained_in(&subs, ridges, nv);
        let facet_specs = contained_in(ridges, facets, nv);
        let sub_specs = if n == 3 {
            Vec::new()
        } else {
            subs.iter().map(|s| FaceSpec { vertices: s.clone(), contains: Vec::new() }).collect()
        };
        let poset = FacePoset::new(n, nv, sub_specs, ridge_specs, facet_specs)?;
        Ok(PlSurface::new(poset, Realization::VertexCoords(coords)))
    }

    /// Same surface with every face class permuted (`perm[old] = new`).
    pub fn reindexed(&self, vertex_perm: &[usize], sub_perm: &[usize], ridge_perm: &[usize], facet_perm: &[usize]) -> Self {
        let poset = self.poset.reindexed(vertex_perm, sub_perm, ridge_perm, facet_perm);
        let permute_coords = |c: &[VecN<Rational>]| {
            let mut out = vec![Vec::new(); c.len()];
            for (old, &new) in vertex_perm.iter().enumerate() {
                out[new] = c[old].clone();
            }
            out
        };
        let realization = match &self.realization {
            Realization::VertexCoords(c) => Realization::VertexCoords(permute_coords(c)),
            Realization::FacetEquations { equations, coords } => {
                let mut eqs = equations.clone();
                for (old, &new) in facet_perm.iter().enumerate() {
                    eqs[new] = equations[old].clone();
                }
                Realization::FacetEquations { equations: eqs, coords: coords.as_deref().map(permute_coords) }
            }
        };
        PlSurface::new(poset, realization)
    }

    /// Image under `x -> A x + b`. `A` must be invertible when facet
    /// equations are present.
    pub fn mapped_affine(&self, a: &[VecN<Rational>], b: &[Rational]) -> Self {
        let apply = |c: &[VecN<Rational>]| -> Vec<VecN<Rational>> {
            c.iter().map(|p| linalg::add(&a.iter().map(|row| linalg::dot(row, p)).collect::<Vec<_>>(), b)).collect()
        };
        let realization = match &self.realization {
            Realization::VertexCoords(c) => Realization::VertexCoords(apply(c)),
            Realization::FacetEquations { equations, coords } => {
                // normal . x = d  becomes  (A^-T normal) . y = d + (A^-T normal) . b
                let inv = linalg::invert(a).expect("affine map must be invertible");
                let n = a.len();
                let equations = equations
                    .iter()
                    .map(|e| {
                        let normal: VecN<Rational> =
                            (0..n).map(|j| (0..n).fold(Rational::from_integer(0.into()), |s, i| s + &inv[i][j] * &e.normal[i])).collect();
                        let offset = e.offset.clone() + linalg::dot(&normal, b);
                        FacetEquation { normal, offset }
                    })
                    .collect();
                Realization::FacetEquations { equations, coords: coords.as_deref().map(apply) }
            }
        };
        PlSurface::new(self.poset.clone(), realization)
    }

    /// Vertices of facet `f` in cyclic order (`n = 3`), walking its edges.
    pub fn polygon(&self, f: usize) -> Vec<u32> {
        let edges: Vec<&[u32]> =
            self.poset.contains(Rank::Facet, f).iter().map(|&e| self.poset.vertices(Rank::Ridge, e as usize)).collect();
        let stored = self.poset.vertices(Rank::Facet, f).to_vec();
        if edges.len() < 3 || edges.iter().any(|e| e.len() != 2) {
            return stored;
        }
        let mut order = vec![edges[0][0], edges[0][1]];
        let mut used = vec![false; edges.len()];
        used[0] = true;
        while order.len() < edges.len() {
            let last = *order.last().unwrap();
            let Some(i) = (0..edges.len()).find(|&i| !used[i] && edges[i].contains(&last)) else {
                return stored;
            };
            used[i] = true;
            order.push(if edges[i][0] == last { edges[i][1] } else { edges[i][0] });
        }
        order
    }
}

/// For each upper face, the lower faces whose vertex sets it contains.
fn contained_in(lower: &[Vec<u32>], upper: &[Vec<u32>], nv: usize) -> Vec<FaceSpec> {
    let mut by_vertex: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for (i, face) in lower.iter().enumerate() {
        if let Some(&v) = face.iter().min() {
            if (v as usize) < nv {
                by_vertex[v as usize].push(i as u32);
            }
        }
    }
    upper
        .iter()
        .map(|face| {
            let mut sorted = face.clone();
            sorted.sort_unstable();
            let mut contains: Vec<u32> = sorted
                .iter()
                .filter(|&&v| (v as usize) < nv)
                .flat_map(|&v| by_vertex[v as usize].iter().copied())
                .filter(|&l| lower[l as usize].iter().all(|v| sorted.binary_search(v).is_ok()))
                .collect();
            contains.sort_unstable();
            FaceSpec { vertices: face.clone(), contains }
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::scalar::int;

    pub(crate) fn cube() -> PlSurface {
        let coords = (0..8).map(|i| vec![int(i & 1), int((i >> 1) & 1), int((i >> 2) & 1)]).collect();
        let quads = vec![
            vec![0, 2, 3, 1],
            vec![4, 5, 7, 6],
            vec![0, 1, 5, 4],
            vec![2, 6, 7, 3],
            vec![0, 4, 6, 2],
            vec![1, 3, 7, 5],
        ];
        PlSurface::from_polygons(coords, &quads).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::cube;
    use super::*;

    #[test]
    fn cube_counts() {
        let s = cube();
        assert_eq!(s.poset.count(Rank::Vertex), 8);
        assert_eq!(s.poset.count(Rank::Ridge), 12);
        assert_eq!(s.poset.count(Rank::Facet), 6);
        let inc = s.poset.incidences();
        assert_eq!((inc.sub_ridge, inc.sub_facet, inc.ridge_facet), (24, 24, 24));
    }

    #[test]
    fn vertex_sets_match_polygons() {
        let s = cube();
        let ridges: Vec<Vec<u32>> = (0..12).map(|e| s.poset.vertices(Rank::Ridge, e).to_vec()).collect();
        let facets: Vec<Vec<u32>> = (0..6).map(|f| s.poset.vertices(Rank::Facet, f).to_vec()).collect();
        let t = PlSurface::from_vertex_sets(s.coords().unwrap().to_vec(), &[], &ridges, &facets).unwrap();
        for f in 0..6 {
            let mut a = s.poset.contains(Rank::Facet, f).to_vec();
            a.sort_unstable();
            assert_eq!(a, t.poset.contains(Rank::Facet, f));
        }
    }

    #[test]
    fn polygon_walk_recovers_cycle() {
        let s = cube();
        let p = s.polygon(0);
        assert_eq!(p.len(), 4);
        for i in 0..4 {
            let (a, b) = (p[i], p[(i + 1) % 4]);
            assert!((0..12).any(|e| {
                let v = s.poset.vertices(Rank::Ridge, e);
                v.contains(&a) && v.contains(&b)
            }));
        }
    }
}
