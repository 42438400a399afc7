//! Canonical polytopes and fixtures built from explicit vertex lists.

use crate::complex::PlSurface;
use crate::geometry::linalg::{self, VecN};
use crate::scalar::{int, Rational, Scalar, Sign};

/// Facets of the convex hull of a small point set in general dimension, by
/// brute force over `n`-subsets. Every point must be a vertex of the hull.
pub fn hull_facets(points: &[VecN<Rational>]) -> Vec<Vec<u32>> {
    let n = points[0].len();
    let mut facets: Vec<Vec<u32>> = Vec::new();
    let mut subset: Vec<usize> = (0..n).collect();
    loop {
        let pts: Vec<VecN<Rational>> = subset.iter().map(|&i| points[i].clone()).collect();
        let hull = linalg::affine_hull(&pts);
        if hull.dimension == n - 1 {
            let normal = linalg::null_space(&hull.basis, n).remove(0);
            let level = linalg::dot(&normal, &pts[0]);
            let signs: Vec<Sign> = points.iter().map(|p| (linalg::dot(&normal, p) - level.clone()).sign()).collect();
            if !(signs.contains(&Sign::Positive) && signs.contains(&Sign::Negative)) {
                let on: Vec<u32> = (0..points.len() as u32).filter(|&i| signs[i as usize] == Sign::Zero).collect();
                if !facets.contains(&on) {
                    facets.push(on);
                }
            }
        }
        // Next n-subset in lexicographic order.
        let m = points.len();
        let Some(i) = (0..n).rev().find(|&i| subset[i] != i + m - n) else { break };
        subset[i] += 1;
        for j in i + 1..n {
            subset[j] = subset[j - 1] + 1;
        }
    }
    facets
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

/// Faces of dimension `dim` obtained as pairwise intersections of `upper`.
fn faces_below(points: &[VecN<Rational>], upper: &[Vec<u32>], dim: usize) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for i in 0..upper.len() {
        for j in i + 1..upper.len() {
            let common = intersect(&upper[i], &upper[j]);
            if common.is_empty() || out.contains(&common) {
                continue;
            }
            let pts: Vec<VecN<Rational>> = common.iter().map(|&v| points[v as usize].clone()).collect();
            if linalg::affine_hull(&pts).dimension == dim {
                out.push(common);
            }
        }
    }
    out.sort();
    out
}

/// Boundary complex of a convex polytope given its vertices and facets.
pub fn from_facets(points: Vec<VecN<Rational>>, facets: &[Vec<u32>]) -> PlSurface {
    let n = points[0].len();
    let ridges = faces_below(&points, facets, n - 2);
    let subs = if n == 3 { Vec::new() } else { faces_below(&points, &ridges, n - 3) };
    PlSurface::from_vertex_sets(points, &subs, &ridges, facets).expect("facet lattice is consistent")
}

/// Boundary of the convex hull of the (vertex) points.
pub fn polytope(points: Vec<VecN<Rational>>) -> PlSurface {
    let facets = hull_facets(&points);
    from_facets(points, &facets)
}

fn ipt(c: &[i64]) -> VecN<Rational> {
    c.iter().map(|&x| int(x)).collect()
}

/// `[0,1]^n`.
pub fn hypercube(n: usize) -> PlSurface {
    let pts = (0..1i64 << n).map(|m| (0..n).map(|i| int((m >> i) & 1)).collect()).collect();
    polytope(pts)
}

/// `conv(0, e_1, ..., e_n)`.
pub fn simplex(n: usize) -> PlSurface {
    let mut pts = vec![vec![int(0); n]];
    for i in 0..n {
        let mut e = vec![int(0); n];
        e[i] = int(1);
        pts.push(e);
    }
    polytope(pts)
}

/// `conv(+-e_i)`.
pub fn cross_polytope(n: usize) -> PlSurface {
    let mut pts = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut e = vec![int(0); n];
            e[i] = int(s);
            pts.push(e);
        }
    }
    polytope(pts)
}

/// Pentagonal dodecahedron combinatorics: polar dual of an icosahedron with
/// rational golden-ratio approximation 1618/1000.
pub fn dodecahedron() -> PlSurface {
    let (a, b) = (1000, 1618);
    let mut ico = Vec::new();
    for s in [1, -1] {
        for t in [1, -1] {
            ico.push(ipt(&[0, s * a, t * b]));
            ico.push(ipt(&[s * a, t * b, 0]));
            ico.push(ipt(&[t * b, 0, s * a]));
        }
    }
    let tris = hull_facets(&ico);
    debug_assert_eq!(tris.len(), 20);
    // Dual vertex of triangle T: the normal u with u . x = 1 on T.
    let dual: Vec<VecN<Rational>> = tris
        .iter()
        .map(|t| {
            let rows: Vec<VecN<Rational>> = t.iter().map(|&v| ico[v as usize].clone()).collect();
            linalg::solve_particular(&rows, &[int(1), int(1), int(1)], 3).expect("origin is interior")
        })
        .collect();
    let pentagons: Vec<Vec<u32>> =
        (0..ico.len() as u32).map(|v| (0..tris.len() as u32).filter(|&t| tris[t as usize].contains(&v)).collect()).collect();
    from_facets(dual, &pentagons)
}

/// A square picture frame: a genus-one quadrilateral surface in R^3 with
/// 16 vertices and 16 planar quads. Never convex.
pub fn picture_frame() -> PlSurface {
    let outer = [[0, 0], [3, 0], [3, 3], [0, 3]];
    let inner = [[1, 1], [2, 1], [2, 2], [1, 2]];
    let mut coords = Vec::new();
    // index = ring * 8 + level * 4 + corner; ring 0 outer, 1 inner; level 0 bottom, 1 top
    for ring in [&outer, &inner] {
        for z in [0, 1] {
            for c in ring.iter() {
                coords.push(ipt(&[c[0], c[1], z]));
            }
        }
    }
    let id = |ring: u32, level: u32, corner: u32| ring * 8 + level * 4 + corner % 4;
    let mut quads = Vec::new();
    for i in 0..4 {
        let j = i + 1;
        quads.push(vec![id(0, 1, i), id(0, 1, j), id(1, 1, j), id(1, 1, i)]);
        quads.push(vec![id(0, 0, i), id(1, 0, i), id(1, 0, j), id(0, 0, j)]);
        quads.push(vec![id(0, 0, i), id(0, 0, j), id(0, 1, j), id(0, 1, i)]);
        quads.push(vec![id(1, 0, i), id(1, 1, i), id(1, 1, j), id(1, 0, j)]);
    }
    PlSurface::from_polygons(coords, &quads).expect("frame indices are in range")
}

/// Unit cube `[0,1]^3` as quads.
pub fn cube() -> PlSurface {
    hypercube(3)
}
