//! Push one vertex of a 3-polytope boundary towards the interior.

use crate::complex::{PlSurface, Rank};
use crate::geometry::linalg::{self, VecN};
use crate::scalar::{int, Rational, Scalar, Sign};

fn plane_normal(a: &[Rational], b: &[Rational], c: &[Rational]) -> VecN<Rational> {
    let u = linalg::sub(b, a);
    let v = linalg::sub(c, a);
    vec![
        u[1].clone() * &v[2] - u[2].clone() * &v[1],
        u[2].clone() * &v[0] - u[0].clone() * &v[2],
        u[0].clone() * &v[1] - u[1].clone() * &v[0],
    ]
}

/// Moves vertex `v` to `centroid * depth + v * (1 - depth)` and fan-triangulates
/// every facet containing it from `v`. Returns `None` when the result would
/// still be convex (no new triangle separates two vertices).
pub fn dent_vertex(surface: &PlSurface, v: u32, depth: &Rational) -> Option<PlSurface> {
    let coords = surface.coords()?;
    if surface.ambient_dim() != 3 {
        return None;
    }
    let p = &surface.poset;
    let count = int(coords.len() as i64);
    let mut centroid = vec![int(0); 3];
    for c in coords {
        centroid = linalg::add(&centroid, c);
    }
    let centroid: VecN<Rational> = centroid.into_iter().map(|x| x / &count).collect();
    let keep = int(1) - depth;
    let moved: VecN<Rational> =
        (0..3).map(|i| centroid[i].clone() * depth + coords[v as usize][i].clone() * &keep).collect();
    let mut new_coords = coords.to_vec();
    new_coords[v as usize] = moved;

    let mut polygons = Vec::with_capacity(p.count(Rank::Facet) + 8);
    let mut fresh: Vec<[u32; 3]> = Vec::new();
    for f in 0..p.count(Rank::Facet) {
        let poly = surface.polygon(f);
        let Some(at) = poly.iter().position(|&x| x == v) else {
            polygons.push(poly);
            continue;
        };
        let k = poly.len();
        for i in 1..k - 1 {
            let tri = [v, poly[(at + i) % k], poly[(at + i + 1) % k]];
            fresh.push(tri);
            polygons.push(tri.to_vec());
        }
    }

    let separates = fresh.iter().any(|t| {
        let normal = plane_normal(&new_coords[t[0] as usize], &new_coords[t[1] as usize], &new_coords[t[2] as usize]);
        let level = linalg::dot(&normal, &new_coords[t[0] as usize]);
        let signs: Vec<Sign> = new_coords.iter().map(|c| (linalg::dot(&normal, c) - level.clone()).sign()).collect();
        signs.contains(&Sign::Positive) && signs.contains(&Sign::Negative)
    });
    if !separates {
        return None;
    }
    PlSurface::from_polygons(new_coords, &polygons).ok()
}
