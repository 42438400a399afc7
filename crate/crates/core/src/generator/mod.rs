//! Exact-rational test instances: random convex hulls, canonical polytopes,
//! dented variants and multiply wound fans.

pub mod dent;
pub mod hull;
pub mod polytopes;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::complex::{PlSurface, Rank};
use crate::fan::Fan3;
use crate::geometry::linalg::{self, VecN};
use crate::scalar::{int, rat, Rational, Scalar};

pub use dent::dent_vertex;
pub use hull::{convex_hull, HullError, IPoint};

/// Denominator of sampled coordinates in random hulls.
pub const GRID: i64 = 1 << 20;
const MAX_ATTEMPTS: usize = 32;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    RandomHull,
    Cube,
    Simplex,
    CrossPolytope,
    Hypercube,
    Dodecahedron,
    /// Genus-one quadrilateral surface (n = 3 only).
    Torus,
    Dented { base: Box<GenSpec>, depth: Rational },
    WoundFan(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub ambient_dim: usize,
    pub family: Family,
    pub num_points: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(ambient_dim: usize, family: Family, num_points: usize, seed: u64) -> Self {
        GenSpec { ambient_dim, family, num_points, seed }
    }

    pub fn random_hull(ambient_dim: usize, num_points: usize, seed: u64) -> Self {
        Self::new(ambient_dim, Family::RandomHull, num_points, seed)
    }

    pub fn dented(base: GenSpec, depth: Rational) -> Self {
        let (n, m, seed) = (base.ambient_dim, base.num_points, base.seed);
        Self::new(n, Family::Dented { base: Box::new(base), depth }, m, seed)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("sample stayed degenerate after {0} attempts")]
    Degenerate(usize),
    #[error("no vertex of the base surface admits a non-convex dent")]
    NotDentable,
}

#[derive(Clone, Debug)]
pub enum Generated {
    Surface { surface: PlSurface, dented_vertex: Option<u32> },
    Fan(Fan3<Rational>),
}

impl Generated {
    pub fn surface(&self) -> Option<&PlSurface> {
        match self {
            Generated::Surface { surface, .. } => Some(surface),
            Generated::Fan(_) => None,
        }
    }

    pub fn into_surface(self) -> Option<PlSurface> {
        match self {
            Generated::Surface { surface, .. } => Some(surface),
            Generated::Fan(_) => None,
        }
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenError> {
    let n = spec.ambient_dim;
    if !matches!(spec.family, Family::WoundFan(_)) && !(n == 3 || n == 4) {
        return Err(GenError::InvalidSpec(format!("ambient dimension {n} is not 3 or 4")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let plain = |surface| Ok(Generated::Surface { surface, dented_vertex: None });
    match &spec.family {
        Family::RandomHull => {
            if spec.num_points < n + 1 {
                return Err(GenError::InvalidSpec(format!("random hull needs at least {} points", n + 1)));
            }
            if n == 3 {
                plain(random_hull3(spec.num_points, &mut rng)?)
            } else {
                let base = match rng.gen_range(0..3) {
                    0 => polytopes::hypercube(4),
                    1 => polytopes::simplex(4),
                    _ => polytopes::cross_polytope(4),
                };
                plain(random_linear_image(&base, &mut rng))
            }
        }
        Family::Cube | Family::Hypercube => plain(polytopes::hypercube(n)),
        Family::Simplex => plain(polytopes::simplex(n)),
        Family::CrossPolytope => plain(polytopes::cross_polytope(n)),
        Family::Dodecahedron if n == 3 => plain(polytopes::dodecahedron()),
        Family::Torus if n == 3 => plain(polytopes::picture_frame()),
        Family::Dodecahedron | Family::Torus => Err(GenError::InvalidSpec("family exists only in dimension 3".into())),
        Family::Dented { base, depth } => {
            if n != 3 {
                return Err(GenError::InvalidSpec("dents are generated in dimension 3 only".into()));
            }
            if depth.sign() != crate::scalar::Sign::Positive || *depth >= int(1) {
                return Err(GenError::InvalidSpec("dent depth must lie in (0, 1)".into()));
            }
            let base = generate(base)?.into_surface().ok_or_else(|| GenError::InvalidSpec("base is not a surface".into()))?;
            let count = base.poset.count(Rank::Vertex) as u32;
            let start = rng.gen_range(0..count);
            (0..count)
                .map(|i| (start + i) % count)
                .find_map(|v| dent_vertex(&base, v, depth).map(|s| (v, s)))
                .map(|(v, surface)| Generated::Surface { surface, dented_vertex: Some(v) })
                .ok_or(GenError::NotDentable)
        }
        Family::WoundFan(k) => {
            if *k < 3 {
                return Err(GenError::InvalidSpec("wound fan needs at least 3 rays".into()));
            }
            Ok(Generated::Fan(wound_fan(*k)))
        }
    }
}

/// Direction sampled uniformly on the unit sphere, by rejection from the cube.
fn random_direction<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0f64..1.0)];
        let r2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if r2 > 1e-4 && r2 <= 1.0 {
            let r = r2.sqrt();
            return [v[0] / r, v[1] / r, v[2] / r];
        }
    }
}

/// Simplicial boundary of the hull of `num_points` grid points near the unit
/// sphere. Points that end up interior after rounding are dropped.
pub fn random_hull3<R: Rng>(num_points: usize, rng: &mut R) -> Result<PlSurface, GenError> {
    for _ in 0..MAX_ATTEMPTS {
        let pts: Vec<IPoint> = (0..num_points)
            .map(|_| random_direction(rng).map(|x| (x * GRID as f64).round() as i64))
            .collect();
        let tris = match convex_hull(&pts, rng) {
            Ok(t) => t,
            Err(HullError::Degenerate) => continue,
            Err(HullError::TooFewPoints) => return Err(GenError::InvalidSpec("too few points".into())),
        };
        let mut remap = vec![u32::MAX; pts.len()];
        for t in &tris {
            for &v in t {
                remap[v as usize] = 0;
            }
        }
        let mut coords = Vec::new();
        for (i, slot) in remap.iter_mut().enumerate() {
            if *slot == 0 {
                *slot = coords.len() as u32;
                coords.push(pts[i].iter().map(|&x| rat(x, GRID)).collect::<VecN<Rational>>());
            }
        }
        let polys: Vec<Vec<u32>> = tris.iter().map(|t| t.iter().map(|&v| remap[v as usize]).collect()).collect();
        return Ok(PlSurface::from_polygons(coords, &polys).expect("hull indices are in range"));
    }
    Err(GenError::Degenerate(MAX_ATTEMPTS))
}

/// Random invertible matrix with small integer entries plus a translation.
pub fn random_affine_map<R: Rng>(n: usize, rng: &mut R) -> (Vec<VecN<Rational>>, VecN<Rational>) {
    loop {
        let a: Vec<VecN<Rational>> =
            (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect()).collect();
        if !linalg::determinant(&a).is_zero() {
            let b = (0..n).map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=3))).collect();
            return (a, b);
        }
    }
}

pub fn random_linear_image<R: Rng>(surface: &PlSurface, rng: &mut R) -> PlSurface {
    let (a, b) = random_affine_map(surface.ambient_dim(), rng);
    surface.mapped_affine(&a, &b)
}

/// Rays `(cos t, sin t, 1)` with `t = 4 pi i / k`: the polygon on `z = 1`
/// goes around twice. Odd `k` keeps the rays pairwise distinct.
pub fn wound_fan(k: usize) -> Fan3<Rational> {
    const SCALE: i64 = 1_000_000;
    let rays = (0..k)
        .map(|i| {
            let t = 4.0 * std::f64::consts::PI * i as f64 / k as f64;
            [rat((t.cos() * SCALE as f64).round() as i64, SCALE), rat((t.sin() * SCALE as f64).round() as i64, SCALE), int(1)]
        })
        .collect();
    Fan3::new(rays)
}
