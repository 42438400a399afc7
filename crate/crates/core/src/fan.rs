//! Convexity of a cyclically ordered fan of rays in 3-space.
//!
//! A fan is the quotient image of the star of an (n-3)-face: rays are the
//! images of the incident (n-2)-faces, and each pair of consecutive rays
//! spans the 2-cone that is the image of the facet between them. The fan is
//! convex when the union of those 2-cones is the boundary of a convex cone.
//!
//! [`c_check`] reduces the pointed case to a planar polygon on a reference
//! plane `w . x = 1` and decides it in linear time: turns of one sign plus a
//! winding number of exactly one. Flat stars (all rays coplanar) and wedge
//! stars (the cone has a lineality line, so no reference plane exists) are
//! decided separately.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::lp::{self, Constraint};
use crate::geometry::predicates::{PredicateKind, SignContext};
use crate::scalar::{Rational, Scalar, Sign};

pub type Ray<S> = [S; 3];
pub type Point2<S> = [S; 2];

/// Cyclic sequence of rays; ray `i` and ray `i + 1` bound one 2-cone.
#[derive(Clone, Debug, PartialEq)]
pub struct Fan3<S> {
    pub rays: Vec<Ray<S>>,
}

impl<S: Scalar> Fan3<S> {
    pub fn new(rays: Vec<Ray<S>>) -> Self {
        Fan3 { rays }
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FanStatus {
    Convex,
    NotConvex,
    Invalid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FanReason {
    None,
    NoSupportingHalfspace,
    SignFlip,
    WindingExceedsOne,
    CoplanarFold,
    DegenerateRays,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanVerdict {
    pub status: FanStatus,
    pub reason: FanReason,
    pub witness_index: Option<usize>,
}

impl FanVerdict {
    pub const CONVEX: FanVerdict = FanVerdict { status: FanStatus::Convex, reason: FanReason::None, witness_index: None };

    pub fn not_convex(reason: FanReason, at: usize) -> Self {
        FanVerdict { status: FanStatus::NotConvex, reason, witness_index: Some(at) }
    }

    pub fn invalid(at: usize) -> Self {
        FanVerdict { status: FanStatus::Invalid, reason: FanReason::DegenerateRays, witness_index: Some(at) }
    }

    pub fn is_convex(&self) -> bool {
        self.status == FanStatus::Convex
    }
}

fn cross<S: Scalar>(a: &Ray<S>, b: &Ray<S>) -> Ray<S> {
    let minor = |i: usize, j: usize| S::dot(&[a[i].clone(), -a[j].clone()], &[b[j].clone(), b[i].clone()]);
    [minor(1, 2), minor(2, 0), minor(0, 1)]
}

/// Whether `a x b = 0`, each component decided through `ctx`.
fn parallel<S: Scalar>(a: &Ray<S>, b: &Ray<S>, ctx: &mut SignContext) -> bool {
    let comps = [(1, 2), (2, 0), (0, 1)];
    comps.iter().all(|&(i, j)| {
        ctx.cross2(PredicateKind::PlanarCross, &[a[i].clone(), a[j].clone()], &[b[i].clone(), b[j].clone()])
            == Sign::Zero
    })
}

/// Lexicographic direction sign: sign of x, or of y when x vanishes.
fn direction_sign<S: Scalar>(x: &[S], ctx: &mut SignContext) -> Sign {
    let sx = ctx.sign_of_sum(PredicateKind::EdgeDirection, std::slice::from_ref(&x[0]));
    if sx != Sign::Zero {
        sx
    } else {
        ctx.sign_of_sum(PredicateKind::EdgeDirection, std::slice::from_ref(&x[1]))
    }
}

fn sign_changes(signs: &[Sign]) -> usize {
    (0..signs.len()).filter(|&i| signs[i] != signs[(i + 1) % signs.len()]).count()
}

/// Exact C-check with its own predicate context.
pub fn c_check<S: Scalar>(fan: &Fan3<S>, seed: u64) -> FanVerdict {
    c_check_with(fan, &mut SignContext::exact(), seed)
}

/// Decides convexity of `fan`, issuing every sign through `ctx`.
pub fn c_check_with<S: Scalar>(fan: &Fan3<S>, ctx: &mut SignContext, seed: u64) -> FanVerdict {
    let k = fan.len();
    if k < 3 {
        return FanVerdict::invalid(0);
    }
    if let Some(i) = fan.rays.iter().position(|r| r.iter().all(Scalar::is_zero)) {
        return FanVerdict::invalid(i);
    }
    for i in 0..k {
        if parallel(&fan.rays[i], &fan.rays[(i + 1) % k], ctx) {
            return FanVerdict::invalid(i);
        }
    }
    let (a, b) = (&fan.rays[0], &fan.rays[1]);
    let coplanar = fan.rays[2..].iter().all(|r| ctx.det3(a, b, r) == Sign::Zero);
    if coplanar {
        return coplanar_check(fan, ctx);
    }
    match positive_functional_with(fan, ctx, seed) {
        Some(w) => projected_convex_winding1(fan, &w, ctx),
        None => wedge_check(fan, ctx),
    }
}

/// A functional positive on every ray, if one exists (exact signs).
pub fn positive_functional<S: Scalar>(fan: &Fan3<S>, seed: u64) -> Option<Ray<S>> {
    positive_functional_with(fan, &mut SignContext::exact(), seed)
}

/// Stage 1 tries `+-sum v_i x v_{i+1}`, which lies inside the dual cone of
/// every convex pointed fan; stage 2 solves `max t : w . v_i >= t, |w|_inf <= 1`
/// exactly.
pub fn positive_functional_with<S: Scalar>(fan: &Fan3<S>, ctx: &mut SignContext, seed: u64) -> Option<Ray<S>> {
    let k = fan.len();
    let mut w = [S::zero(), S::zero(), S::zero()];
    for i in 0..k {
        let c = cross(&fan.rays[i], &fan.rays[(i + 1) % k]);
        let ones = [S::one(), S::one()];
        w = [0, 1, 2].map(|j| S::dot(&[w[j].clone(), c[j].clone()], &ones));
    }
    // w . v is a sum of 3x3 determinants of rays.
    let mut along = Vec::with_capacity(k);
    for v in &fan.rays {
        along.push(ctx.dot3(PredicateKind::Orientation3, &w, v));
    }
    if along.iter().all(|s| *s == Sign::Positive) {
        return Some(w);
    }
    if along.iter().all(|s| *s == Sign::Negative) {
        return Some(w.map(|x| -x));
    }

    let exact: Option<Vec<[Rational; 3]>> = fan
        .rays
        .iter()
        .map(|v| Some([v[0].to_rational()?, v[1].to_rational()?, v[2].to_rational()?]))
        .collect();
    let exact = exact?;
    let one = Rational::from_i64(1);
    let constraints: Vec<Constraint> = exact
        .iter()
        .map(|v| Constraint::new(vec![one.clone(), -v[0].clone(), -v[1].clone(), -v[2].clone()], <Rational as Zero>::zero()))
        .collect();
    let objectives: Vec<Vec<Rational>> =
        (0..4).map(|i| (0..4).map(|j| Rational::from_i64((i == j) as i64)).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = lp::lex_max(&constraints, &objectives, &one, &mut rng)?;
    if ctx.sign_of_sum(PredicateKind::Feasibility, std::slice::from_ref(&x[0])) != Sign::Positive {
        return None;
    }
    let w = [S::from_rational(&x[1]), S::from_rational(&x[2]), S::from_rational(&x[3])];
    fan.rays.iter().all(|v| ctx.dot3(PredicateKind::Halfspace, &w, v) == Sign::Positive).then_some(w)
}

/// Coordinates kept when projecting the plane `w . x = 1` to 2D: the first
/// lexicographic pair whose complementary coordinate of `w` is nonzero.
fn plane_frame<S: Scalar>(w: &Ray<S>) -> (usize, usize) {
    [(0, 1, 2), (0, 2, 1), (1, 2, 0)]
        .into_iter()
        .find(|&(_, _, c)| !w[c].is_zero())
        .map(|(a, b, _)| (a, b))
        .expect("functional is nonzero")
}

/// Central projection of the rays onto `w . x = 1`, in 2D plane coordinates.
pub fn project_to_polygon<S: Scalar>(fan: &Fan3<S>, w: &Ray<S>) -> Vec<Point2<S>> {
    let (a, b) = plane_frame(w);
    fan.rays
        .iter()
        .map(|v| {
            let h = w[0].clone() * v[0].clone() + w[1].clone() * v[1].clone() + w[2].clone() * v[2].clone();
            [v[a].clone() / h.clone(), v[b].clone() / h]
        })
        .collect()
}

/// Lifts a plane point back to 3-space (inverse of [`project_to_polygon`]).
pub fn lift_from_plane<S: Scalar>(p: &Point2<S>, w: &Ray<S>) -> Ray<S> {
    let (a, b) = plane_frame(w);
    let c = 3 - a - b;
    let mut out = [S::zero(), S::zero(), S::zero()];
    out[a] = p[0].clone();
    out[b] = p[1].clone();
    out[c] = (S::one() - w[a].clone() * p[0].clone() - w[b].clone() * p[1].clone()) / w[c].clone();
    out
}

/// Weakly convex polygon with winding number exactly one.
pub fn polygon_convex_winding1<S: Scalar>(points: &[Point2<S>], ctx: &mut SignContext) -> FanVerdict {
    let k = points.len();
    if k < 3 {
        return FanVerdict::invalid(0);
    }
    let edges: Vec<Point2<S>> = (0..k)
        .map(|i| {
            let (p, q) = (&points[i], &points[(i + 1) % k]);
            [q[0].clone() - p[0].clone(), q[1].clone() - p[1].clone()]
        })
        .collect();
    let mut dirs = Vec::with_capacity(k);
    for (i, e) in edges.iter().enumerate() {
        let (p, q) = (&points[i], &points[(i + 1) % k]);
        let sx = ctx.difference(PredicateKind::EdgeDirection, &q[0], &p[0]);
        let s = if sx != Sign::Zero { sx } else { ctx.difference(PredicateKind::EdgeDirection, &q[1], &p[1]) };
        if s == Sign::Zero || e.iter().all(Scalar::is_zero) {
            return FanVerdict::invalid(i);
        }
        dirs.push(s);
    }
    // turns[i] is the turn at corner i + 1.
    let turns: Vec<Sign> =
        (0..k).map(|i| ctx.cross2(PredicateKind::PolygonTurn, &edges[i], &edges[(i + 1) % k])).collect();
    let positive = turns.iter().filter(|s| **s == Sign::Positive).count();
    let negative = turns.iter().filter(|s| **s == Sign::Negative).count();
    if positive + negative == 0 {
        return FanVerdict::invalid(0);
    }
    let reference = match positive.cmp(&negative) {
        std::cmp::Ordering::Greater => Sign::Positive,
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => *turns.iter().find(|s| **s != Sign::Zero).expect("some strict turn"),
    };
    for i in 0..k {
        let corner = (i + 1) % k;
        let folded = turns[i] == Sign::Zero && dirs[i] != dirs[corner];
        if folded || (turns[i] != Sign::Zero && turns[i] != reference) {
            return FanVerdict::not_convex(FanReason::SignFlip, corner);
        }
    }
    if sign_changes(&dirs) != 2 {
        return FanVerdict::not_convex(FanReason::WindingExceedsOne, 0);
    }
    FanVerdict::CONVEX
}

/// [`polygon_convex_winding1`] applied to the central projection of the rays
/// onto `w . x = 1`, evaluated on the rays themselves: with `h_i = w . v_i > 0`
/// an edge direction is `sign(v_{i+1} h_i - v_i h_{i+1})` and a turn is the
/// sign of `det(v_i, v_{i+1}, v_{i+2})` up to a fixed frame sign.
pub fn projected_convex_winding1<S: Scalar>(fan: &Fan3<S>, w: &Ray<S>, ctx: &mut SignContext) -> FanVerdict {
    let k = fan.len();
    let v = &fan.rays;
    let (a, b) = plane_frame(w);
    let c = 3 - a - b;
    let h: Vec<S> = v.iter().map(|r| S::dot(w, r)).collect();
    let mut dirs = Vec::with_capacity(k);
    for i in 0..k {
        let j = (i + 1) % k;
        let along = |axis: usize, ctx: &mut SignContext| {
            ctx.cross2(PredicateKind::EdgeDirection, &[v[j][axis].clone(), v[i][axis].clone()], &[h[j].clone(), h[i].clone()])
        };
        let sx = along(a, ctx);
        let s = if sx != Sign::Zero { sx } else { along(b, ctx) };
        if s == Sign::Zero {
            return FanVerdict::invalid(i);
        }
        dirs.push(s);
    }
    // Orientation of projected points = sign(w_c) * sign(a, b, c) * det of rays.
    let flip = (w[c].sign() == Sign::Negative) != ((a, b) == (0, 2));
    let turns: Vec<Sign> = (0..k)
        .map(|i| {
            let t = ctx.det3_as(PredicateKind::PolygonTurn, &v[i], &v[(i + 1) % k], &v[(i + 2) % k]);
            if flip { t.flip() } else { t }
        })
        .collect();
    let positive = turns.iter().filter(|s| **s == Sign::Positive).count();
    let negative = turns.iter().filter(|s| **s == Sign::Negative).count();
    if positive + negative == 0 {
        return FanVerdict::invalid(0);
    }
    let reference = match positive.cmp(&negative) {
        std::cmp::Ordering::Greater => Sign::Positive,
        std::cmp::Ordering::Less => Sign::Negative,
        std::cmp::Ordering::Equal => *turns.iter().find(|s| **s != Sign::Zero).expect("some strict turn"),
    };
    for i in 0..k {
        let corner = (i + 1) % k;
        let folded = turns[i] == Sign::Zero && dirs[i] != dirs[corner];
        if folded || (turns[i] != Sign::Zero && turns[i] != reference) {
            return FanVerdict::not_convex(FanReason::SignFlip, corner);
        }
    }
    if sign_changes(&dirs) != 2 {
        return FanVerdict::not_convex(FanReason::WindingExceedsOne, 0);
    }
    FanVerdict::CONVEX
}

/// Flat star: convex iff the 2-cones tile their common plane exactly once.
pub fn coplanar_check<S: Scalar>(fan: &Fan3<S>, ctx: &mut SignContext) -> FanVerdict {
    let k = fan.len();
    let normal = cross(&fan.rays[0], &fan.rays[1]);
    let drop = if S::EXACT {
        normal.iter().position(|x| !x.is_zero())
    } else {
        (0..3).filter(|&i| !normal[i].is_zero()).max_by(|&i, &j| normal[i].abs_f64().total_cmp(&normal[j].abs_f64()))
    };
    let Some(drop) = drop else {
        return FanVerdict::invalid(0);
    };
    let (a, b) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let planar: Vec<Point2<S>> = fan.rays.iter().map(|v| [v[a].clone(), v[b].clone()]).collect();
    let mut reference = Sign::Zero;
    for i in 0..k {
        let s = ctx.cross2(PredicateKind::PlanarCross, &planar[i], &planar[(i + 1) % k]);
        if s == Sign::Zero || (reference != Sign::Zero && s != reference) {
            return FanVerdict::not_convex(FanReason::CoplanarFold, i);
        }
        reference = s;
    }
    let dirs: Vec<Sign> = planar.iter().map(|u| direction_sign(u, ctx)).collect();
    if sign_changes(&dirs) != 2 {
        return FanVerdict::not_convex(FanReason::CoplanarFold, 0);
    }
    FanVerdict::CONVEX
}

/// Non-pointed, non-flat star: convex iff it is the boundary of a dihedral
/// wedge, i.e. two opposite rays split the cycle into two arcs, each sweeping
/// a half-plane monotonically. Quadratic in `k`, reached only when no
/// reference plane exists.
pub fn wedge_check<S: Scalar>(fan: &Fan3<S>, ctx: &mut SignContext) -> FanVerdict {
    let k = fan.len();
    let fail = FanVerdict::not_convex(FanReason::NoSupportingHalfspace, 0);
    let mut pair = None;
    'search: for i in 0..k {
        for j in i + 2..k {
            if parallel(&fan.rays[i], &fan.rays[j], ctx)
                && ctx.dot3(PredicateKind::Halfspace, &fan.rays[i], &fan.rays[j]) == Sign::Negative
            {
                pair = Some((i, j));
                break 'search;
            }
        }
    }
    let Some((i, j)) = pair else { return fail };
    let arcs = [(i, j), (j, i + k)];
    for (start, end) in arcs {
        let arc: Vec<&Ray<S>> = (start..=end).map(|t| &fan.rays[t % k]).collect();
        if arc.len() < 3 {
            return FanVerdict::invalid(start % k);
        }
        let line = arc[0];
        let normal = cross(line, arc[1]);
        for (t, r) in arc.iter().enumerate().skip(1).take(arc.len() - 2) {
            if ctx.det3(line, arc[1], r) != Sign::Zero || ctx.det3_as(PredicateKind::WedgeSweep, line, r, &normal) != Sign::Positive {
                return FanVerdict::not_convex(FanReason::NoSupportingHalfspace, (start + t) % k);
            }
        }
        for t in 0..arc.len() - 1 {
            if ctx.det3_as(PredicateKind::WedgeSweep, arc[t], arc[t + 1], &normal) != Sign::Positive {
                return FanVerdict::not_convex(FanReason::NoSupportingHalfspace, (start + t) % k);
            }
        }
    }
    FanVerdict::CONVEX
}

use num_traits::Zero;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn fan(rays: &[[i64; 3]]) -> Fan3<Rational> {
        Fan3::new(rays.iter().map(|r| [int(r[0]), int(r[1]), int(r[2])]).collect())
    }

    fn poly(points: &[[i64; 2]]) -> Vec<Point2<Rational>> {
        points.iter().map(|p| [int(p[0]), int(p[1])]).collect()
    }

    #[test]
    fn positive_functional_examples() {
        let f = fan(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let w = positive_functional(&f, 0).unwrap();
        assert!(w[0] == w[1] && w[1] == w[2] && w[0] > int(0));
        assert!(positive_functional(&fan(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0]]), 0).is_none());
    }

    #[test]
    fn feasibility_fallback_finds_narrow_cones() {
        // Unit-vector sum points the wrong way for this lopsided cone.
        let f = fan(&[[1000, 1, 1], [1000, 1, -1], [-1, 1, 0], [1000, -1, 0]]);
        let w = positive_functional(&f, 5);
        let w = w.expect("cone is pointed");
        for v in &f.rays {
            assert!(w[0].clone() * v[0].clone() + w[1].clone() * v[1].clone() + w[2].clone() * v[2].clone() > int(0));
        }
    }

    #[test]
    fn coplanar_examples() {
        let mut ctx = SignContext::exact();
        let full = fan(&[[1, 0, 0], [0, 1, 0], [-1, 0, 0], [0, -1, 0]]);
        assert_eq!(coplanar_check(&full, &mut ctx), FanVerdict::CONVEX);
        let misordered = fan(&[[1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        assert_eq!(coplanar_check(&misordered, &mut ctx).reason, FanReason::CoplanarFold);
        let half = fan(&[[1, 0, 0], [0, 1, 0], [-1, 0, 0]]);
        assert_eq!(coplanar_check(&half, &mut ctx).reason, FanReason::CoplanarFold);
        assert_eq!(c_check(&full, 0), FanVerdict::CONVEX);
    }

    #[test]
    fn projection_examples() {
        let f = fan(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let w = [int(1), int(1), int(1)];
        let p = project_to_polygon(&f, &w);
        assert_eq!(p, poly(&[[1, 0], [0, 1], [0, 0]]));
        for (pt, v) in p.iter().zip(&f.rays) {
            assert_eq!(&lift_from_plane(pt, &w), v);
        }
        let scaled = fan(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
        assert_eq!(project_to_polygon(&scaled, &w)[0], p[0]);
    }

    #[test]
    fn polygon_examples() {
        let mut ctx = SignContext::exact();
        assert_eq!(polygon_convex_winding1(&poly(&[[0, 0], [1, 0], [1, 1], [0, 1]]), &mut ctx), FanVerdict::CONVEX);
        let dented = polygon_convex_winding1(&poly(&[[0, 0], [4, 0], [1, 1], [0, 4]]), &mut ctx);
        assert_eq!(dented, FanVerdict::not_convex(FanReason::SignFlip, 2));
        let dented_first = polygon_convex_winding1(&poly(&[[1, 1], [0, 4], [0, 0], [4, 0]]), &mut ctx);
        assert_eq!(dented_first, FanVerdict::not_convex(FanReason::SignFlip, 0));
        let collinear = polygon_convex_winding1(&poly(&[[0, 0], [1, 0], [2, 0]]), &mut ctx);
        assert_eq!(collinear.status, FanStatus::Invalid);
        // Back-tracking along a line is a fold, not a flat turn.
        let folded = polygon_convex_winding1(&poly(&[[0, 0], [2, 0], [1, 0], [1, 1]]), &mut ctx);
        assert_eq!(folded.status, FanStatus::NotConvex);
    }

    #[test]
    fn saddle_is_not_convex() {
        let f = fan(&[[1, 0, 1], [0, 1, -1], [-1, 0, 1], [0, -1, -1]]);
        assert_eq!(c_check(&f, 0).status, FanStatus::NotConvex);
    }

    #[test]
    fn cube_corner_and_wedge() {
        assert_eq!(c_check(&fan(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 0), FanVerdict::CONVEX);
        // Vertex in the middle of a dihedral edge.
        let wedge = fan(&[[0, 0, 1], [1, 0, 0], [0, 0, -1], [0, 1, 0]]);
        assert_eq!(c_check(&wedge, 0), FanVerdict::CONVEX);
        let bad_wedge = fan(&[[0, 0, 1], [1, 0, 0], [0, 0, -1], [1, 1, 1], [0, 1, 0]]);
        assert_eq!(c_check(&bad_wedge, 0).status, FanStatus::NotConvex);
    }

    #[test]
    fn degenerate_rays_are_invalid() {
        assert_eq!(c_check(&fan(&[[1, 0, 0], [2, 0, 0], [0, 1, 0]]), 0).status, FanStatus::Invalid);
        assert_eq!(c_check(&fan(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0]]), 0).status, FanStatus::Invalid);
        assert_eq!(c_check(&fan(&[[0, 0, 0], [1, 0, 0], [0, 1, 0]]), 0).status, FanStatus::Invalid);
        assert_eq!(c_check(&fan(&[[1, 0, 0], [0, 1, 0]]), 0).status, FanStatus::Invalid);
    }

    #[test]
    fn flat_dihedral_split_stays_convex() {
        let base = fan(&[[1, 0, 1], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]);
        assert!(c_check(&base, 0).is_convex());
        let split = fan(&[[1, 0, 1], [1, 1, 2], [0, 1, 1], [-1, 0, 1], [0, -1, 1]]);
        assert!(c_check(&split, 0).is_convex());
    }

    #[test]
    fn float_rays_follow_exact_verdict() {
        let f: Fan3<f64> = Fan3::new(vec![[1.0, 0.0, 1.0], [0.0, 1.0, 1.0], [-1.0, 0.0, 1.0], [0.0, -1.0, 1.0]]);
        let mut ctx = SignContext::tolerant(1e-9);
        assert!(c_check_with(&f, &mut ctx, 0).is_convex());
        let saddle: Fan3<f64> = Fan3::new(vec![[1.0, 0.0, 1.0], [0.0, 1.0, -1.0], [-1.0, 0.0, 1.0], [0.0, -1.0, -1.0]]);
        assert_eq!(c_check_with(&saddle, &mut ctx, 0).status, FanStatus::NotConvex);
        assert!(!ctx.hit_uncertain());
    }
}
