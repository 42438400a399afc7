//! Shared fixtures and brute-force references for the integration tests.
#![allow(dead_code)]

use num_traits::{Signed, Zero};
use plconvex::complex::{PlSurface, Rank};
use plconvex::fan::{Fan3, FanStatus, Ray};
use plconvex::scalar::{int, rat, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Q = Rational;

fn det(a: &Ray<Q>, b: &Ray<Q>, c: &Ray<Q>) -> Q {
    a[0].clone() * (b[1].clone() * &c[2] - b[2].clone() * &c[1]) - a[1].clone() * (b[0].clone() * &c[2] - b[2].clone() * &c[0])
        + a[2].clone() * (b[0].clone() * &c[1] - b[1].clone() * &c[0])
}

fn cross(a: &Ray<Q>, b: &Ray<Q>) -> Ray<Q> {
    [
        a[1].clone() * &b[2] - a[2].clone() * &b[1],
        a[2].clone() * &b[0] - a[0].clone() * &b[2],
        a[0].clone() * &b[1] - a[1].clone() * &b[0],
    ]
}

fn dot(a: &Ray<Q>, b: &Ray<Q>) -> Q {
    a[0].clone() * &b[0] + a[1].clone() * &b[1] + a[2].clone() * &b[2]
}

fn sgn(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Winding of the closed polyline `v_0 .. v_{k-1}` around `axis`, from
/// float angles measured in the plane orthogonal to `axis`.
fn float_winding(rays: &[Ray<Q>], axis: [f64; 3]) -> Option<i64> {
    use num_traits::ToPrimitive;
    let f = |r: &Ray<Q>| [r[0].to_f64().unwrap(), r[1].to_f64().unwrap(), r[2].to_f64().unwrap()];
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if norm < 1e-12 {
        return None;
    }
    let c = axis.map(|x| x / norm);
    // Orthonormal frame (e1, e2) of the plane orthogonal to c.
    let helper = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let d = helper[0] * c[0] + helper[1] * c[1] + helper[2] * c[2];
    let mut e1 = [helper[0] - d * c[0], helper[1] - d * c[1], helper[2] - d * c[2]];
    let n1 = (e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]).sqrt();
    e1 = e1.map(|x| x / n1);
    let e2 = [c[1] * e1[2] - c[2] * e1[1], c[2] * e1[0] - c[0] * e1[2], c[0] * e1[1] - c[1] * e1[0]];
    let angle = |r: &Ray<Q>| {
        let v = f(r);
        let x = v[0] * e1[0] + v[1] * e1[1] + v[2] * e1[2];
        let y = v[0] * e2[0] + v[1] * e2[1] + v[2] * e2[2];
        if x.hypot(y) < 1e-12 { None } else { Some(y.atan2(x)) }
    };
    let mut total = 0.0;
    let k = rays.len();
    for i in 0..k {
        let (a, b) = (angle(&rays[i])?, angle(&rays[(i + 1) % k])?);
        let mut t = b - a;
        while t > std::f64::consts::PI {
            t -= 2.0 * std::f64::consts::PI;
        }
        while t < -std::f64::consts::PI {
            t += 2.0 * std::f64::consts::PI;
        }
        total += t;
    }
    Some((total / (2.0 * std::f64::consts::PI)).round() as i64)
}

/// Quadratic reference decision for a fan: every consecutive pair spans a
/// plane supporting all rays, the planes are consistently oriented, straight
/// corners do not fold back, and the boundary winds exactly once.
pub fn fan_oracle(fan: &Fan3<Q>) -> FanStatus {
    let v = &fan.rays;
    let k = v.len();
    if k < 3 || v.iter().any(|r| r.iter().all(Zero::is_zero)) {
        return FanStatus::Invalid;
    }
    if (0..k).any(|i| cross(&v[i], &v[(i + 1) % k]).iter().all(Zero::is_zero)) {
        return FanStatus::Invalid;
    }
    let normal = cross(&v[0], &v[1]);
    if v.iter().all(|r| dot(&normal, r).is_zero()) {
        // Flat: consecutive turns share one orientation and cover the plane once.
        let turns: Vec<i32> = (0..k).map(|i| sgn(&dot(&cross(&v[i], &v[(i + 1) % k]), &normal))).collect();
        if turns.iter().any(|&t| t != turns[0]) {
            return FanStatus::NotConvex;
        }
        // Half-open arcs (v_i, v_{i+1}] containing the direction of v_0.
        let s = turns[0];
        let covers = (0..k)
            .filter(|&i| {
                let (a, b) = (&v[i], &v[(i + 1) % k]);
                let after_a = sgn(&dot(&cross(a, &v[0]), &normal)) * s;
                let before_b = sgn(&dot(&cross(&v[0], b), &normal)) * s;
                let same_dir_b = cross(b, &v[0]).iter().all(Zero::is_zero) && dot(b, &v[0]).is_positive();
                same_dir_b || (after_a > 0 && before_b > 0)
            })
            .count();
        return if covers == 1 { FanStatus::Convex } else { FanStatus::NotConvex };
    }
    let mut orientation = 0;
    for i in 0..k {
        let (a, b) = (&v[i], &v[(i + 1) % k]);
        let signs: Vec<i32> = v.iter().map(|r| sgn(&det(a, b, r))).collect();
        let pos = signs.contains(&1);
        let neg = signs.contains(&-1);
        if pos && neg {
            return FanStatus::NotConvex;
        }
        let s = if pos { 1 } else { -1 };
        if orientation != 0 && s != orientation {
            return FanStatus::NotConvex;
        }
        orientation = s;
    }
    for i in 0..k {
        let (a, b, c) = (&v[(i + k - 1) % k], &v[i], &v[(i + 1) % k]);
        if det(a, b, c).is_zero() && !dot(&cross(a, b), &cross(b, c)).is_positive() {
            return FanStatus::NotConvex;
        }
    }
    let mut axis = [0.0f64; 3];
    for r in v {
        use num_traits::ToPrimitive;
        let f = [r[0].to_f64().unwrap(), r[1].to_f64().unwrap(), r[2].to_f64().unwrap()];
        let n = (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt();
        for j in 0..3 {
            axis[j] += f[j] / n;
        }
    }
    match float_winding(v, axis) {
        Some(w) if w.abs() == 1 => FanStatus::Convex,
        _ => FanStatus::NotConvex,
    }
}

pub fn ray(x: i64, y: i64, z: i64) -> Ray<Q> {
    [int(x), int(y), int(z)]
}

fn random_unimodular<R: Rng>(rng: &mut R) -> [[i64; 3]; 3] {
    // Product of a few random shears and a permutation: determinant +-1.
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..3 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i != j {
            let c = rng.gen_range(-2..=2);
            for col in 0..3 {
                m[i][col] += c * m[j][col];
            }
        }
    }
    let mut rows = [0, 1, 2];
    rows.shuffle(rng);
    [m[rows[0]], m[rows[1]], m[rows[2]]]
}

fn apply(m: &[[i64; 3]; 3], r: &Ray<Q>) -> Ray<Q> {
    [0, 1, 2].map(|i| int(m[i][0]) * &r[0] + int(m[i][1]) * &r[1] + int(m[i][2]) * &r[2])
}

/// Positive rescaling of every ray by a random rational.
pub fn rescale<R: Rng>(fan: &Fan3<Q>, rng: &mut R) -> Fan3<Q> {
    Fan3::new(
        fan.rays
            .iter()
            .map(|r| {
                let s = rat(rng.gen_range(1..50), rng.gen_range(1..50));
                r.clone().map(|x| x * &s)
            })
            .collect(),
    )
}

fn convex_polygon<R: Rng>(k: usize, rng: &mut R) -> Vec<(i64, i64)> {
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<(i64, i64)> = angles.iter().map(|t| ((t.cos() * 1000.0).round() as i64, (t.sin() * 1000.0).round() as i64)).collect();
        let mut d = pts.clone();
        d.dedup();
        if d.len() == k && d[0] != d[k - 1] {
            return pts;
        }
    }
}

/// Families of random fans used by the differential tests.
#[derive(Clone, Copy, Debug)]
pub enum FanFamily {
    ConvexPointed,
    Arbitrary,
    Coplanar,
    FlatDihedral,
    OppositeRays,
    Perturbed,
}

pub const FAN_FAMILIES: [FanFamily; 6] = [
    FanFamily::ConvexPointed,
    FanFamily::Arbitrary,
    FanFamily::Coplanar,
    FanFamily::FlatDihedral,
    FanFamily::OppositeRays,
    FanFamily::Perturbed,
];

pub fn random_fan<R: Rng>(family: FanFamily, k: usize, rng: &mut R) -> Fan3<Q> {
    let k = k.max(3);
    let mut rays: Vec<Ray<Q>> = match family {
        FanFamily::ConvexPointed => convex_polygon(k, rng).into_iter().map(|(x, y)| ray(x, y, 1000)).collect(),
        FanFamily::Arbitrary => (0..k).map(|_| ray(rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(-4..=4))).collect(),
        FanFamily::Coplanar => {
            if rng.gen_bool(0.5) {
                convex_polygon(k, rng).into_iter().map(|(x, y)| ray(x, y, 0)).collect()
            } else {
                (0..k).map(|_| ray(rng.gen_range(-4..=4), rng.gen_range(-4..=4), 0)).collect()
            }
        }
        FanFamily::FlatDihedral => {
            let m = (k / 2).max(3);
            let poly = convex_polygon(m, rng);
            let mut out = Vec::new();
            for i in 0..m {
                let (a, b) = (poly[i], poly[(i + 1) % m]);
                out.push(ray(a.0, a.1, 1000));
                if out.len() < k {
                    out.push(ray(a.0 + b.0, a.1 + b.1, 2000));
                }
            }
            out
        }
        FanFamily::OppositeRays => {
            // Dihedral wedge around the z-axis, optionally broken.
            let a = rng.gen_range(1..=k.saturating_sub(2).max(1));
            let b = k.saturating_sub(2 + a).max(1);
            let mut out = vec![ray(0, 0, 1)];
            for i in 0..a {
                out.push(ray(1, 0, 10 - 20 * (i as i64 + 1) / (a as i64 + 1)));
            }
            out.push(ray(0, 0, -1));
            let (dx, dy) = (rng.gen_range(-3..=3), rng.gen_range(1..=3));
            for i in 0..b {
                out.push(ray(dx, dy, -10 + 20 * (i as i64 + 1) / (b as i64 + 1)));
            }
            if rng.gen_bool(0.3) {
                let j = rng.gen_range(0..out.len());
                out[j][0] += int(rng.gen_range(-2..=2));
            }
            out
        }
        FanFamily::Perturbed => {
            let mut out: Vec<Ray<Q>> = convex_polygon(k, rng).into_iter().map(|(x, y)| ray(x, y, 1000)).collect();
            let j = rng.gen_range(0..k);
            out[j][2] += int(rng.gen_range(-1500..=1500));
            out
        }
    };
    if rng.gen_bool(0.5) {
        rays.reverse();
    }
    let rot = rng.gen_range(0..rays.len());
    rays.rotate_left(rot);
    let m = random_unimodular(rng);
    let fan = Fan3::new(rays.iter().map(|r| apply(&m, r)).collect());
    rescale(&fan, rng)
}

/// Whether the star of vertex `w` in a 3-dimensional surface touches `v`.
pub fn star_contains_vertex(surface: &PlSurface, w: usize, v: usize) -> bool {
    let p = &surface.poset;
    w == v || p.containing(Rank::Sub, w).iter().any(|&e| p.vertices(Rank::Ridge, e as usize).contains(&(v as u32)))
}
