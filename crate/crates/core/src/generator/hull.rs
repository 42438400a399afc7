//! Randomized incremental convex hull of integer points in R^3.
//!
//! Conflict lists give expected `O(n log n)` work. Orientation tests are exact
//! on `i128`; coordinates must stay below `2^40` in magnitude. Any coplanar
//! quadruple met during construction aborts with [`HullError::Degenerate`]
//! so callers can resample.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

pub type IPoint = [i64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullError {
    TooFewPoints,
    Degenerate,
}

fn orient(a: &IPoint, b: &IPoint, c: &IPoint, d: &IPoint) -> i128 {
    let u = [(b[0] - a[0]) as i128, (b[1] - a[1]) as i128, (b[2] - a[2]) as i128];
    let v = [(c[0] - a[0]) as i128, (c[1] - a[1]) as i128, (c[2] - a[2]) as i128];
    let w = [(d[0] - a[0]) as i128, (d[1] - a[1]) as i128, (d[2] - a[2]) as i128];
    u[0] * (v[1] * w[2] - v[2] * w[1]) - u[1] * (v[0] * w[2] - v[2] * w[0]) + u[2] * (v[0] * w[1] - v[1] * w[0])
}

struct Builder<'a> {
    pts: &'a [IPoint],
    faces: Vec<[u32; 3]>,
    alive: Vec<bool>,
    face_conf: Vec<Vec<u32>>,
    point_conf: Vec<Vec<u32>>,
    edges: HashMap<(u32, u32), u32>,
}

impl Builder<'_> {
    /// Positive when `p` sees face `f` (lies strictly outside it).
    fn side(&self, f: u32, p: u32) -> Result<i128, HullError> {
        let [a, b, c] = self.faces[f as usize];
        let o = orient(&self.pts[a as usize], &self.pts[b as usize], &self.pts[c as usize], &self.pts[p as usize]);
        if o == 0 {
            return Err(HullError::Degenerate);
        }
        Ok(o)
    }

    fn add_face(&mut self, tri: [u32; 3]) -> u32 {
        let id = self.faces.len() as u32;
        self.faces.push(tri);
        self.alive.push(true);
        self.face_conf.push(Vec::new());
        for i in 0..3 {
            self.edges.insert((tri[i], tri[(i + 1) % 3]), id);
        }
        id
    }
}

/// Triangles of the hull, outward oriented, in input point indices.
pub fn convex_hull<R: Rng>(pts: &[IPoint], rng: &mut R) -> Result<Vec<[u32; 3]>, HullError> {
    let n = pts.len();
    if n < 4 {
        return Err(HullError::TooFewPoints);
    }
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);
    // Initial tetrahedron from the first four points in general position.
    let p0 = order[0];
    let i1 = (1..n).find(|&i| pts[order[i] as usize] != pts[p0 as usize]).ok_or(HullError::Degenerate)?;
    order.swap(1, i1);
    let cross_nonzero = |a: &IPoint, b: &IPoint, c: &IPoint| {
        let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
        let v = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
        (u[1] as i128 * v[2] as i128 - u[2] as i128 * v[1] as i128) != 0
            || (u[2] as i128 * v[0] as i128 - u[0] as i128 * v[2] as i128) != 0
            || (u[0] as i128 * v[1] as i128 - u[1] as i128 * v[0] as i128) != 0
    };
    let i2 = (2..n)
        .find(|&i| cross_nonzero(&pts[order[0] as usize], &pts[order[1] as usize], &pts[order[i] as usize]))
        .ok_or(HullError::Degenerate)?;
    order.swap(2, i2);
    let i3 = (3..n)
        .find(|&i| {
            orient(&pts[order[0] as usize], &pts[order[1] as usize], &pts[order[2] as usize], &pts[order[i] as usize]) != 0
        })
        .ok_or(HullError::Degenerate)?;
    order.swap(3, i3);
    let (a, mut b, mut c, d) = (order[0], order[1], order[2], order[3]);
    if orient(&pts[a as usize], &pts[b as usize], &pts[c as usize], &pts[d as usize]) > 0 {
        std::mem::swap(&mut b, &mut c);
    }
    let mut h = Builder {
        pts,
        faces: Vec::with_capacity(2 * n),
        alive: Vec::with_capacity(2 * n),
        face_conf: Vec::with_capacity(2 * n),
        point_conf: vec![Vec::new(); n],
        edges: HashMap::with_capacity(6 * n),
    };
    // (a, b, c) now has d on its negative side; orient the others likewise.
    let initial = [h.add_face([a, b, c]), h.add_face([a, d, b]), h.add_face([b, d, c]), h.add_face([c, d, a])];
    for &p in &order[4..] {
        for &f in &initial {
            if h.side(f, p)? > 0 {
                h.face_conf[f as usize].push(p);
                h.point_conf[p as usize].push(f);
            }
        }
    }

    let mut stamp = vec![u32::MAX; n];
    let mut visible_mark: Vec<bool> = Vec::new();
    let mut tick = 0u32;
    for &p in &order[4..] {
        let visible: Vec<u32> = h.point_conf[p as usize].iter().copied().filter(|&f| h.alive[f as usize]).collect();
        if visible.is_empty() {
            continue;
        }
        visible_mark.resize(h.faces.len(), false);
        for &f in &visible {
            visible_mark[f as usize] = true;
        }
        let mut horizon: Vec<(u32, u32, u32, u32)> = Vec::new();
        for &f in &visible {
            let tri = h.faces[f as usize];
            for i in 0..3 {
                let (u, v) = (tri[i], tri[(i + 1) % 3]);
                let g = *h.edges.get(&(v, u)).expect("closed hull");
                if !visible_mark[g as usize] {
                    horizon.push((u, v, f, g));
                }
            }
        }
        for &f in &visible {
            h.alive[f as usize] = false;
            let tri = h.faces[f as usize];
            for i in 0..3 {
                let key = (tri[i], tri[(i + 1) % 3]);
                if h.edges.get(&key) == Some(&f) {
                    h.edges.remove(&key);
                }
            }
        }
        for (u, v, f, g) in horizon {
            let nf = h.add_face([u, v, p]);
            tick += 1;
            let tag = tick;
            let candidates: Vec<u32> =
                h.face_conf[f as usize].iter().chain(h.face_conf[g as usize].iter()).copied().collect();
            for q in candidates {
                if q == p || stamp[q as usize] == tag {
                    continue;
                }
                stamp[q as usize] = tag;
                if h.side(nf, q)? > 0 {
                    h.face_conf[nf as usize].push(q);
                    h.point_conf[q as usize].push(nf);
                }
            }
        }
        for &f in &visible {
            visible_mark[f as usize] = false;
            h.face_conf[f as usize] = Vec::new();
        }
        h.point_conf[p as usize] = Vec::new();
    }

    let faces: Vec<[u32; 3]> = h.faces.iter().zip(&h.alive).filter(|(_, &a)| a).map(|(t, _)| *t).collect();
    // Reject coplanar neighbours: every opposite vertex must be strictly inside.
    for tri in &faces {
        for i in 0..3 {
            let (u, v) = (tri[i], tri[(i + 1) % 3]);
            let g = h.edges[&(v, u)];
            let other = h.faces[g as usize].iter().copied().find(|&x| x != u && x != v).expect("triangle");
            if orient(&pts[tri[0] as usize], &pts[tri[1] as usize], &pts[tri[2] as usize], &pts[other as usize]) >= 0 {
                return Err(HullError::Degenerate);
            }
        }
    }
    Ok(faces)
}
