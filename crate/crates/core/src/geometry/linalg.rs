//! Small dense linear algebra over a [`Scalar`]: Gaussian elimination, rank,
//! affine hulls, null spaces and inverses.

use crate::scalar::Scalar;

pub type VecN<S> = Vec<S>;

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> VecN<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> VecN<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale<S: Scalar>(a: &[S], k: &S) -> VecN<S> {
    a.iter().map(|x| x.clone() * k.clone()).collect()
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<S: Scalar>(a: &[S]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> VecN<S> {
    (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()
}

fn magnitude<S: Scalar>(rows: &[VecN<S>]) -> f64 {
    rows.iter().flatten().map(Scalar::abs_f64).fold(0.0, f64::max)
}

/// Row echelon form result.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    /// Reduced rows (only the `rank` leading rows are nonzero).
    pub rows: Vec<VecN<S>>,
    pub pivots: Vec<usize>,
}

impl<S> Echelon<S> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form. Exact carriers pick the first nonzero pivot,
/// floats the largest one.
pub fn rref<S: Scalar>(mut rows: Vec<VecN<S>>) -> Echelon<S> {
    let scale = magnitude(&rows);
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let candidate = if S::EXACT {
            (r..rows.len()).find(|&i| !rows[i][col].is_zero())
        } else {
            (r..rows.len())
                .filter(|&i| !rows[i][col].negligible(scale))
                .max_by(|&i, &j| rows[i][col].abs_f64().total_cmp(&rows[j][col].abs_f64()))
        };
        let Some(p) = candidate else { continue };
        rows.swap(r, p);
        let inv = S::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() - f.clone() * p.clone();
            }
            row[col] = S::zero();
        }
        pivots.push(col);
        r += 1;
    }
    Echelon { rows, pivots }
}

pub fn rank<S: Scalar>(rows: Vec<VecN<S>>) -> usize {
    rref(rows).rank()
}

/// Affine dimension and a basis of the direction space of a point set.
#[derive(Clone, Debug)]
pub struct AffineHull<S> {
    pub dimension: usize,
    pub basis: Vec<VecN<S>>,
}

/// Exact affine rank of `points` (which must be nonempty) with a basis of the
/// hull's direction space taken from the point differences.
pub fn affine_hull<S: Scalar>(points: &[VecN<S>]) -> AffineHull<S> {
    let Some(origin) = points.first() else {
        return AffineHull { dimension: 0, basis: Vec::new() };
    };
    let mut basis: Vec<VecN<S>> = Vec::new();
    if S::EXACT {
        // Fraction-free forward elimination on integer-scaled rows.
        let mut rows: Vec<(usize, VecN<S>)> = Vec::new();
        for p in &points[1..] {
            let d = sub(p, origin);
            let mut r = d.clone();
            S::clear_denominators(&mut r);
            for (col, row) in &rows {
                if !r[*col].is_zero() {
                    let (a, f) = (row[*col].clone(), r[*col].clone());
                    r = r.iter().zip(row).map(|(x, y)| S::dot(&[x.clone(), -y.clone()], &[a.clone(), f.clone()])).collect();
                    S::clear_denominators(&mut r);
                }
            }
            if let Some(col) = r.iter().position(|x| !x.is_zero()) {
                rows.push((col, r));
                basis.push(d);
                if basis.len() == origin.len() {
                    break;
                }
            }
        }
        return AffineHull { dimension: basis.len(), basis };
    }
    // Incremental rank: keep a reduced copy to test independence.
    let mut reduced: Vec<(usize, VecN<S>)> = Vec::new();
    let scale = points.iter().flatten().map(Scalar::abs_f64).fold(0.0, f64::max);
    for p in &points[1..] {
        let d = sub(p, origin);
        let mut r = d.clone();
        for (col, row) in &reduced {
            if !r[*col].is_zero() {
                let f = r[*col].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
                r[*col] = S::zero();
            }
        }
        let pivot = if S::EXACT {
            r.iter().position(|x| !x.is_zero())
        } else {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.negligible(scale))
                .max_by(|a, b| a.1.abs_f64().total_cmp(&b.1.abs_f64()))
                .map(|(i, _)| i)
        };
        if let Some(col) = pivot {
            let inv = S::one() / r[col].clone();
            let r: VecN<S> = r.into_iter().map(|x| x * inv.clone()).collect();
            for (_, row) in reduced.iter_mut() {
                if !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&r) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                    row[col] = S::zero();
                }
            }
            reduced.push((col, r));
            basis.push(d);
            if basis.len() == origin.len() {
                break;
            }
        }
    }
    AffineHull { dimension: basis.len(), basis }
}

/// Basis of `{x : row . x = 0 for every row}` in dimension `n`.
pub fn null_space<S: Scalar>(rows: &[VecN<S>], n: usize) -> Vec<VecN<S>> {
    let ech = rref(rows.to_vec());
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); n];
            v[f] = S::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `rows[i] . x = rhs[i]`, or `None` if inconsistent.
pub fn solve_particular<S: Scalar>(rows: &[VecN<S>], rhs: &[S], n: usize) -> Option<VecN<S>> {
    let augmented: Vec<VecN<S>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut a = r.clone();
            a.push(b.clone());
            a
        })
        .collect();
    let ech = rref(augmented);
    if ech.pivots.contains(&n) {
        return None;
    }
    let mut x = vec![S::zero(); n];
    for (r, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.rows[r][n].clone();
    }
    Some(x)
}

/// Inverse of a square matrix given by rows.
pub fn invert<S: Scalar>(m: &[VecN<S>]) -> Option<Vec<VecN<S>>> {
    let n = m.len();
    let augmented: Vec<VecN<S>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend(unit::<S>(n, i));
            a
        })
        .collect();
    let ech = rref(augmented);
    if ech.pivots.len() < n || ech.pivots[n - 1] >= n {
        return None;
    }
    Some(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by elimination (exact for rationals).
pub fn determinant<S: Scalar>(m: &[VecN<S>]) -> S {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = S::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return S::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det = det * pivot.clone();
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = a[i][col].clone() / pivot.clone();
            for j in col..n {
                let v = a[col][j].clone();
                a[i][j] = a[i][j].clone() - f.clone() * v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn pt(c: &[i64]) -> VecN<Rational> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn square_is_two_dimensional() {
        let pts = vec![pt(&[0, 0, 0]), pt(&[1, 0, 0]), pt(&[1, 1, 0]), pt(&[0, 1, 0])];
        assert_eq!(affine_hull(&pts).dimension, 2);
    }

    #[test]
    fn collinear_points_are_one_dimensional() {
        let pts = vec![pt(&[0, 0, 0]), pt(&[1, 1, 1]), pt(&[3, 3, 3])];
        let hull = affine_hull(&pts);
        assert_eq!(hull.dimension, 1);
        assert_eq!(hull.basis, vec![pt(&[1, 1, 1])]);
    }

    #[test]
    fn general_position_in_r4() {
        let pts = vec![pt(&[0, 0, 0, 0]), pt(&[3, 1, 4, 1]), pt(&[5, 9, 2, 6]), pt(&[5, 3, 5, 8]), pt(&[9, 7, 9, 3])];
        // Oracle: determinant of the 4x4 difference matrix is nonzero.
        let diffs: Vec<_> = pts[1..].iter().map(|p| sub(p, &pts[0])).collect();
        assert_ne!(determinant(&diffs), int(0));
        assert_eq!(affine_hull(&pts).dimension, 4);
    }

    #[test]
    fn null_space_and_inverse() {
        let rows = vec![pt(&[1, 1, 0, 0]), pt(&[0, 0, 1, 1])];
        let ns = null_space(&rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert_eq!(dot(r, v), int(0));
            }
        }
        let m = vec![pt(&[2, 1]), pt(&[1, 1])];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![pt(&[1, -1]), pt(&[-1, 2])]);
        assert!(invert(&[pt(&[1, 2]), pt(&[2, 4])]).is_none());
        assert_eq!(solve_particular(&[pt(&[1, 1])], &[int(2)], 2).map(|x| dot(&x, &pt(&[1, 1]))), Some(int(2)));
        assert!(solve_particular(&[pt(&[1, 1]), pt(&[1, 1])], &[int(2), int(3)], 2).is_none());
    }
}
