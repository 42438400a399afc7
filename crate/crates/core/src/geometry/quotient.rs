//! Quotient of R^n by the direction space of an (n-3)-face, expressed in a
//! complementary 3-frame.

use thiserror::Error;

use super::linalg::{self, VecN};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum ProjectionMode {
    /// The image frame is a coordinate 3-subspace.
    CoordinateSubspace,
    /// The image frame spans the orthogonal complement; projection solves a
    /// full linear system.
    GeneralSolve,
}

/// How the complement of `lin(F)` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComplementStrategy {
    /// Scan coordinate triples lexicographically, first complementary wins.
    Scan,
    /// Use this coordinate triple if complementary, otherwise solve generally.
    Fixed([usize; 3]),
    /// Always use the general solve.
    General,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error("direction space has dimension {found}, expected {expected}")]
    DegenerateFace { expected: usize, found: usize },
}

#[derive(Clone, Debug)]
enum Projector<S> {
    /// Read three coordinates of the difference vector.
    Select([usize; 3]),
    /// Apply a 3 x n matrix to the difference vector.
    Matrix(Vec<VecN<S>>),
}

#[derive(Clone, Debug)]
pub struct QuotientMap<S> {
    pub center_point: VecN<S>,
    pub direction_basis: Vec<VecN<S>>,
    pub image_frame: [VecN<S>; 3],
    pub mode: ProjectionMode,
    projector: Projector<S>,
}

/// Coordinate triples of `0..n` in lexicographic order.
pub fn coordinate_triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| [a, b, c])))
}

/// Whether `span(basis)` and the coordinate subspace on `triple` are
/// complementary: the minor of `basis` on the remaining coordinates is
/// nonsingular.
pub fn is_complementary<S: Scalar>(basis: &[VecN<S>], n: usize, triple: [usize; 3]) -> bool {
    if basis.len() + 3 != n {
        return false;
    }
    if basis.is_empty() {
        return true;
    }
    let rest: Vec<usize> = (0..n).filter(|c| !triple.contains(c)).collect();
    let minor: Vec<VecN<S>> = basis.iter().map(|v| rest.iter().map(|&c| v[c].clone()).collect()).collect();
    linalg::rank(minor) == rest.len()
}

impl<S: Scalar> QuotientMap<S> {
    /// Builds the quotient by `span(direction_basis)` through `center_point`.
    pub fn new(
        center_point: VecN<S>,
        direction_basis: Vec<VecN<S>>,
        strategy: ComplementStrategy,
    ) -> Result<Self, QuotientError> {
        let n = center_point.len();
        if direction_basis.len() + 3 != n || linalg::rank(direction_basis.clone()) != direction_basis.len() {
            return Err(QuotientError::DegenerateFace {
                expected: n.saturating_sub(3),
                found: linalg::rank(direction_basis.clone()),
            });
        }
        let triple = match strategy {
            ComplementStrategy::Scan => coordinate_triples(n).find(|&t| is_complementary(&direction_basis, n, t)),
            ComplementStrategy::Fixed(t) => Some(t).filter(|&t| is_complementary(&direction_basis, n, t)),
            ComplementStrategy::General => None,
        };
        match triple {
            Some(t) => Ok(Self::coordinate(center_point, direction_basis, t)),
            None => Self::general(center_point, direction_basis),
        }
    }

    fn coordinate(center_point: VecN<S>, direction_basis: Vec<VecN<S>>, t: [usize; 3]) -> Self {
        let n = center_point.len();
        let image_frame = [linalg::unit(n, t[0]), linalg::unit(n, t[1]), linalg::unit(n, t[2])];
        let axis_aligned = direction_basis.iter().all(|d| t.iter().all(|&c| d[c].is_zero()));
        let projector = if axis_aligned {
            Projector::Select(t)
        } else {
            Projector::Matrix(frame_rows(&direction_basis, &image_frame).expect("complementary frame is a basis"))
        };
        QuotientMap { center_point, direction_basis, image_frame, mode: ProjectionMode::CoordinateSubspace, projector }
    }

    fn general(center_point: VecN<S>, direction_basis: Vec<VecN<S>>) -> Result<Self, QuotientError> {
        let n = center_point.len();
        let complement = linalg::null_space(&direction_basis, n);
        let found = n - complement.len();
        let Ok(image_frame) = <[VecN<S>; 3]>::try_from(complement) else {
            return Err(QuotientError::DegenerateFace { expected: n - 3, found });
        };
        let rows = frame_rows(&direction_basis, &image_frame)
            .ok_or(QuotientError::DegenerateFace { expected: n - 3, found })?;
        Ok(QuotientMap {
            center_point,
            direction_basis,
            image_frame,
            mode: ProjectionMode::GeneralSolve,
            projector: Projector::Matrix(rows),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.center_point.len()
    }

    /// True when projection is a pure coordinate read-out.
    pub fn is_selection(&self) -> bool {
        matches!(self.projector, Projector::Select(_))
    }

    /// Degree offset of downstream predicates: 0 for a coordinate read-out,
    /// `n - 3` otherwise.
    pub fn extra_degree(&self) -> u32 {
        if self.is_selection() {
            0
        } else {
            (self.ambient_dim() - 3) as u32
        }
    }

    /// Image of the linear part: coordinates of `v mod lin(F)` in the frame.
    pub fn project_vector(&self, v: &[S]) -> [S; 3] {
        match &self.projector {
            Projector::Select(t) => [v[t[0]].clone(), v[t[1]].clone(), v[t[2]].clone()],
            Projector::Matrix(rows) => {
                [linalg::dot(&rows[0], v), linalg::dot(&rows[1], v), linalg::dot(&rows[2], v)]
            }
        }
    }

    /// Image of a point: `project_vector(p - center_point)`.
    pub fn project(&self, p: &[S]) -> [S; 3] {
        self.project_vector(&linalg::sub(p, &self.center_point))
    }
}

/// The last three rows of `[direction_basis | frame]^{-1}` (as columns).
fn frame_rows<S: Scalar>(direction_basis: &[VecN<S>], frame: &[VecN<S>; 3]) -> Option<Vec<VecN<S>>> {
    let n = frame[0].len();
    // Columns are the basis vectors; invert and keep the frame coefficients.
    let columns: Vec<&VecN<S>> = direction_basis.iter().chain(frame.iter()).collect();
    let m: Vec<VecN<S>> = (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let inv = linalg::invert(&m)?;
    Some(inv[n - 3..].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn pt(c: &[i64]) -> VecN<Rational> {
        c.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn three_space_is_identity() {
        let q = QuotientMap::new(pt(&[1, 2, 3]), vec![], ComplementStrategy::Scan).unwrap();
        assert_eq!(q.mode, ProjectionMode::CoordinateSubspace);
        assert!(q.is_selection());
        assert_eq!(q.project(&pt(&[2, 2, 5])), [int(1), int(0), int(2)]);
    }

    #[test]
    fn axis_edge_in_r4() {
        let q = QuotientMap::new(pt(&[0, 0, 0, 0]), vec![pt(&[0, 0, 0, 1])], ComplementStrategy::Scan).unwrap();
        assert_eq!(q.mode, ProjectionMode::CoordinateSubspace);
        assert_eq!(q.image_frame, [pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])]);
        assert_eq!(q.extra_degree(), 0);
    }

    #[test]
    fn diagonal_edge_in_r4() {
        let d = pt(&[1, 1, 1, 1]);
        // Oracle: det[d, e1, e2, e3] = -1 != 0, so (e1, e2, e3) is complementary.
        let m = vec![d.clone(), pt(&[1, 0, 0, 0]), pt(&[0, 1, 0, 0]), pt(&[0, 0, 1, 0])];
        assert_ne!(linalg::determinant(&m), int(0));
        let q = QuotientMap::new(pt(&[0, 0, 0, 0]), vec![d.clone()], ComplementStrategy::Scan).unwrap();
        assert_eq!(q.image_frame[0], pt(&[1, 0, 0, 0]));
        assert_eq!(q.mode, ProjectionMode::CoordinateSubspace);
        assert_eq!(q.extra_degree(), 1);
        assert_eq!(q.project(&d), [int(0), int(0), int(0)]);
    }

    #[test]
    fn projection_examples() {
        let c = pt(&[1, 2, 3, 4]);
        let d = pt(&[1, 0, 2, 1]);
        for strategy in [ComplementStrategy::Scan, ComplementStrategy::General] {
            let q = QuotientMap::new(c.clone(), vec![d.clone()], strategy).unwrap();
            let zero = [int(0), int(0), int(0)];
            assert_eq!(q.project(&c), zero);
            assert_eq!(q.project(&linalg::add(&c, &d)), zero);
            let f1 = q.image_frame[1].clone();
            assert_eq!(q.project(&linalg::add(&c, &f1)), [int(0), int(1), int(0)]);
        }
        let general = QuotientMap::new(c, vec![d], ComplementStrategy::General).unwrap();
        assert_eq!(general.mode, ProjectionMode::GeneralSolve);
    }

    #[test]
    fn degenerate_direction_space() {
        let err = QuotientMap::new(pt(&[0, 0, 0, 0]), vec![pt(&[0, 0, 0, 0])], ComplementStrategy::Scan);
        assert!(matches!(err, Err(QuotientError::DegenerateFace { .. })));
    }

    proptest::proptest! {
        #[test]
        fn projection_is_linear(
            d in proptest::collection::vec(-5i64..6, 4),
            p in proptest::collection::vec(-9i64..10, 4),
            q in proptest::collection::vec(-9i64..10, 4),
            a in -7i64..8, b in 1i64..9,
        ) {
            proptest::prop_assume!(d.iter().any(|&x| x != 0));
            let qm = QuotientMap::new(pt(&[0, 0, 0, 0]), vec![pt(&d)], ComplementStrategy::Scan).unwrap();
            let alpha = rat(a, b);
            let beta = rat(b, 3);
            let pv = pt(&p);
            let qv = pt(&q);
            let combo = linalg::add(&linalg::scale(&pv, &alpha), &linalg::scale(&qv, &beta));
            let lhs = qm.project(&combo);
            let (pp, qq) = (qm.project(&pv), qm.project(&qv));
            for i in 0..3 {
                proptest::prop_assert_eq!(lhs[i].clone(), alpha.clone() * pp[i].clone() + beta.clone() * qq[i].clone());
            }
        }
    }
}
