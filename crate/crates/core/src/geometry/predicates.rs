//! Sign predicates and their degree audit.
//!
//! Every sign decision the convexity pipeline takes goes through
//! [`SignContext::sign_of_sum`], which evaluates a sum of precomputed terms,
//! classifies it (exactly or with a relative tolerance), and records the call
//! in a [`PredicateAudit`].

use std::collections::BTreeMap;

use serde::Serialize;

use crate::scalar::{Scalar, Sign};

/// Kinds of sign test issued while checking a star.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PredicateKind {
    /// 3x3 determinant of three rays.
    Orientation3,
    /// Inner product of a candidate functional with a ray.
    Halfspace,
    /// Turn direction at a corner of the reference-plane polygon.
    PolygonTurn,
    /// Lexicographic direction sign of a polygon edge (winding count).
    EdgeDirection,
    /// 2D cross product inside a plane (flat and wedge stars).
    PlanarCross,
    /// Sign of the optimum of the exact feasibility program.
    Feasibility,
    /// Orientation against a cross-product normal (wedge stars only).
    WedgeSweep,
}

impl PredicateKind {
    /// Static upper bound on the algebraic degree in the input coordinates.
    ///
    /// `extra` is 0 when the star's quotient is a plain coordinate selection
    /// and `n - 3` otherwise (each projected ray coordinate then carries a
    /// common denominator of degree `n - 3`).
    pub fn degree(self, extra: u32) -> u32 {
        match self {
            PredicateKind::Orientation3 | PredicateKind::PolygonTurn | PredicateKind::Feasibility => 3 + extra,
            PredicateKind::Halfspace => 1 + extra,
            PredicateKind::EdgeDirection | PredicateKind::PlanarCross => 2 + 2 * extra,
            PredicateKind::WedgeSweep => 4 + 4 * extra,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct KindStats {
    pub invocations: u64,
    pub max_degree: u32,
}

/// Invocation counts and maximal degrees per predicate kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PredicateAudit {
    pub counters: BTreeMap<PredicateKind, KindStats>,
}

impl PredicateAudit {
    pub fn record(&mut self, kind: PredicateKind, degree: u32) {
        let entry = self.counters.entry(kind).or_default();
        entry.invocations += 1;
        entry.max_degree = entry.max_degree.max(degree);
    }

    pub fn merge(&mut self, other: &PredicateAudit) {
        for (kind, stats) in &other.counters {
            let entry = self.counters.entry(*kind).or_default();
            entry.invocations += stats.invocations;
            entry.max_degree = entry.max_degree.max(stats.max_degree);
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.counters.values().map(|s| s.max_degree).max().unwrap_or(0)
    }

    pub fn total_invocations(&self) -> u64 {
        self.counters.values().map(|s| s.invocations).sum()
    }
}

/// Outcome of a tolerant float sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FloatSign {
    Negative,
    Zero,
    Positive,
    /// Nonzero value inside the tolerance band; treated as zero.
    Uncertain,
}

impl FloatSign {
    pub fn as_sign(self) -> Sign {
        match self {
            FloatSign::Negative => Sign::Negative,
            FloatSign::Positive => Sign::Positive,
            FloatSign::Zero | FloatSign::Uncertain => Sign::Zero,
        }
    }
}

/// Classifies `x` against the band `eps * kappa`, where `kappa` is the
/// magnitude scale of the evaluated expression (sum of absolute terms).
pub fn float_sign(x: f64, eps: f64, kappa: f64) -> FloatSign {
    let band = eps * kappa;
    if x > band {
        FloatSign::Positive
    } else if x < -band {
        FloatSign::Negative
    } else if x == 0.0 {
        FloatSign::Zero
    } else {
        FloatSign::Uncertain
    }
}

/// Per-star evaluation state: tolerance, degree offset, audit, uncertainty flag.
#[derive(Clone, Debug)]
pub struct SignContext {
    eps: Option<f64>,
    extra_degree: u32,
    pub audit: PredicateAudit,
    uncertain: bool,
}

impl SignContext {
    pub fn exact() -> Self {
        SignContext { eps: None, extra_degree: 0, audit: PredicateAudit::default(), uncertain: false }
    }

    pub fn tolerant(eps: f64) -> Self {
        SignContext { eps: Some(eps), ..Self::exact() }
    }

    pub fn set_extra_degree(&mut self, extra: u32) {
        self.extra_degree = extra;
    }

    pub fn extra_degree(&self) -> u32 {
        self.extra_degree
    }

    /// Whether some sign was forced to zero from a nonzero float value.
    pub fn hit_uncertain(&self) -> bool {
        self.uncertain
    }

    /// Sign of `terms[0] + terms[1] + ...`.
    pub fn sign_of_sum<S: Scalar>(&mut self, kind: PredicateKind, terms: &[S]) -> Sign {
        self.audit.record(kind, kind.degree(self.extra_degree));
        let mut total = S::zero();
        for t in terms {
            total = total + t.clone();
        }
        match (S::EXACT, self.eps) {
            (true, _) | (false, None) => total.sign(),
            (false, Some(eps)) => {
                let kappa: f64 = terms.iter().map(Scalar::abs_f64).sum();
                let s = float_sign(total.to_f64(), eps, kappa);
                if s == FloatSign::Uncertain {
                    self.uncertain = true;
                }
                s.as_sign()
            }
        }
    }

    pub fn det3<S: Scalar>(&mut self, a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> Sign {
        self.det3_as(PredicateKind::Orientation3, a, b, c)
    }

    pub fn det3_as<S: Scalar>(&mut self, kind: PredicateKind, a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> Sign {
        if S::EXACT {
            self.audit.record(kind, kind.degree(self.extra_degree));
            return S::det3(a, b, c).sign();
        }
        let terms = det3_terms(a, b, c);
        self.sign_of_sum(kind, &terms)
    }

    pub fn dot3<S: Scalar>(&mut self, kind: PredicateKind, a: &[S; 3], b: &[S; 3]) -> Sign {
        if S::EXACT {
            self.audit.record(kind, kind.degree(self.extra_degree));
            return S::dot(a, b).sign();
        }
        let terms = [a[0].clone() * b[0].clone(), a[1].clone() * b[1].clone(), a[2].clone() * b[2].clone()];
        self.sign_of_sum(kind, &terms)
    }

    /// Sign of `a.x * b.y - a.y * b.x`.
    pub fn cross2<S: Scalar>(&mut self, kind: PredicateKind, a: &[S; 2], b: &[S; 2]) -> Sign {
        if S::EXACT {
            self.audit.record(kind, kind.degree(self.extra_degree));
            return S::dot(&[a[0].clone(), -a[1].clone()], &[b[1].clone(), b[0].clone()]).sign();
        }
        let terms = [a[0].clone() * b[1].clone(), -(a[1].clone() * b[0].clone())];
        self.sign_of_sum(kind, &terms)
    }

    pub fn dot2<S: Scalar>(&mut self, kind: PredicateKind, a: &[S; 2], b: &[S; 2]) -> Sign {
        let terms = [a[0].clone() * b[0].clone(), a[1].clone() * b[1].clone()];
        self.sign_of_sum(kind, &terms)
    }

    /// Sign of `a - b`.
    pub fn difference<S: Scalar>(&mut self, kind: PredicateKind, a: &S, b: &S) -> Sign {
        let terms = [a.clone(), -b.clone()];
        self.sign_of_sum(kind, &terms)
    }
}

/// The six cofactor-expansion terms of `det[a; b; c]`.
pub fn det3_terms<S: Scalar>(a: &[S; 3], b: &[S; 3], c: &[S; 3]) -> [S; 6] {
    let m = |x: &S, y: &S, z: &S| x.clone() * y.clone() * z.clone();
    [
        m(&a[0], &b[1], &c[2]),
        -m(&a[0], &b[2], &c[1]),
        -m(&a[1], &b[0], &c[2]),
        m(&a[1], &b[2], &c[0]),
        m(&a[2], &b[0], &c[1]),
        -m(&a[2], &b[1], &c[0]),
    ]
}

/// Exact sign of a 3x3 determinant, recorded in `audit`.
pub fn det3<S: Scalar>(a: &[S; 3], b: &[S; 3], c: &[S; 3], audit: &mut PredicateAudit) -> Sign {
    let mut ctx = SignContext::exact();
    let s = ctx.det3(a, b, c);
    audit.merge(&ctx.audit);
    s
}
