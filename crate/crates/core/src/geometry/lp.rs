//! Seidel's randomized incremental linear programming in exact arithmetic.
//!
//! Solves `lexmax (c_1 . x, c_2 . x, ...)` subject to `a_i . x <= b_i` inside
//! the box `|x_j| <= bound`. The objective list must have full rank so the
//! optimum is unique; expected running time is `O(d! m)` for `m` constraints.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub bound: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, bound: Rational) -> Self {
        Constraint { coeffs, bound }
    }

    fn satisfied(&self, x: &[Rational]) -> bool {
        let lhs = x.iter().zip(&self.coeffs).fold(<Rational as Zero>::zero(), |acc, (a, b)| acc + a * b);
        lhs <= self.bound
    }
}

/// Lexicographic maximum, or `None` when infeasible.
pub fn lex_max<R: Rng>(
    constraints: &[Constraint],
    objectives: &[Vec<Rational>],
    bound: &Rational,
    rng: &mut R,
) -> Option<Vec<Rational>> {
    let dim = objectives.first().map_or(0, Vec::len);
    let lo = vec![-bound.clone(); dim];
    let hi = vec![bound.clone(); dim];
    let mut order: Vec<Constraint> = constraints.to_vec();
    order.shuffle(rng);
    solve(order, objectives.to_vec(), lo, hi, rng)
}

fn box_optimum(objectives: &[Vec<Rational>], lo: &[Rational], hi: &[Rational]) -> Vec<Rational> {
    (0..lo.len())
        .map(|j| {
            let dir = objectives.iter().map(|c| c[j].sign()).find(|s| *s != crate::scalar::Sign::Zero);
            match dir {
                Some(crate::scalar::Sign::Positive) => hi[j].clone(),
                _ => lo[j].clone(),
            }
        })
        .collect()
}

fn solve<R: Rng>(
    constraints: Vec<Constraint>,
    objectives: Vec<Vec<Rational>>,
    lo: Vec<Rational>,
    hi: Vec<Rational>,
    rng: &mut R,
) -> Option<Vec<Rational>> {
    let dim = lo.len();
    if dim == 1 {
        return solve_1d(&constraints, &objectives, &lo[0], &hi[0]).map(|x| vec![x]);
    }
    let mut x = box_optimum(&objectives, &lo, &hi);
    for i in 0..constraints.len() {
        if constraints[i].satisfied(&x) {
            continue;
        }
        let h = &constraints[i];
        let Some(j) = h.coeffs.iter().position(|a| !Scalar::is_zero(a)) else {
            return None;
        };
        let aj = h.coeffs[j].clone();
        // x_j = (b - sum_{k != j} a_k x_k) / a_j
        let keep: Vec<usize> = (0..dim).filter(|&k| k != j).collect();
        let subst = |coeffs: &[Rational], rhs: &Rational| -> Constraint {
            let f = coeffs[j].clone() / aj.clone();
            let c = keep.iter().map(|&k| coeffs[k].clone() - f.clone() * h.coeffs[k].clone()).collect();
            Constraint::new(c, rhs.clone() - f * h.bound.clone())
        };
        let mut reduced: Vec<Constraint> = constraints[..i].iter().map(|c| subst(&c.coeffs, &c.bound)).collect();
        // Box on the eliminated variable becomes two general constraints.
        let mut e = vec![<Rational as Zero>::zero(); dim];
        e[j] = <Rational as One>::one();
        reduced.push(subst(&e, &hi[j]));
        e[j] = -<Rational as One>::one();
        reduced.push(subst(&e, &-lo[j].clone()));
        reduced.shuffle(rng);
        let objs: Vec<Vec<Rational>> = objectives
            .iter()
            .map(|c| {
                let f = c[j].clone() / aj.clone();
                keep.iter().map(|&k| c[k].clone() - f.clone() * h.coeffs[k].clone()).collect()
            })
            .collect();
        let sub_lo = keep.iter().map(|&k| lo[k].clone()).collect();
        let sub_hi = keep.iter().map(|&k| hi[k].clone()).collect();
        let y = solve(reduced, objs, sub_lo, sub_hi, rng)?;
        let mut rhs = h.bound.clone();
        for (idx, &k) in keep.iter().enumerate() {
            rhs -= h.coeffs[k].clone() * y[idx].clone();
        }
        let mut next = vec![<Rational as Zero>::zero(); dim];
        for (idx, &k) in keep.iter().enumerate() {
            next[k] = y[idx].clone();
        }
        next[j] = rhs / aj;
        x = next;
    }
    Some(x)
}

fn solve_1d(
    constraints: &[Constraint],
    objectives: &[Vec<Rational>],
    lo: &Rational,
    hi: &Rational,
) -> Option<Rational> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    for c in constraints {
        let a = &c.coeffs[0];
        match a.sign() {
            crate::scalar::Sign::Zero => {
                if c.bound < <Rational as Zero>::zero() {
                    return None;
                }
            }
            crate::scalar::Sign::Positive => {
                let v = c.bound.clone() / a.clone();
                if v < hi {
                    hi = v;
                }
            }
            crate::scalar::Sign::Negative => {
                let v = c.bound.clone() / a.clone();
                if v > lo {
                    lo = v;
                }
            }
        }
    }
    if lo > hi {
        return None;
    }
    let dir = objectives.iter().map(|c| c[0].sign()).find(|s| *s != crate::scalar::Sign::Zero);
    Some(if dir == Some(crate::scalar::Sign::Positive) { hi } else { lo })
}

use num_traits::{One, Zero};
