//! Quasi-cocycles for the permutation representation and their defects.

use std::time::Instant;

use crate::error::Result;
use crate::group::{enumerate_ball, GroupWord};
use crate::par::{self, Exec};
use crate::scalar::Scalar;
use crate::sparse::{coboundary_beta, SparseVec};

/// A map `α: F₂ → ℓ¹` with `α(id) = 0`, evaluated pointwise.
pub trait QuasiCocycle<S: Scalar>: Sync + Send {
    fn eval(&self, g: &GroupWord) -> SparseVec<S>;
}

impl<S: Scalar, T: QuasiCocycle<S> + ?Sized> QuasiCocycle<S> for &T {
    fn eval(&self, g: &GroupWord) -> SparseVec<S> {
        (**self).eval(g)
    }
}

impl<S: Scalar, T: QuasiCocycle<S> + ?Sized> QuasiCocycle<S> for Box<T> {
    fn eval(&self, g: &GroupWord) -> SparseVec<S> {
        (**self).eval(g)
    }
}

/// The genuine cocycle `β(g) = δ_{x₀} − δ_{g·x₀}`.
#[derive(Clone, Debug)]
pub struct Coboundary {
    pub basepoint: GroupWord,
}

impl<S: Scalar> QuasiCocycle<S> for Coboundary {
    fn eval(&self, g: &GroupWord) -> SparseVec<S> {
        coboundary_beta(g, &self.basepoint)
    }
}

/// `α(gh) − α(g) − g·α(h)`.
pub fn defect_vector<S: Scalar, A: QuasiCocycle<S>>(alpha: &A, g: &GroupWord, h: &GroupWord) -> SparseVec<S> {
    alpha.eval(&g.mul(h)).sub(&alpha.eval(g)).sub(&alpha.eval(h).translate(g))
}

#[derive(Clone, Debug)]
pub struct DefectReport<S> {
    pub radius: usize,
    pub defect: S,
    pub argmax: (GroupWord, GroupWord),
    pub pairs: u64,
    pub elapsed_ms: u128,
}

/// Exact maximum of `‖α(gg′) − α(g) − g·α(g′)‖` over `g, g′` in the ball.
/// Ties resolve to the first pair in enumeration order.
pub fn defect_measure<S, A>(alpha: &A, radius: usize, cap: u64, exec: Exec) -> Result<DefectReport<S>>
where
    S: Scalar,
    A: QuasiCocycle<S>,
{
    let start = Instant::now();
    let ball = enumerate_ball(radius, cap)?;
    let values: Vec<SparseVec<S>> = par::map(exec, &ball, |g| alpha.eval(g));
    let lookup = |w: &GroupWord| -> SparseVec<S> {
        if w.len() <= radius {
            if let Ok(i) = ball.binary_search(w) {
                return values[i].clone();
            }
        }
        alpha.eval(w)
    };
    let rows: Vec<(S, usize)> = par::map_range(exec, ball.len(), |i| {
        let g = &ball[i];
        let mut best = (S::zero(), 0usize);
        for (j, h) in ball.iter().enumerate() {
            let d = lookup(&g.mul(h)).sub(&values[i]).sub(&values[j].translate(g)).norm();
            if d > best.0 {
                best = (d, j);
            }
        }
        best
    });
    let mut best = (S::zero(), 0usize, 0usize);
    for (i, (d, j)) in rows.into_iter().enumerate() {
        if d > best.0 {
            best = (d, i, j);
        }
    }
    Ok(DefectReport {
        radius,
        defect: best.0,
        argmax: (ball[best.1].clone(), ball[best.2].clone()),
        pairs: (ball.len() as u64).pow(2),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_BALL_CAP;
    use crate::scalar::Rational;

    #[test]
    fn coboundary_has_zero_defect() {
        let beta = Coboundary { basepoint: GroupWord::identity() };
        for r in 0..4 {
            let rep: DefectReport<Rational> = defect_measure(&beta, r, DEFAULT_BALL_CAP, Exec::Sequential).unwrap();
            assert!(rep.defect.is_zero());
        }
    }
}
