//! Randomized lower bounds for operator norms on ℓ¹.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::{enumerate_ball, GroupWord, DEFAULT_BALL_CAP};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Draws random finitely supported vectors with integer coefficients.
#[derive(Clone, Debug)]
pub struct VectorSampler {
    points: Vec<GroupWord>,
    pub max_support: usize,
    pub max_coeff: i64,
    pub zero_sum: bool,
}

impl VectorSampler {
    /// Supports drawn from the ball of `radius`, skipping `avoid`.
    pub fn new(radius: usize, max_support: usize, zero_sum: bool, avoid: Option<&GroupWord>) -> Result<Self> {
        let points = enumerate_ball(radius, DEFAULT_BALL_CAP)?.into_iter().filter(|p| Some(p) != avoid).collect();
        Ok(VectorSampler { points, max_support: max_support.max(1), max_coeff: 5, zero_sum })
    }

    pub fn sample<S: Scalar, R: Rng>(&self, rng: &mut R) -> SparseVec<S> {
        loop {
            let mut k = rng.gen_range(1..=self.max_support);
            if self.zero_sum {
                k = k.max(2);
            }
            let mut terms = Vec::with_capacity(k);
            let mut total = 0i64;
            for i in 0..k {
                let p = self.points[rng.gen_range(0..self.points.len())].clone();
                let c = if self.zero_sum && i + 1 == k {
                    -total
                } else {
                    let c = rng.gen_range(1..=self.max_coeff);
                    if rng.gen_bool(0.5) {
                        -c
                    } else {
                        c
                    }
                };
                total += c;
                terms.push((p, S::from_i64(c)));
            }
            let v = SparseVec::from_terms(terms);
            if !v.is_empty() {
                return v;
            }
        }
    }

    /// `count` samples from the stream seeded by `seed`.
    pub fn stream<S: Scalar>(&self, seed: u64, count: usize) -> Vec<SparseVec<S>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample(&mut rng)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormEstimate<S> {
    pub value: S,
    /// Index of the first sample attaining the maximum.
    pub argmax: Option<usize>,
    pub samples: usize,
}

/// Running maximum of `output / input` over (output, input) norm pairs;
/// pairs with zero input are skipped.
pub fn max_ratio<S: Scalar, I: IntoIterator<Item = (S, S)>>(pairs: I) -> NormEstimate<S> {
    let mut best = NormEstimate { value: S::zero(), argmax: None, samples: 0 };
    for (i, (out, inp)) in pairs.into_iter().enumerate() {
        best.samples += 1;
        if inp.is_zero() {
            continue;
        }
        let r = out.div(&inp);
        if best.argmax.is_none() || r > best.value {
            best.value = r;
            best.argmax = Some(i);
        }
    }
    best
}

/// `max ‖T v‖ / ‖v‖` over the samples: a certified lower bound on `‖T‖`.
pub fn op_norm_lower_estimate<S, F>(samples: &[SparseVec<S>], op: F) -> NormEstimate<S>
where
    S: Scalar,
    F: Fn(&SparseVec<S>) -> SparseVec<S>,
{
    max_ratio(samples.iter().map(|v| (op(v).norm(), v.norm())))
}
