//! Derivations, the block representation `π_D` and affine actions on `E ⊕ E`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::QuasiCocycle;
use crate::error::{Error, Result};
use crate::group::{enumerate_ball, GroupWord};
use crate::opnorm::{max_ratio, NormEstimate, VectorSampler};
use crate::par::{self, Exec};
use crate::scalar::Scalar;
use crate::sparse::{coboundary_beta, iso_pair, IsoDirection, SparseVec};

/// Writes a zero-sum `f` as `Σ c_x β(g_x)` with `c_x = −f(x)` and
/// `g_x = x·x₀⁻¹`, skipping `x = x₀`.
pub fn expand_in_beta_basis<S: Scalar>(f: &SparseVec<S>, basepoint: &GroupWord) -> Result<Vec<(S, GroupWord)>> {
    if !f.is_zero_sum() {
        return Err(Error::NotZeroSum);
    }
    let inv = basepoint.inverse();
    Ok(f.iter().filter(|(x, _)| *x != basepoint).map(|(x, v)| (v.neg(), x.mul(&inv))).collect())
}

/// An affine action on `E ⊕ E` with linear part `π_D(g)(x, y) = (g·x + D(g)y, g·y)`
/// and cocycle `ζ(g) = (s·α(g), β(g))`.
#[derive(Clone, Debug)]
pub struct DerivationAction<S, A> {
    alpha: A,
    basepoint: GroupWord,
    scale: S,
    defect: Option<S>,
}

impl<S: Scalar, A: QuasiCocycle<S>> DerivationAction<S, A> {
    pub fn new(alpha: A) -> Self {
        DerivationAction { alpha, basepoint: GroupWord::identity(), scale: S::one(), defect: None }
    }

    pub fn with_scale(mut self, scale: S) -> Self {
        self.scale = scale;
        self
    }

    /// Records a measured defect of the unscaled `α`, used for the Lipschitz bound.
    pub fn with_defect(mut self, defect: S) -> Self {
        self.defect = Some(defect);
        self
    }

    pub fn cocycle(&self) -> &A {
        &self.alpha
    }

    pub fn basepoint(&self) -> &GroupWord {
        &self.basepoint
    }

    pub fn scale(&self) -> &S {
        &self.scale
    }

    pub fn defect(&self) -> Option<&S> {
        self.defect.as_ref()
    }

    pub fn alpha(&self, g: &GroupWord) -> SparseVec<S> {
        let v = self.alpha.eval(g);
        if self.scale == S::one() {
            v
        } else {
            v.scale(&self.scale)
        }
    }

    pub fn beta(&self, g: &GroupWord) -> SparseVec<S> {
        coboundary_beta(g, &self.basepoint)
    }

    pub fn zeta(&self, g: &GroupWord) -> (SparseVec<S>, SparseVec<S>) {
        (self.alpha(g), self.beta(g))
    }

    /// `D(g)f = Σ c_x (α(g·g_x) − α(g) − g·α(g_x))`.
    pub fn derivation_apply(&self, g: &GroupWord, f: &SparseVec<S>) -> Result<SparseVec<S>> {
        let terms = expand_in_beta_basis(f, &self.basepoint)?;
        if terms.is_empty() || g.is_identity() {
            return Ok(SparseVec::zero());
        }
        let mut total = S::zero();
        let mut raw = Vec::new();
        for (c, gx) in &terms {
            total.add_assign(c);
            for (k, v) in self.alpha.eval(&g.mul(gx)).iter() {
                raw.push((k.clone(), v.mul(c)));
            }
            let c_neg = c.neg();
            for (k, v) in self.alpha.eval(gx).iter() {
                raw.push((g.mul(k), v.mul(&c_neg)));
            }
        }
        let total_neg = total.neg();
        for (k, v) in self.alpha.eval(g).iter() {
            raw.push((k.clone(), v.mul(&total_neg)));
        }
        let out = SparseVec::from_terms(raw);
        Ok(if self.scale == S::one() { out } else { out.scale(&self.scale) })
    }

    pub fn linear_apply(
        &self,
        g: &GroupWord,
        x: &SparseVec<S>,
        y: &SparseVec<S>,
    ) -> Result<(SparseVec<S>, SparseVec<S>)> {
        let dy = self.derivation_apply(g, y)?;
        Ok((x.translate(g).add(&dy), y.translate(g)))
    }

    pub fn affine_apply(
        &self,
        g: &GroupWord,
        x: &SparseVec<S>,
        y: &SparseVec<S>,
    ) -> Result<(SparseVec<S>, SparseVec<S>)> {
        let (lx, ly) = self.linear_apply(g, x, y)?;
        let (a, b) = self.zeta(g);
        Ok((lx.add(&a), ly.add(&b)))
    }

    /// `‖ζ(g)‖ = ‖s·α(g)‖ + ‖β(g)‖`.
    pub fn orbit_norm(&self, g: &GroupWord) -> S {
        let (a, b) = self.zeta(g);
        a.norm().add(&b.norm())
    }

    /// `1 + s·Δ` when a defect is recorded.
    pub fn lipschitz_bound(&self) -> Option<S> {
        self.defect.as_ref().map(|d| S::one().add(&self.scale.mul(d)))
    }
}

/// `α′(g) = α(g) + δ_g − δ_{ga}`: breaks `α′(id) = 0` and with it every
/// identity of the action. Used as a negative control.
#[derive(Clone, Debug)]
pub struct Perturbed<A>(pub A);

impl<S: Scalar, A: QuasiCocycle<S>> QuasiCocycle<S> for Perturbed<A> {
    fn eval(&self, g: &GroupWord) -> SparseVec<S> {
        let ga = g.mul(&GroupWord::letter_word(crate::group::Letter::A));
        self.0.eval(g).add(&SparseVec::delta(g.clone())).sub(&SparseVec::delta(ga))
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct IdentityReport {
    pub radius: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn tally(name: &'static str, rows: Vec<(u64, Option<String>)>, checked: u64) -> IdentityCheck {
    let violations = rows.iter().map(|r| r.0).sum();
    let first_counterexample = rows.into_iter().find_map(|r| r.1);
    IdentityCheck { name, checked, violations, first_counterexample }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub radius: usize,
    /// Radius of the `β(g′)` test vectors for the Leibniz rule.
    pub test_radius: usize,
    pub representation_samples: usize,
    pub seed: u64,
    pub cap: u64,
    pub exec: Exec,
}

impl VerifyOptions {
    pub fn new(radius: usize) -> Self {
        VerifyOptions {
            radius,
            test_radius: radius,
            representation_samples: 200,
            seed: 0,
            cap: crate::group::DEFAULT_BALL_CAP,
            exec: Exec::default(),
        }
    }
}

/// Exact checks over the ball: the cocycle identity for `ζ`, the Leibniz
/// rule on `β(g′)`, the coboundary identity, and `π_D(gh) = π_D(g)π_D(h)`
/// on seeded random pairs.
pub fn verify_identities<S, A>(action: &DerivationAction<S, A>, opts: &VerifyOptions) -> Result<IdentityReport>
where
    S: Scalar,
    A: QuasiCocycle<S>,
{
    let ball = enumerate_ball(opts.radius, opts.cap)?;
    let tests = enumerate_ball(opts.test_radius, opts.cap)?;
    let n = ball.len() as u64;
    let x0 = action.basepoint().clone();

    let cocycle = par::map(opts.exec, &ball, |g| {
        let (ag, bg) = action.zeta(g);
        let mut bad = 0;
        let mut first = None;
        for h in &ball {
            let (ah, bh) = action.zeta(h);
            let (lx, _) = action.linear_apply(g, &ah, &bh).expect("β is zero-sum");
            let lhs = action.alpha(&g.mul(h));
            let rhs = ag.add(&lx);
            let beta_ok = action.beta(&g.mul(h)) == bg.add(&bh.translate(g));
            if lhs != rhs || !beta_ok {
                bad += 1;
                first.get_or_insert_with(|| format!("g={g} h={h}"));
            }
        }
        (bad, first)
    });

    let leibniz = par::map(opts.exec, &ball, |g| {
        let mut bad = 0;
        let mut first = None;
        for h in &ball {
            let gh = g.mul(h);
            for t in &tests {
                let f = coboundary_beta::<S>(t, &x0);
                let lhs = action.derivation_apply(&gh, &f).expect("zero-sum");
                let rhs = action
                    .derivation_apply(g, &f.translate(h))
                    .expect("zero-sum")
                    .add(&action.derivation_apply(h, &f).expect("zero-sum").translate(g));
                if lhs != rhs {
                    bad += 1;
                    first.get_or_insert_with(|| format!("g={g} h={h} f=beta({t})"));
                }
            }
        }
        (bad, first)
    });

    let beta = par::map(opts.exec, &ball, |g| {
        let bg = action.beta(g);
        let bad = ball.iter().filter(|h| action.beta(&g.mul(h)) != bg.add(&action.beta(h).translate(g))).count() as u64;
        (bad, (bad > 0).then(|| format!("g={g}")))
    });

    let sampler = VectorSampler::new(opts.radius, 4, true, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let cases: Vec<(GroupWord, GroupWord, SparseVec<S>, SparseVec<S>)> = (0..opts.representation_samples)
        .map(|_| {
            let g = ball[rng.gen_range(0..ball.len())].clone();
            let h = ball[rng.gen_range(0..ball.len())].clone();
            (g, h, sampler.sample(&mut rng), sampler.sample(&mut rng))
        })
        .collect();
    let representation = par::map(opts.exec, &cases, |(g, h, x, y)| {
        let direct = action.linear_apply(&g.mul(h), x, y).expect("zero-sum");
        let (hx, hy) = action.linear_apply(h, x, y).expect("zero-sum");
        let composed = action.linear_apply(g, &hx, &hy).expect("zero-sum");
        let bad = (direct != composed) as u64;
        (bad, (bad > 0).then(|| format!("g={g} h={h}")))
    });

    Ok(IdentityReport {
        radius: opts.radius,
        checks: vec![
            tally("cocycle", cocycle, n * n),
            tally("leibniz", leibniz, n * n * tests.len() as u64),
            tally("coboundary", beta, n * n),
            tally("representation", representation, opts.representation_samples as u64),
        ],
    })
}

/// The action with `α` rescaled by `s = min(1, ε/Δ)` and conjugated by the
/// isomorphism `F` on both coordinates, acting on vectors supported off `x₀`.
#[derive(Clone, Debug)]
pub struct ConjugatedAction<S, A> {
    inner: DerivationAction<S, A>,
    defect: S,
    epsilon: S,
}

pub fn rescale_conjugate<S, A>(action: DerivationAction<S, A>, epsilon: S, defect: S) -> Result<ConjugatedAction<S, A>>
where
    S: Scalar,
    A: QuasiCocycle<S>,
{
    if epsilon <= S::zero() {
        return Err(Error::Precondition("epsilon must be positive".into()));
    }
    if defect < S::zero() {
        return Err(Error::Precondition("defect must be non-negative".into()));
    }
    let s = if defect.is_zero() { S::one() } else { S::one().min_of(epsilon.div(&defect)) };
    let inner = action.with_scale(s).with_defect(defect.clone());
    Ok(ConjugatedAction { inner, defect, epsilon })
}

impl<S: Scalar, A: QuasiCocycle<S>> ConjugatedAction<S, A> {
    pub fn inner(&self) -> &DerivationAction<S, A> {
        &self.inner
    }

    pub fn scale(&self) -> &S {
        self.inner.scale()
    }

    pub fn defect(&self) -> &S {
        &self.defect
    }

    pub fn epsilon(&self) -> &S {
        &self.epsilon
    }

    fn forward(&self, v: &SparseVec<S>) -> SparseVec<S> {
        iso_pair(IsoDirection::Forward, v, self.inner.basepoint()).expect("orbit vectors are zero-sum")
    }

    fn pull_back(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> Result<(SparseVec<S>, SparseVec<S>)> {
        let x0 = self.inner.basepoint();
        Ok((iso_pair(IsoDirection::Inverse, x, x0)?, iso_pair(IsoDirection::Inverse, y, x0)?))
    }

    pub fn linear_apply(
        &self,
        g: &GroupWord,
        x: &SparseVec<S>,
        y: &SparseVec<S>,
    ) -> Result<(SparseVec<S>, SparseVec<S>)> {
        let (px, py) = self.pull_back(x, y)?;
        let (a, b) = self.inner.linear_apply(g, &px, &py)?;
        Ok((self.forward(&a), self.forward(&b)))
    }

    pub fn affine_apply(
        &self,
        g: &GroupWord,
        x: &SparseVec<S>,
        y: &SparseVec<S>,
    ) -> Result<(SparseVec<S>, SparseVec<S>)> {
        let (px, py) = self.pull_back(x, y)?;
        let (a, b) = self.inner.affine_apply(g, &px, &py)?;
        Ok((self.forward(&a), self.forward(&b)))
    }

    pub fn zeta(&self, g: &GroupWord) -> (SparseVec<S>, SparseVec<S>) {
        let (a, b) = self.inner.zeta(g);
        (self.forward(&a), self.forward(&b))
    }

    pub fn orbit_norm(&self, g: &GroupWord) -> S {
        let (a, b) = self.zeta(g);
        a.norm().add(&b.norm())
    }

    /// `‖F‖·‖F⁻¹‖·(1 + s·Δ) = 2(1 + s·Δ)`.
    pub fn lipschitz_bound(&self) -> S {
        S::from_i64(2).mul(&S::one().add(&self.scale().mul(&self.defect)))
    }

    /// Sampled lower estimate of the uniform Lipschitz constant, taken over
    /// group elements in the ball of `radius` and pairs supported off `x₀`.
    pub fn lipschitz_estimate(&self, radius: usize, samples: usize, seed: u64) -> Result<NormEstimate<S>> {
        let ball = enumerate_ball(radius, crate::group::DEFAULT_BALL_CAP)?;
        let sampler = VectorSampler::new(radius, 4, false, Some(self.inner.basepoint()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs = Vec::with_capacity(samples);
        for i in 0..samples {
            let g = &ball[rng.gen_range(0..ball.len())];
            let x: SparseVec<S> = sampler.sample(&mut rng);
            // Every few samples probe each block on its own.
            let y: SparseVec<S> = match i % 3 {
                0 => SparseVec::zero(),
                _ => sampler.sample(&mut rng),
            };
            let (x, y) = if i % 3 == 1 { (SparseVec::zero(), y) } else { (x, y) };
            let (a, b) = self.linear_apply(g, &x, &y)?;
            pairs.push((a.norm().add(&b.norm()), x.norm().add(&y.norm())));
        }
        Ok(max_ratio(pairs))
    }
}
