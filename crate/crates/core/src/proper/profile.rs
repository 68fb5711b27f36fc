use super::assemble::ProductAction;
use super::theta::theta_real;
use crate::cocycle::QuasiCocycle;
use crate::derivation::{ConjugatedAction, DerivationAction};
use crate::error::{Error, Result};
use crate::group::{enumerate_ball, GroupWord, DEFAULT_BALL_CAP};
use crate::par::{self, Exec};
use crate::quasitree::{truncated_sum, AxisFamily};
use crate::scalar::Scalar;

/// An affine action seen through its orbit of the origin.
pub trait OrbitAction<S>: Sync {
    fn orbit_norm(&self, g: &GroupWord) -> S;

    /// Uniform bound on `‖π(g)‖`, when one is known.
    fn lipschitz_bound(&self) -> Option<S>;
}

impl<S: Scalar, A: QuasiCocycle<S>> OrbitAction<S> for DerivationAction<S, A> {
    fn orbit_norm(&self, g: &GroupWord) -> S {
        DerivationAction::orbit_norm(self, g)
    }

    fn lipschitz_bound(&self) -> Option<S> {
        DerivationAction::lipschitz_bound(self)
    }
}

impl<S: Scalar, A: QuasiCocycle<S>> OrbitAction<S> for ConjugatedAction<S, A> {
    fn orbit_norm(&self, g: &GroupWord) -> S {
        ConjugatedAction::orbit_norm(self, g)
    }

    fn lipschitz_bound(&self) -> Option<S> {
        Some(ConjugatedAction::lipschitz_bound(self))
    }
}

impl<S: Scalar> OrbitAction<S> for ProductAction<S> {
    fn orbit_norm(&self, g: &GroupWord) -> S {
        ProductAction::orbit_norm(self, g)
    }

    fn lipschitz_bound(&self) -> Option<S> {
        Some(ProductAction::lipschitz_bound(self))
    }
}

/// `‖ζ(g)‖` and `Σ_Y ⌊d_Y(x₀, g·x₀)⌋_L` for one group element.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRow<S> {
    pub g: GroupWord,
    pub norm: S,
    pub sigma: u64,
}

/// One row per element of the ball, in ball order.
pub fn orbit_table<S: Scalar, A: OrbitAction<S>>(
    action: &A,
    families: &[AxisFamily],
    l: u32,
    radius: usize,
    exec: Exec,
) -> Result<Vec<OrbitRow<S>>> {
    let ball = enumerate_ball(radius, DEFAULT_BALL_CAP)?;
    Ok(par::map(exec, &ball, |g| OrbitRow {
        g: g.clone(),
        norm: action.orbit_norm(g),
        sigma: if families.is_empty() { 0 } else { truncated_sum(families, g, l) },
    }))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FitMode {
    /// `‖ζ(g)‖ ≥ Σ/C − C`.
    Linear,
    /// `‖ζ(g)‖ ≥ θ(Σ/C − 1)/C` with the given log depth.
    Theta(u32),
}

/// Least `C > 0` making the fitted inequality hold on every row.
pub fn fit_constant<'a, S: Scalar + 'a>(rows: impl IntoIterator<Item = &'a OrbitRow<S>>, mode: FitMode) -> f64 {
    let pts: Vec<(f64, f64)> = rows.into_iter().map(|r| (r.norm.to_f64(), r.sigma as f64)).collect();
    match mode {
        FitMode::Linear => pts.iter().map(|&(z, s)| (-z + (z * z + 4.0 * s).sqrt()) / 2.0).fold(0.0, f64::max),
        FitMode::Theta(k) => {
            let holds = |c: f64| pts.iter().all(|&(z, s)| z * c >= theta_real(k, s / c - 1.0));
            if pts.iter().all(|p| p.1 == 0.0) {
                return 0.0;
            }
            let mut hi = 1.0;
            while !holds(hi) {
                hi *= 2.0;
                if hi > 1e18 {
                    return f64::INFINITY;
                }
            }
            let mut lo = 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if holds(mid) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            hi
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ProfileRow<S> {
    pub r: usize,
    pub min: S,
    pub mean: S,
    pub max: S,
    /// Linear constant fitted on the ball of radius `r`.
    pub fitted_c: f64,
    /// Largest truncated sum on the sphere.
    pub sum_truncated: u64,
}

/// Sphere minima, means and maxima of `‖ζ‖` for `r ≤` the table radius.
pub fn properness_profile<S: Scalar>(table: &[OrbitRow<S>]) -> Vec<ProfileRow<S>> {
    let mut out: Vec<ProfileRow<S>> = Vec::new();
    let mut start = 0;
    while start < table.len() {
        let r = table[start].g.len();
        let end = start + table[start..].iter().take_while(|row| row.g.len() == r).count();
        let sphere = &table[start..end];
        let mut min = sphere[0].norm.clone();
        let mut max = sphere[0].norm.clone();
        let mut total = S::zero();
        for row in sphere {
            min = min.min_of(row.norm.clone());
            max = max.max_of(row.norm.clone());
            total.add_assign(&row.norm);
        }
        out.push(ProfileRow {
            r,
            min,
            mean: total.div(&S::from_i64(sphere.len() as i64)),
            max,
            fitted_c: fit_constant(&table[..end], FitMode::Linear),
            sum_truncated: sphere.iter().map(|row| row.sigma).max().unwrap_or(0),
        });
        start = end;
    }
    out
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct LowerBoundFit {
    pub radius: usize,
    pub c: f64,
    /// The constant fitted on the ball of radius `radius − 2`.
    pub c_prev: f64,
}

impl LowerBoundFit {
    /// Relative change of the fitted constant between the two radii.
    pub fn drift(&self) -> f64 {
        if self.c == self.c_prev {
            0.0
        } else {
            (self.c - self.c_prev).abs() / self.c.max(self.c_prev)
        }
    }
}

pub fn lower_bound_fit<S: Scalar>(table: &[OrbitRow<S>], mode: FitMode) -> LowerBoundFit {
    let radius = table.last().map_or(0, |r| r.g.len());
    let inner = radius.saturating_sub(2);
    LowerBoundFit {
        radius,
        c: fit_constant(table, mode),
        c_prev: fit_constant(table.iter().filter(|r| r.g.len() <= inner), mode),
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct UpperCheck<S> {
    /// `(Lipschitz bound) · max_{|s| ≤ 1} ‖ζ(s)‖`.
    pub slope: S,
    pub checked: u64,
    pub violations: u64,
    pub first_counterexample: Option<String>,
}

/// `‖ζ(g)‖ ≤ slope·|g|` on every row.
pub fn linear_upper_check<S: Scalar, A: OrbitAction<S>>(action: &A, table: &[OrbitRow<S>]) -> Result<UpperCheck<S>> {
    let bound =
        action.lipschitz_bound().ok_or_else(|| Error::Precondition("action has no recorded Lipschitz bound".into()))?;
    let generators = enumerate_ball(1, DEFAULT_BALL_CAP)?;
    let step = generators.iter().map(|s| action.orbit_norm(s)).reduce(S::max_of).expect("nonempty ball");
    let slope = bound.mul(&step);
    let mut report = UpperCheck { slope, checked: 0, violations: 0, first_counterexample: None };
    for row in table {
        report.checked += 1;
        let cap = report.slope.mul(&S::from_i64(row.g.len() as i64));
        if row.norm > cap {
            report.violations += 1;
            report
                .first_counterexample
                .get_or_insert_with(|| format!("g = {}: {} > {}", row.g, row.norm.to_text(), cap.to_text()));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brooks::{Brooks, BrooksSpec};
    use crate::scalar::Rational;

    fn row(norm: f64, sigma: u64) -> OrbitRow<f64> {
        OrbitRow { g: GroupWord::identity(), norm, sigma }
    }

    #[test]
    fn linear_fit_is_tight() {
        let rows = [row(1.0, 6), row(0.0, 0)];
        let c = fit_constant(&rows, FitMode::Linear);
        assert!((c - 2.0).abs() < 1e-12);
        assert_eq!(fit_constant(&[row(5.0, 0)], FitMode::Linear), 0.0);
    }

    #[test]
    fn theta_fit_satisfies_its_inequality() {
        let rows = [row(2.0, 30), row(0.5, 3), row(9.0, 100)];
        let c = fit_constant(&rows, FitMode::Theta(1));
        assert!(c.is_finite() && c > 0.0);
        for r in &rows {
            assert!(r.norm * c >= theta_real(1, r.sigma as f64 / c - 1.0));
        }
        let smaller = c * 0.99;
        assert!(rows.iter().any(|r| r.norm * smaller < theta_real(1, r.sigma as f64 / smaller - 1.0)));
    }

    #[test]
    fn brooks_profile_rows() {
        let action = DerivationAction::new(Brooks::new(BrooksSpec::<Rational>::standard()));
        let table = orbit_table(&action, &[], 1, 4, Exec::default()).unwrap();
        let prof = properness_profile(&table);
        assert_eq!(prof.len(), 5);
        assert_eq!(prof[0].min, Rational::zero());
        assert_eq!(prof[0].max, Rational::zero());
        assert_eq!(prof[4].min, Rational::from_i64(2));
        assert!(prof[4].max >= Rational::from_i64(6));
    }
}
