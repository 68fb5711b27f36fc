use std::collections::BTreeSet;

use super::axis::{Axis, AxisFamily};
use super::graph::{measure_xi, CkGraph};
use super::wsets::{family_truncated_sum, truncated_sum_over, w_sets_qt, WConfig};
use crate::error::{Error, Result};
use crate::group::{enumerate_ball, GroupWord, DEFAULT_BALL_CAP};
use crate::par::{self, Exec};
use crate::scalar::{Rational, Scalar};

/// Per-radius summary of the counting bound, W-set disjointness, the
/// distance-formula upper bound and the measured geometry constants.
#[derive(Clone, Debug)]
pub struct Diagnostics {
    pub radius: usize,
    pub elements: usize,
    /// Elements with a nonempty `W₊ ∪ W₋`.
    pub nonempty: usize,
    /// Least `C` with `Σ_Y ⌊d_Y⌋_L ≤ C·(|W₊| + |W₋|) + C` on the ball.
    pub fitted_c: Rational,
    pub disjointness_violations: usize,
    /// Elements with `Σ_Y ⌊d_Y⌋_L > 4·d_CK`. Only meaningful when `L ≥ K`.
    pub distance_violations: usize,
    pub max_truncated_sum: u64,
    pub xi: i64,
    pub delta: f64,
    pub bottleneck: u64,
    pub candidates_checked: usize,
    pub candidate_mismatches: usize,
}

impl Diagnostics {
    pub fn passed(&self) -> bool {
        self.disjointness_violations == 0 && self.distance_violations == 0 && self.candidate_mismatches == 0
    }
}

/// Four-point hyperbolicity of the ball truncation, over a seeded sample.
pub fn measure_delta(family: &AxisFamily, radius: usize, k: u32, sample: usize, seed: u64) -> Result<f64> {
    Ok(CkGraph::ball_truncation(family, radius, k)?.hyperbolicity(sample, seed))
}

/// The shortest `h` whose orbit point lies at distance at least `n` from the
/// base axis, witnessing that translates far from the axis exist.
pub fn assumption_b_witness(family: &AxisFamily, n: usize) -> Result<GroupWord> {
    let axis = family.base_axis();
    let radius = n + family.orbit_vertex(&GroupWord::identity()).len() + 1;
    enumerate_ball(radius, DEFAULT_BALL_CAP)?
        .into_iter()
        .find(|h| axis.distance_to_vertex(&family.orbit_vertex(h)) >= n)
        .ok_or_else(|| Error::OutOfRange(format!("no orbit point at distance {n} from the axis")))
}

pub fn diagnostics(family: &AxisFamily, config: &WConfig, radius: usize, exec: Exec) -> Result<Diagnostics> {
    let ball = enumerate_ball(radius, DEFAULT_BALL_CAP)?;
    let rows = par::map(exec, &ball, |g| -> Result<(usize, u64, u64, bool)> {
        let ws = w_sets_qt(family, config, g)?;
        let sum = family_truncated_sum(family, g, config.l);
        Ok((ws.size(), sum, ws.d_ck, ws.is_disjoint()))
    });
    let mut fitted_c = Rational::zero();
    let mut nonempty = 0;
    let mut disjointness_violations = 0;
    let mut distance_violations = 0;
    let mut max_truncated_sum = 0;
    for row in rows {
        let (size, sum, d_ck, disjoint) = row?;
        nonempty += (size > 0) as usize;
        disjointness_violations += (!disjoint) as usize;
        if config.l >= config.k && sum > 4 * d_ck {
            distance_violations += 1;
        }
        max_truncated_sum = max_truncated_sum.max(sum);
        fitted_c = fitted_c.max_of(Rational::from_ratio(sum as i64, size as i64 + 1));
    }

    // Candidate completeness against every axis meeting a ball that contains
    // all tree geodesics [x₀, g·x₀].
    let small = radius.min(4);
    let reach = small + family.orbit_vertex(&GroupWord::identity()).len() + 1;
    let mut all_axes: BTreeSet<Axis> = BTreeSet::new();
    for v in enumerate_ball(reach, DEFAULT_BALL_CAP)? {
        all_axes.extend(family.axes_through(&v));
    }
    let small_ball = enumerate_ball(small, DEFAULT_BALL_CAP)?;
    let all: Vec<Axis> = all_axes.into_iter().collect();
    let mismatches = par::map(exec, &small_ball, |g| {
        family_truncated_sum(family, g, config.l) != truncated_sum_over(family, all.iter(), g, config.l)
    });

    let probe = radius.min(4);
    let truncation = CkGraph::ball_truncation(family, probe, config.k)?;
    Ok(Diagnostics {
        radius,
        elements: ball.len(),
        nonempty,
        fitted_c,
        disjointness_violations,
        distance_violations,
        max_truncated_sum,
        xi: measure_xi(family, probe)?,
        delta: truncation.hyperbolicity(40, 0),
        bottleneck: truncation.bottleneck(8, 0),
        candidates_checked: small_ball.len(),
        candidate_mismatches: mismatches.into_iter().filter(|&m| m).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_is_far_from_axis() {
        let fam = AxisFamily::new("ab".parse().unwrap()).unwrap();
        let h = assumption_b_witness(&fam, 3).unwrap();
        assert!(fam.base_axis().distance_to_vertex(&fam.orbit_vertex(&h)) >= 3);
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn single_family_radius_four() {
        let fam = AxisFamily::new("ab".parse().unwrap()).unwrap();
        let cfg = WConfig::new(&fam, 1, 8, 8).unwrap();
        let d = diagnostics(&fam, &cfg, 4, Exec::default()).unwrap();
        assert!(d.passed(), "{d:?}");
        assert_eq!(d.xi, 0);
    }
}
