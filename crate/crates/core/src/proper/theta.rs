use crate::error::{Error, Result};
use crate::scalar::FLOAT_TOL;

/// `log^{∘k}(t)` when every intermediate logarithm is defined.
pub fn log_iter(k: u32, t: f64) -> Option<f64> {
    let mut v = t;
    for _ in 0..k {
        if v <= 0.0 {
            return None;
        }
        v = v.ln();
    }
    Some(v)
}

/// `log^{∘k}_+(t)`: the iterated log when defined and positive, else 0.
pub fn log_plus(k: u32, t: f64) -> f64 {
    match log_iter(k, t) {
        Some(v) if v > 0.0 => v,
        _ => 0.0,
    }
}

/// `T′ = exp^{∘k}(0)`; `log^{∘k}(t) > 0` exactly when `t > T′`.
pub fn threshold(k: u32) -> f64 {
    (0..k).fold(0.0, |v, _| f64::exp(v))
}

/// `θ(t) = t / (1 + log^{∘k}_+ t)`.
pub fn theta(k: u32, t: u64) -> f64 {
    let t = t as f64;
    t / (1.0 + log_plus(k, t))
}

/// `θ` on reals, read as `θ(max(0, ⌈t⌉))`.
pub fn theta_real(k: u32, t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        theta(k, t.ceil() as u64)
    }
}

/// `Θ(j) = 1 / (j · log j ⋯ log^{∘(k−1)} j · (log^{∘k} j)²)` above `T′`, and 1 below.
#[allow(non_snake_case)]
pub fn Theta(k: u32, j: u64) -> f64 {
    let t = j as f64;
    if t <= threshold(k) {
        return 1.0;
    }
    let mut denom = t;
    let mut v = t;
    for i in 0..k {
        v = v.ln();
        denom *= if i + 1 == k { v * v } else { v };
    }
    1.0 / denom
}

/// `1 / log^{∘k}(j)`, the integral of `Θ` over `[j, ∞)`.
pub fn tail_bound(k: u32, j: u64) -> f64 {
    match log_iter(k, j as f64) {
        Some(v) if v > 0.0 => 1.0 / v,
        _ => f64::INFINITY,
    }
}

/// Decay profile for the vector `Σ_{j ≤ J} Θ(j)(δ_{f^j} − δ_{f^{−j}})`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecaySpec {
    pub k: u32,
    pub j_max: u64,
}

impl DecaySpec {
    pub fn new(k: u32, j_max: u64) -> Result<DecaySpec> {
        if k == 0 {
            return Err(Error::Precondition("k must be at least 1".into()));
        }
        if (j_max as f64) <= threshold(k) {
            return Err(Error::Precondition(format!("J_max = {j_max} must exceed the threshold {:.3}", threshold(k))));
        }
        Ok(DecaySpec { k, j_max })
    }

    pub fn threshold(&self) -> f64 {
        threshold(self.k)
    }

    /// Upper bound on the discarded mass `Σ_{j > J_max} Θ(j)`.
    pub fn tail(&self) -> f64 {
        tail_bound(self.k, self.j_max)
    }

    /// `Θ(1), …, Θ(J_max)`.
    pub fn weights(&self) -> Vec<f64> {
        (1..=self.j_max).map(|j| Theta(self.k, j)).collect()
    }

    pub fn theta(&self, t: u64) -> f64 {
        theta(self.k, t)
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub checked: u64,
    pub violations: u64,
    pub first_counterexample: Option<String>,
}

impl PropertyCheck {
    fn new(name: &'static str) -> Self {
        PropertyCheck { name, checked: 0, violations: 0, first_counterexample: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(witness());
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ThetaReport {
    pub k: u32,
    pub grid_max: u64,
    pub checks: Vec<PropertyCheck>,
}

impl ThetaReport {
    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }
}

fn leq(a: f64, b: f64) -> bool {
    a <= b + FLOAT_TOL * b.abs().max(1.0)
}

/// Checks, for `1 ≤ s, t ≤ grid_max`: `θ(t) = t` below `T′`, monotonicity,
/// subadditivity, `θ(t) ≤ Σ_{i ≤ t} Σ_{j ≥ i} Θ(j)` with the infinite tail
/// bounded below by `1/log^{∘k}(G+1)`, and the analytic tail bound
/// `Σ_{J < j ≤ G} Θ(j) ≤ 1/log^{∘k}(J) − 1/log^{∘k}(G)` above `T′`.
pub fn verify_theta(k: u32, grid_max: u64) -> Result<ThetaReport> {
    let g = grid_max;
    if k == 0 || (g as f64) <= threshold(k) + 1.0 {
        return Err(Error::Precondition(format!("grid {g} too small for k = {k}")));
    }
    let table: Vec<f64> = (0..=2 * g).map(|t| theta(k, t)).collect();
    let big: Vec<f64> = (0..=g).map(|j| if j == 0 { 0.0 } else { Theta(k, j) }).collect();

    let mut below = PropertyCheck::new("identity_below_threshold");
    let t_prime = threshold(k);
    for t in 0..=g {
        if (t as f64) <= t_prime {
            below.record(table[t as usize] == t as f64, || format!("theta({t}) = {}", table[t as usize]));
        }
    }

    let mut monotone = PropertyCheck::new("monotone");
    for t in 0..2 * g {
        let (a, b) = (table[t as usize], table[t as usize + 1]);
        monotone.record(leq(a, b), || format!("theta({t}) = {a} > theta({}) = {b}", t + 1));
    }

    let mut subadditive = PropertyCheck::new("subadditive");
    for s in 1..=g {
        for t in s..=g {
            let lhs = table[(s + t) as usize];
            let rhs = table[s as usize] + table[t as usize];
            subadditive.record(leq(lhs, rhs), || format!("theta({}) = {lhs} > theta({s}) + theta({t}) = {rhs}", s + t));
        }
    }

    // tails[i] = Σ_{j=i}^{G} Θ(j), summed from the small end.
    let mut tails = vec![0.0; g as usize + 2];
    for j in (1..=g as usize).rev() {
        tails[j] = tails[j + 1] + big[j];
    }
    let infinite = 1.0 / log_iter(k, (g + 1) as f64).expect("grid above threshold");
    let mut domination = PropertyCheck::new("double_sum_domination");
    let mut double = 0.0;
    for t in 1..=g {
        double += tails[t as usize] + infinite;
        let th = table[t as usize];
        domination.record(leq(th, double), || format!("theta({t}) = {th} > double sum {double}"));
    }

    let mut tail = PropertyCheck::new("tail_bound");
    let tail_g = tail_bound(k, g);
    for j in (t_prime.floor() as u64 + 1)..g {
        let lhs = tails[j as usize + 1];
        let rhs = tail_bound(k, j) - tail_g;
        tail.record(leq(lhs, rhs), || format!("sum over ({j}, {g}] = {lhs} > {rhs}"));
    }

    Ok(ThetaReport { k, grid_max, checks: vec![below, monotone, subadditive, domination, tail] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thresholds() {
        assert_eq!(threshold(1), 1.0);
        assert!((threshold(2) - std::f64::consts::E).abs() < 1e-15);
        assert!((threshold(3) - 15.154262241479262).abs() < 1e-12);
    }

    #[test]
    fn theta_is_identity_below_threshold() {
        assert_eq!(theta(1, 1), 1.0);
        assert_eq!(theta(2, 2), 2.0);
        assert_eq!(theta(3, 15), 15.0);
        assert!(theta(3, 16) < 16.0);
        assert_eq!(theta_real(1, -3.5), 0.0);
        assert_eq!(theta_real(2, 1.2), 2.0);
    }

    #[test]
    fn big_theta_values() {
        assert_eq!(Theta(1, 1), 1.0);
        let two = 2f64;
        assert!((Theta(1, 2) - 1.0 / (two * two.ln() * two.ln())).abs() < 1e-15);
        assert_eq!(Theta(2, 2), 1.0);
    }

    #[test]
    fn small_grid_passes() {
        for k in 1..=3 {
            let r = verify_theta(k, 300).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn tight_grid_rejected() {
        assert!(verify_theta(3, 10).is_err());
        assert!(DecaySpec::new(2, 2).is_err());
    }
}
