use super::theta::{DecaySpec, PropertyCheck};
use crate::error::{Error, Result};
use crate::group::GroupWord;
use crate::par::{self, Exec};
use crate::quasitree::{w_sets_qt, AxisFamily, QtCocycle, WConfig, WSets};
use crate::scalar::{Scalar, FLOAT_TOL};
use crate::sparse::SparseVec;

/// `e = Σ_{j ≤ J_max} Θ(j)(δ_{f^j·x₀} − δ_{f^{−j}·x₀})` on orbit labels.
pub fn decay_vector<S: Scalar>(family: &AxisFamily, spec: &DecaySpec) -> SparseVec<S> {
    let f = family.base();
    let terms = spec.weights().into_iter().enumerate().flat_map(|(i, w)| {
        let j = i as i64 + 1;
        let w = S::from_f64(w).expect("finite weight");
        [(f.pow(j), w.clone()), (f.pow(-j), w.neg())]
    });
    SparseVec::from_terms(terms)
}

pub fn decay_cocycle<S: Scalar>(family: &AxisFamily, config: &WConfig, spec: &DecaySpec) -> Result<QtCocycle<S>> {
    QtCocycle::new(family.clone(), config.clone(), decay_vector(family, spec))
}

/// `Σ_{m=1}^{N} Σ_{j=m}^{J_max} Θ(j) ≥ θ(N) − N·tail` for `N ≤ n_max`.
pub fn double_sum_check(spec: &DecaySpec, n_max: u64) -> PropertyCheck {
    let weights = spec.weights();
    let mut tails = vec![0.0; weights.len() + 2];
    for j in (1..=weights.len()).rev() {
        tails[j] = tails[j + 1] + weights[j - 1];
    }
    let tail = spec.tail();
    let mut check =
        PropertyCheck { name: "truncated_double_sum", checked: 0, violations: 0, first_counterexample: None };
    let mut double = 0.0;
    for n in 1..=n_max {
        double += tails.get(n as usize).copied().unwrap_or(0.0);
        let rhs = spec.theta(n) - n as f64 * tail;
        check.checked += 1;
        if double + FLOAT_TOL * rhs.abs().max(1.0) < rhs {
            check.violations += 1;
            check.first_counterexample.get_or_insert_with(|| format!("N = {n}: {double} < {rhs}"));
        }
    }
    check
}

/// `(n, ‖α(Fⁿ)‖)` for `1 ≤ n ≤ n_max`, evaluated through the sparse vectors.
pub fn growth_along_axis(alpha: &QtCocycle<f64>, n_max: u64, exec: Exec) -> Vec<(u64, f64)> {
    let f = alpha.config().f_power(alpha.family());
    let ns: Vec<u64> = (1..=n_max).collect();
    par::map(exec, &ns, |&n| {
        let g: GroupWord = f.pow(n as i64);
        (n, alpha.eval_with(&alpha.w_sets(&g)).norm())
    })
}

/// The exponent `i` with `h = f^i`, if there is one.
fn axis_exponent(family: &AxisFamily, h: &GroupWord) -> Option<i64> {
    let axis = family.base_axis();
    let origin = axis.position_of(&family.orbit_vertex(&GroupWord::identity()))?;
    let t = axis.position_of(&family.orbit_vertex(h))? - origin;
    let tau = family.translation_length() as i64;
    (t % tau == 0).then_some(t / tau)
}

/// `‖α(g)‖` for the decay cocycle computed on exponents along the axis,
/// without building the support words. `None` when some element of
/// `W₊(g) ∪ W₋(g)` is not a power of `f`.
pub fn axis_decay_norm(family: &AxisFamily, weights: &[f64], ws: &WSets) -> Option<f64> {
    let mut shifts: Vec<(i64, f64)> = Vec::with_capacity(ws.size());
    for (set, sign) in [(&ws.plus, 1.0), (&ws.minus, -1.0)] {
        for h in set {
            shifts.push((axis_exponent(family, h)?, sign));
        }
    }
    if shifts.is_empty() {
        return Some(0.0);
    }
    let j = weights.len() as i64;
    let lo = shifts.iter().map(|x| x.0).min().expect("nonempty") - j;
    let hi = shifts.iter().map(|x| x.0).max().expect("nonempty") + j;
    let mut values = vec![0.0; (hi - lo + 1) as usize];
    for (i, sign) in shifts {
        let centre = (i - lo) as usize;
        for (d, w) in weights.iter().enumerate() {
            values[centre + d + 1] += sign * w;
            values[centre - d - 1] -= sign * w;
        }
    }
    Some(values.iter().map(|v| v.abs()).sum())
}

/// `(n, ‖α(Fⁿ)‖)` for the decay cocycle of `spec`, through [`axis_decay_norm`].
pub fn decay_growth(
    family: &AxisFamily,
    config: &WConfig,
    spec: &DecaySpec,
    n_max: u64,
    exec: Exec,
) -> Result<Vec<(u64, f64)>> {
    let weights = spec.weights();
    let f = config.f_power(family);
    let ns: Vec<u64> = (1..=n_max).collect();
    par::map(exec, &ns, |&n| {
        let ws = w_sets_qt(family, config, &f.pow(n as i64))?;
        let norm = axis_decay_norm(family, &weights, &ws)
            .ok_or_else(|| Error::Precondition(format!("counting sets of F^{n} leave the axis")))?;
        Ok((n, norm))
    })
    .into_iter()
    .collect()
}

/// Least `C` with `‖α(Fⁿ)‖ ≥ θ(n)/C` for `lo ≤ n ≤ hi`; infinite if some norm vanishes.
pub fn fit_growth_constant(rows: &[(u64, f64)], k: u32, lo: u64, hi: u64) -> f64 {
    rows.iter()
        .filter(|(n, _)| lo <= *n && *n <= hi)
        .map(|&(n, norm)| if norm > 0.0 { super::theta::theta(k, n) / norm } else { f64::INFINITY })
        .fold(0.0, f64::max)
}
