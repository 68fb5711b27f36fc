use std::collections::{BTreeSet, HashMap};

use super::axis::{d_points, Axis, AxisFamily, CkPoint};
use super::graph::{CkGraph, UNREACHABLE};
use crate::cocycle::QuasiCocycle;
use crate::error::{Error, Result};
use crate::group::{geodesic, GroupWord};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

/// Constants for the coarse counting sets: neighbourhood `eps`, initial
/// segment length `l`, cross-edge length `k`, and the power `m` with
/// `F = f^m` translating by at least `l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WConfig {
    pub eps: u32,
    pub l: u32,
    pub k: u32,
    pub m: usize,
    /// Orbit labels of the basepoints on the base axis; one suffices in F₂.
    pub basepoints: Vec<GroupWord>,
}

impl WConfig {
    /// Picks the least `m` with `m·τ(f) ≥ l`.
    pub fn new(family: &AxisFamily, eps: u32, l: u32, k: u32) -> Result<WConfig> {
        let tau = family.translation_length();
        let m = (l as usize).div_ceil(tau).max(1);
        WConfig { eps, l, k, m, basepoints: vec![GroupWord::identity()] }.validated(family)
    }

    pub fn with_power(mut self, family: &AxisFamily, m: usize) -> Result<WConfig> {
        self.m = m;
        self.validated(family)
    }

    /// `eps = ⌈2δ + 2⌉`, `l = 10(eps + 1)`, `k = max(4ξ′, 8)`, raised to
    /// `eps + 1` if needed so that neighbourhoods stay on one axis.
    pub fn defaults(family: &AxisFamily, delta: f64, xi: i64) -> Result<WConfig> {
        let eps = (2.0 * delta + 2.0).ceil() as u32;
        let k = (4 * xi.max(0) as u32).max(8).max(eps + 1);
        WConfig::new(family, eps, 10 * (eps + 1), k)
    }

    fn validated(self, family: &AxisFamily) -> Result<WConfig> {
        if self.l == 0 || self.k == 0 || self.m == 0 {
            return Err(Error::Precondition("L, K and M must be positive".into()));
        }
        if self.eps >= self.k {
            return Err(Error::Precondition(format!("neighbourhood eps = {} must be below K = {}", self.eps, self.k)));
        }
        if self.translation(family) < self.l as usize {
            return Err(Error::Precondition("F must translate by at least L".into()));
        }
        Ok(self)
    }

    pub fn translation(&self, family: &AxisFamily) -> usize {
        self.m * family.translation_length()
    }

    pub fn f_power(&self, family: &AxisFamily) -> GroupWord {
        family.base().pow(self.m as i64)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WSets {
    pub plus: Vec<GroupWord>,
    pub minus: Vec<GroupWord>,
    /// Length of the quasi-tree geodesic from `x₀` to `g·x₀`.
    pub d_ck: u64,
}

impl WSets {
    pub fn size(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_disjoint(&self) -> bool {
        self.plus.iter().all(|h| self.minus.binary_search(h).is_err())
    }
}

/// Classifies orbit points `h·x₀` against a quasi-tree geodesic given as its
/// list of points. `h` is kept when the first `min(L, τ(F))` steps of
/// `[h·x₀, h·F·x₀]` lie within `eps` of the geodesic and the geodesic points
/// on that segment (at least two) are visited in increasing (`W₊`) or
/// decreasing (`W₋`) position.
pub fn classify_path(family: &AxisFamily, config: &WConfig, path: &[CkPoint]) -> (Vec<GroupWord>, Vec<GroupWord>) {
    let eps = config.eps as i64;
    let span = config.translation(family) as i64;
    let initial = span.min(config.l as i64);
    let mut on_axis: HashMap<&Axis, Vec<i64>> = HashMap::new();
    for p in path {
        on_axis.entry(&p.axis).or_default().push(p.pos);
    }
    let mut candidates: BTreeSet<(&Axis, i64)> = BTreeSet::new();
    for p in path {
        for s in p.pos - eps..=p.pos + eps {
            if p.axis.is_orbit_position(s) {
                candidates.insert((&p.axis, s));
            }
        }
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (axis, q) in candidates {
        let pts = &on_axis[axis];
        let near = (q..=q + initial).all(|s| pts.iter().any(|t| (t - s).abs() <= eps));
        if !near {
            continue;
        }
        let seq: Vec<i64> = pts.iter().copied().filter(|t| q <= *t && *t <= q + span).collect();
        if seq.len() < 2 {
            continue;
        }
        let h = family.orbit_label(&axis.vertex(q));
        if seq.windows(2).all(|w| w[0] < w[1]) {
            plus.push(h);
        } else if seq.windows(2).all(|w| w[0] > w[1]) {
            minus.push(h);
        }
    }
    plus.sort();
    minus.sort();
    (plus, minus)
}

/// `W₊(g)`, `W₋(g)` using the canonical geodesic of a given truncation.
pub fn w_sets_in(graph: &CkGraph, family: &AxisFamily, config: &WConfig, g: &GroupWord) -> Result<WSets> {
    let src = graph.require(&family.orbit_point(&GroupWord::identity()))?;
    let dst = graph.require(&family.orbit_point(g))?;
    let sp = graph.shortest_paths(&[src]);
    if sp.dist[dst] == UNREACHABLE {
        return Err(Error::OutOfRange(format!("{g}·x₀ unreachable in truncation")));
    }
    let path: Vec<CkPoint> = sp.path_to(dst).into_iter().map(|v| graph.point(v)).collect();
    let (plus, minus) = classify_path(family, config, &path);
    Ok(WSets { plus, minus, d_ck: sp.dist[dst] })
}

/// `W₊(g)`, `W₋(g)` on the truncation spanned by the axes meeting the tree
/// geodesic from `x₀` to `g·x₀`.
pub fn w_sets_qt(family: &AxisFamily, config: &WConfig, g: &GroupWord) -> Result<WSets> {
    if g.is_identity() {
        return Ok(WSets::default());
    }
    let x = family.orbit_vertex(&GroupWord::identity());
    let y = family.orbit_vertex(g);
    let graph = CkGraph::corridor(family, &x, &y, config.k)?;
    w_sets_in(&graph, family, config, g)
}

/// `Σ_Y ⌊d_Y(x₀, g·x₀)⌋_L` summed over the axes of every family.
pub fn truncated_sum(families: &[AxisFamily], g: &GroupWord, l: u32) -> u64 {
    families.iter().map(|f| family_truncated_sum(f, g, l)).sum()
}

/// The sum over one family. Only axes meeting the tree geodesic
/// `[x₀, g·x₀]` can have `d_Y` above the projection constant.
pub fn family_truncated_sum(family: &AxisFamily, g: &GroupWord, l: u32) -> u64 {
    let p = family.orbit_point(&GroupWord::identity());
    let q = family.orbit_point(g);
    let mut axes: BTreeSet<Axis> = BTreeSet::new();
    for v in geodesic(&p.vertex(), &q.vertex()).vertices() {
        axes.extend(family.axes_through(v));
    }
    axes.insert(p.axis.clone());
    axes.insert(q.axis.clone());
    sum_over(axes.iter(), &p, &q, l)
}

/// [`truncated_sum`] over an explicit list of axes.
pub fn truncated_sum_over<'a, I: Iterator<Item = &'a Axis>>(
    family: &AxisFamily,
    axes: I,
    g: &GroupWord,
    l: u32,
) -> u64 {
    let p = family.orbit_point(&GroupWord::identity());
    let q = family.orbit_point(g);
    sum_over(axes, &p, &q, l)
}

fn sum_over<'a, I: Iterator<Item = &'a Axis>>(axes: I, p: &CkPoint, q: &CkPoint, l: u32) -> u64 {
    axes.map(|y| d_points(y, p, q)).filter(|&d| d >= l as i64).map(|d| d as u64).sum()
}

/// `α(g) = Σ_{h∈W₊(g)} h·e − Σ_{h∈W₋(g)} h·e`.
#[derive(Clone, Debug)]
pub struct QtCocycle<S> {
    family: AxisFamily,
    config: WConfig,
    vector: SparseVec<S>,
}

impl<S: Scalar> QtCocycle<S> {
    pub fn new(family: AxisFamily, config: WConfig, vector: SparseVec<S>) -> Result<Self> {
        if !vector.is_zero_sum() {
            return Err(Error::NotZeroSum);
        }
        Ok(QtCocycle { family, config, vector })
    }

    pub fn family(&self) -> &AxisFamily {
        &self.family
    }

    pub fn config(&self) -> &WConfig {
        &self.config
    }

    pub fn vector(&self) -> &SparseVec<S> {
        &self.vector
    }

    pub fn w_sets(&self, g: &GroupWord) -> WSets {
        w_sets_qt(&self.family, &self.config, g).expect("corridor truncation contains both endpoints")
    }

    pub fn eval_with(&self, w: &WSets) -> SparseVec<S> {
        let one = S::one();
        let minus_one = one.neg();
        SparseVec::from_terms(
            w.plus
                .iter()
                .map(|h| (h, &one))
                .chain(w.minus.iter().map(|h| (h, &minus_one)))
                .flat_map(|(h, c)| self.vector.iter().map(move |(x, v)| (h.mul(x), v.mul(c)))),
        )
    }
}

impl<S: Scalar> QuasiCocycle<S> for QtCocycle<S> {
    fn eval(&self, g: &GroupWord) -> SparseVec<S> {
        self.eval_with(&self.w_sets(g))
    }
}
