use crate::error::{Error, Result};
use crate::group::{geodesic, GroupWord, Letter};
use crate::quasitree::{AxisFamily, CkGraph, QtCocycle, WConfig};
use crate::scalar::Scalar;
use crate::sparse::{coboundary_beta, SparseVec};

/// Tripod elements `g₀`, `g₁` for a family: `g₀·x₀` branches off the axis
/// and `g₁·x₀` continues along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripodSpec {
    pub g0: GroupWord,
    pub g1: GroupWord,
    /// Least Gromov product of the triple `x₀, g₀·x₀, g₁·x₀` in the quasi-tree.
    pub min_gromov: u64,
}

/// Gromov products of `x₀, g₀·x₀, g₁·x₀`, measured on the truncation spanned
/// by the tree hull of the three orbit vertices.
pub fn tripod_gromov(family: &AxisFamily, k: u32, g0: &GroupWord, g1: &GroupWord) -> Result<[u64; 3]> {
    let id = GroupWord::identity();
    let pts = [&id, g0, g1].map(|h| family.orbit_vertex(h));
    let mut hull: Vec<GroupWord> = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        hull.extend(geodesic(&pts[i], &pts[j]).vertices().iter().cloned());
    }
    hull.sort();
    hull.dedup();
    let graph = CkGraph::on_vertices(family, &hull, k, false)?;
    let ids = [
        graph.require(&family.orbit_point(&id))?,
        graph.require(&family.orbit_point(g0))?,
        graph.require(&family.orbit_point(g1))?,
    ];
    let rows: Vec<Vec<u64>> = ids.iter().map(|&s| graph.shortest_paths(&[s]).dist).collect();
    let d = |a: usize, b: usize| rows[a][ids[b]] as i64;
    let product = |x: usize, y: usize, z: usize| ((d(x, y) + d(x, z) - d(y, z)).max(0) / 2) as u64;
    Ok([product(0, 1, 2), product(1, 0, 2), product(2, 0, 1)])
}

impl TripodSpec {
    pub fn new(family: &AxisFamily, k: u32, g0: GroupWord, g1: GroupWord) -> Result<TripodSpec> {
        if g0.is_identity() || g1.is_identity() || g0 == g1 {
            return Err(Error::Precondition("tripod elements must be distinct and nontrivial".into()));
        }
        let min_gromov = *tripod_gromov(family, k, &g0, &g1)?.iter().min().expect("three products");
        Ok(TripodSpec { g0, g1, min_gromov })
    }

    /// `g₀ = u·c^s·ℓ·c^s·u⁻¹` with `ℓ` leaving the axis and `g₁ = f^{2s}`, for
    /// the least `s ≤ max_s` whose tripod has every Gromov product above
    /// `eps + 2δ`.
    pub fn select(family: &AxisFamily, config: &WConfig, delta: f64, max_s: usize) -> Result<TripodSpec> {
        let core = family.core();
        let u = family.orbit_vertex(&GroupWord::identity());
        let first = core.first().expect("nontrivial core");
        let last = core.last().expect("nontrivial core");
        let off = Letter::ALL
            .into_iter()
            .find(|&l| l != first && l != first.inverse() && l != last.inverse())
            .expect("free group of rank two");
        let need = config.eps as f64 + 2.0 * delta;
        for s in 1..=max_s {
            let cs = core.pow(s as i64);
            let mut g0 = u.mul(&cs);
            g0.push_reduced(off);
            let g0 = g0.mul(&cs).mul(&u.inverse());
            let g1 = family.base().pow(2 * s as i64);
            let spec = TripodSpec::new(family, config.k, g0, g1)?;
            if spec.min_gromov as f64 > need {
                return Ok(spec);
            }
        }
        Err(Error::Precondition(format!("no non-degenerate tripod with s ≤ {max_s}")))
    }

    /// `e = β(g₀) + β(g₁)` on orbit labels.
    pub fn vector<S: Scalar>(&self) -> SparseVec<S> {
        let id = GroupWord::identity();
        coboundary_beta(&self.g0, &id).add(&coboundary_beta(&self.g1, &id))
    }
}

pub fn tripod_cocycle<S: Scalar>(family: &AxisFamily, config: &WConfig, spec: &TripodSpec) -> Result<QtCocycle<S>> {
    QtCocycle::new(family.clone(), config.clone(), spec.vector())
}
