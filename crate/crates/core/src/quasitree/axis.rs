use crate::error::{Error, Result};
use crate::group::{GroupWord, Letter};

/// A bi-infinite geodesic `anchor·⟨…c⁻¹c⁻¹ | c c…⟩` in the Cayley tree, where
/// `c` is cyclically reduced and primitive. The anchor is the shortest
/// (then lex-least) element of the coset `anchor·⟨c⟩`, so equal axes compare
/// equal. Vertex positions are signed distances from the anchor along `c`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Axis {
    core: GroupWord,
    anchor: GroupWord,
}

/// Letter `i` of the ray `c c c …` (`forward`) or `c⁻¹ c⁻¹ …`.
#[inline]
fn ray_letter(core: &GroupWord, forward: bool, i: usize) -> Letter {
    let n = core.len();
    if forward {
        core.letter(i % n)
    } else {
        core.letter(n - 1 - i % n).inverse()
    }
}

fn ray_prefix(core: &GroupWord, t: i64) -> GroupWord {
    let forward = t >= 0;
    GroupWord::from_letters((0..t.unsigned_abs() as usize).map(|i| ray_letter(core, forward, i)))
}

fn common_with_ray(p: &GroupWord, core: &GroupWord, forward: bool) -> usize {
    (0..p.len()).take_while(|&i| p.letter(i) == ray_letter(core, forward, i)).count()
}

impl Axis {
    /// The axis `h·axis(core)`; `core` must be cyclically reduced and primitive.
    pub fn new(core: GroupWord, h: GroupWord) -> Axis {
        debug_assert!(!core.is_identity() && core.is_cyclically_reduced());
        let raw = Axis { core, anchor: h };
        let n = raw.core.len() as i64;
        let t = raw.project_vertex(&GroupWord::identity());
        let lo = t.div_euclid(n) * n;
        let a = raw.vertex(lo);
        let b = raw.vertex(lo + n);
        let anchor = if t - lo < lo + n - t || (t - lo == lo + n - t && a <= b) { a } else { b };
        Axis { core: raw.core, anchor }
    }

    /// The translation axis of `f`.
    pub fn of(f: &GroupWord) -> Result<Axis> {
        if f.is_identity() {
            return Err(Error::IdentityAxis);
        }
        let (u, c) = f.cyclic_reduction();
        Ok(Axis::new(c.primitive_root(), u))
    }

    pub fn core(&self) -> &GroupWord {
        &self.core
    }

    pub fn anchor(&self) -> &GroupWord {
        &self.anchor
    }

    pub fn period(&self) -> usize {
        self.core.len()
    }

    pub fn vertex(&self, t: i64) -> GroupWord {
        self.anchor.mul(&ray_prefix(&self.core, t))
    }

    /// Position of the nearest-point projection of a tree vertex.
    pub fn project_vertex(&self, x: &GroupWord) -> i64 {
        let p = self.anchor.inverse().mul(x);
        let fwd = common_with_ray(&p, &self.core, true);
        if fwd > 0 {
            fwd as i64
        } else {
            -(common_with_ray(&p, &self.core, false) as i64)
        }
    }

    /// Position of `x` if it lies on the axis.
    pub fn position_of(&self, x: &GroupWord) -> Option<i64> {
        let t = self.project_vertex(x);
        (self.vertex(t) == *x).then_some(t)
    }

    pub fn distance_to_vertex(&self, x: &GroupWord) -> usize {
        self.vertex(self.project_vertex(x)).distance(x)
    }

    /// Nearest-point projection of another axis: a position interval
    /// (a single point unless the axes overlap).
    pub fn project_axis(&self, other: &Axis) -> (i64, i64) {
        let far = (self.anchor.distance(&other.anchor) + self.period() + other.period() + 2) as i64;
        let p = self.project_vertex(&other.vertex(-far));
        let q = self.project_vertex(&other.vertex(far));
        (p.min(q), p.max(q))
    }

    /// Whether this axis is a translate of `axis(core)` containing `x` at a
    /// position divisible by the period.
    pub fn is_orbit_position(&self, t: i64) -> bool {
        t.rem_euclid(self.period() as i64) == 0
    }
}

/// The orbit of an axis under F₂ together with the basepoint `x₀` on it.
///
/// `base = u·c^p·u⁻¹` with `c` primitive and cyclically reduced; the
/// basepoint is the vertex `u` on `u·axis(c)`, and the orbit point `h·x₀` is
/// indexed by `h` (stabilizers are trivial).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisFamily {
    base: GroupWord,
    conj: GroupWord,
    conj_inv: GroupWord,
    core: GroupWord,
    power: usize,
}

impl AxisFamily {
    pub fn new(base: GroupWord) -> Result<AxisFamily> {
        if base.is_identity() {
            return Err(Error::IdentityAxis);
        }
        let (u, c) = base.cyclic_reduction();
        let core = c.primitive_root();
        let power = c.len() / core.len();
        Ok(AxisFamily { conj_inv: u.inverse(), base, conj: u, core, power })
    }

    pub fn base(&self) -> &GroupWord {
        &self.base
    }

    pub fn core(&self) -> &GroupWord {
        &self.core
    }

    /// Translation length of the base element.
    pub fn translation_length(&self) -> usize {
        self.core.len() * self.power
    }

    pub fn base_axis(&self) -> Axis {
        Axis::new(self.core.clone(), self.conj.clone())
    }

    /// Tree vertex of the orbit point `h·x₀`.
    pub fn orbit_vertex(&self, h: &GroupWord) -> GroupWord {
        h.mul(&self.conj)
    }

    /// Label `h` of the orbit point sitting at tree vertex `v`.
    pub fn orbit_label(&self, v: &GroupWord) -> GroupWord {
        v.mul(&self.conj_inv)
    }

    /// The axis carrying `h·x₀`.
    pub fn orbit_axis(&self, h: &GroupWord) -> Axis {
        Axis::new(self.core.clone(), self.orbit_vertex(h))
    }

    pub fn orbit_point(&self, h: &GroupWord) -> CkPoint {
        let axis = self.orbit_axis(h);
        let pos = axis.project_vertex(&self.orbit_vertex(h));
        CkPoint { axis, pos }
    }

    /// All axes of the family through a tree vertex.
    pub fn axes_through(&self, v: &GroupWord) -> Vec<Axis> {
        let n = self.core.len() as i64;
        let mut out: Vec<Axis> =
            (0..n).map(|t| Axis::new(self.core.clone(), v.mul(&ray_prefix(&self.core, t).inverse()))).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// A vertex of the quasi-tree of spaces: a position on one axis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CkPoint {
    pub axis: Axis,
    pub pos: i64,
}

impl CkPoint {
    pub fn vertex(&self) -> GroupWord {
        self.axis.vertex(self.pos)
    }
}

/// Projection of a quasi-tree point to `y`: itself when it lies on `y`,
/// otherwise the projection of its whole axis.
pub fn project_point(y: &Axis, p: &CkPoint) -> (i64, i64) {
    if p.axis == *y {
        (p.pos, p.pos)
    } else {
        y.project_axis(&p.axis)
    }
}

fn union_diameter(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.1.max(b.1) - a.0.min(b.0)
}

/// `d_Y(X, Z) = diam(π_Y(X) ∪ π_Y(Z))` for axes.
pub fn d_axes(y: &Axis, x: &Axis, z: &Axis) -> i64 {
    union_diameter(y.project_axis(x), y.project_axis(z))
}

/// `d_Y` between quasi-tree points.
pub fn d_points(y: &Axis, p: &CkPoint, q: &CkPoint) -> i64 {
    union_diameter(project_point(y, p), project_point(y, q))
}

/// `d_Y` between tree vertices (nearest-point projections).
pub fn d_vertices(y: &Axis, x: &GroupWord, z: &GroupWord) -> i64 {
    (y.project_vertex(x) - y.project_vertex(z)).abs()
}
