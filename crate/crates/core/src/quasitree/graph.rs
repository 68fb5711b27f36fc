use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::axis::{Axis, AxisFamily, CkPoint};
use crate::error::{Error, Result};
use crate::group::{enumerate_ball, geodesic, GroupWord, DEFAULT_BALL_CAP};

pub const UNREACHABLE: u64 = u64::MAX;

/// A finite truncation of the quasi-tree of spaces `C_K`: each axis keeps a
/// window of positions, consecutive positions are joined by unit edges, and
/// axes with mutually small projections are joined by edges of length `K`.
#[derive(Clone, Debug)]
pub struct CkGraph {
    k: u32,
    axes: Vec<Axis>,
    windows: Vec<(i64, i64)>,
    offsets: Vec<usize>,
    index: HashMap<Axis, usize>,
    adj: Vec<Vec<(u32, u32)>>,
}

/// Vertex ids of a tree path in traversal order, used to skip pairs of axes
/// whose bridge contains a run of length ≥ K along some third axis.
struct PathOrder {
    intervals: Vec<(usize, usize)>,
    /// `blocked_prefix[i]` counts start indices `< i` from which some axis runs ≥ K.
    blocked_prefix: Vec<usize>,
    k: usize,
}

impl PathOrder {
    fn run_inside(&self, a: usize, b: usize) -> bool {
        b >= a + self.k && self.blocked_prefix[b - self.k + 1] > self.blocked_prefix[a]
    }
}

impl CkGraph {
    /// Builds the truncation on the given axes and position windows.
    fn build(axes_windows: Vec<(Axis, (i64, i64))>, k: u32, order: Option<&[GroupWord]>) -> Result<CkGraph> {
        if k == 0 {
            return Err(Error::Precondition("K must be positive".into()));
        }
        let mut axes_windows = axes_windows;
        axes_windows.sort();
        axes_windows.dedup_by(|a, b| a.0 == b.0);
        let axes: Vec<Axis> = axes_windows.iter().map(|x| x.0.clone()).collect();
        let windows: Vec<(i64, i64)> = axes_windows.iter().map(|x| x.1).collect();
        let mut offsets = Vec::with_capacity(axes.len() + 1);
        let mut total = 0usize;
        for w in &windows {
            offsets.push(total);
            total += (w.1 - w.0 + 1) as usize;
        }
        offsets.push(total);
        let index: HashMap<Axis, usize> = axes.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let mut adj = vec![Vec::new(); total];
        for (i, w) in windows.iter().enumerate() {
            for t in w.0..w.1 {
                let u = offsets[i] + (t - w.0) as usize;
                adj[u].push((u as u32 + 1, 1));
                adj[u + 1].push((u as u32, 1));
            }
        }

        // Which axes carry each tree vertex inside their window.
        let mut carriers: HashMap<GroupWord, Vec<usize>> = HashMap::new();
        for (i, ax) in axes.iter().enumerate() {
            for t in windows[i].0..=windows[i].1 {
                carriers.entry(ax.vertex(t)).or_default().push(i);
            }
        }

        let path = order.map(|vertices| {
            let at: HashMap<&GroupWord, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
            let intervals: Vec<(usize, usize)> = axes
                .iter()
                .enumerate()
                .map(|(i, ax)| {
                    let a = at[&ax.vertex(windows[i].0)];
                    let b = at[&ax.vertex(windows[i].1)];
                    (a.min(b), a.max(b))
                })
                .collect();
            let mut reach = vec![0usize; vertices.len()];
            for &(s, e) in &intervals {
                reach[s] = reach[s].max(e);
            }
            for i in 1..reach.len() {
                reach[i] = reach[i].max(reach[i - 1]);
            }
            let ku = k as usize;
            let mut blocked_prefix = vec![0usize; vertices.len() + 1];
            for i in 0..vertices.len() {
                blocked_prefix[i + 1] = blocked_prefix[i] + (reach[i] >= i + ku) as usize;
            }
            PathOrder { intervals, blocked_prefix, k: ku }
        });

        let mut pairs: Vec<(usize, usize)> = Vec::new();
        match &path {
            Some(po) => {
                let mut by_start: Vec<usize> = (0..axes.len()).collect();
                by_start.sort_by_key(|&i| (po.intervals[i].0, i));
                for (ix, &x) in by_start.iter().enumerate() {
                    let ex = po.intervals[x].1;
                    for &z in &by_start[ix + 1..] {
                        let sz = po.intervals[z].0;
                        if sz > ex && po.run_inside(ex, sz) {
                            break;
                        }
                        pairs.push((x.min(z), x.max(z)));
                    }
                }
            }
            None => {
                for x in 0..axes.len() {
                    for z in x + 1..axes.len() {
                        pairs.push((x, z));
                    }
                }
            }
        }

        let mut memo: HashMap<(usize, usize), (i64, i64)> = HashMap::new();
        let mut proj = |y: usize, x: usize| *memo.entry((y, x)).or_insert_with(|| axes[y].project_axis(&axes[x]));
        let spans: Vec<((i64, i64), (i64, i64))> = pairs.iter().map(|&(x, z)| (proj(x, z), proj(z, x))).collect();
        // Projections onto a third axis are 1-Lipschitz, so d_Y is at most the
        // bridge length plus two projection diameters.
        let xi = spans.iter().map(|(a, b)| (a.1 - a.0).max(b.1 - b.0)).max().unwrap_or(0);
        for (&(x, z), &(px, pz)) in pairs.iter().zip(&spans) {
            let (vx, vz) = (axes[x].vertex(px.0), axes[z].vertex(pz.0));
            if (vx.distance(&vz) as i64) + 2 * xi < k as i64 {
                push_cross(&mut adj, &offsets, &windows, (x, px), (z, pz), k);
                continue;
            }
            let bridge = geodesic(&vx, &vz);
            let mut forbidden = false;
            let mut seen: Vec<usize> = Vec::new();
            'outer: for v in bridge.vertices() {
                if let Some(list) = carriers.get(v) {
                    for &y in list {
                        if y == x || y == z || seen.contains(&y) {
                            continue;
                        }
                        seen.push(y);
                        let (a, b) = (proj(y, x), proj(y, z));
                        if a.1.max(b.1) - a.0.min(b.0) >= k as i64 {
                            forbidden = true;
                            break 'outer;
                        }
                    }
                }
            }
            if forbidden {
                continue;
            }
            push_cross(&mut adj, &offsets, &windows, (x, px), (z, pz), k);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(CkGraph { k, axes, windows, offsets, index, adj })
    }

    /// All family axes meeting the ball of `radius`, windowed to the ball.
    pub fn ball_truncation(family: &AxisFamily, radius: usize, k: u32) -> Result<CkGraph> {
        let ball = enumerate_ball(radius, DEFAULT_BALL_CAP)?;
        let mut seen: HashMap<Axis, ()> = HashMap::new();
        let mut axes_windows = Vec::new();
        for v in &ball {
            for ax in family.axes_through(v) {
                if seen.insert(ax.clone(), ()).is_none() {
                    let t = ax.project_vertex(&GroupWord::identity());
                    let d = ax.vertex(t).len() as i64;
                    let slack = radius as i64 - d;
                    axes_windows.push((ax, (t - slack, t + slack)));
                }
            }
        }
        CkGraph::build(axes_windows, k, None)
    }

    /// Axes meeting a subtree given by its vertex set, windowed to it.
    /// `path_order` must be set when the vertices form a geodesic listed in
    /// order; it only speeds up construction.
    pub fn on_vertices(family: &AxisFamily, vertices: &[GroupWord], k: u32, path_order: bool) -> Result<CkGraph> {
        let mut windows: HashMap<Axis, (i64, i64)> = HashMap::new();
        for v in vertices {
            for ax in family.axes_through(v) {
                let t = ax.position_of(v).expect("axis passes through vertex");
                windows.entry(ax).and_modify(|w| *w = (w.0.min(t), w.1.max(t))).or_insert((t, t));
            }
        }
        CkGraph::build(windows.into_iter().collect(), k, path_order.then_some(vertices))
    }

    /// Axes meeting the tree geodesic `[x, y]`.
    pub fn corridor(family: &AxisFamily, x: &GroupWord, y: &GroupWord, k: u32) -> Result<CkGraph> {
        CkGraph::on_vertices(family, geodesic(x, y).vertices(), k, true)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn window(&self, axis: usize) -> (i64, i64) {
        self.windows[axis]
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|l| l.len()).sum::<usize>() / 2
    }

    pub fn neighbours(&self, v: usize) -> &[(u32, u32)] {
        &self.adj[v]
    }

    pub fn axis_index(&self, axis: &Axis) -> Option<usize> {
        self.index.get(axis).copied()
    }

    pub fn vertex_id(&self, p: &CkPoint) -> Option<usize> {
        let i = self.axis_index(&p.axis)?;
        let w = self.windows[i];
        (w.0 <= p.pos && p.pos <= w.1).then(|| self.offsets[i] + (p.pos - w.0) as usize)
    }

    pub fn require(&self, p: &CkPoint) -> Result<usize> {
        self.vertex_id(p)
            .ok_or_else(|| Error::OutOfRange(format!("point {} on axis {:?} not in truncation", p.pos, p.axis)))
    }

    pub fn point(&self, id: usize) -> CkPoint {
        let i = self.offsets.partition_point(|&o| o <= id) - 1;
        CkPoint { axis: self.axes[i].clone(), pos: self.windows[i].0 + (id - self.offsets[i]) as i64 }
    }

    /// Multi-source shortest paths. Among equally short paths the predecessor
    /// with the least vertex id is kept, so extracted geodesics are canonical.
    pub fn shortest_paths(&self, sources: &[usize]) -> ShortestPaths {
        let n = self.adj.len();
        let mut dist = vec![UNREACHABLE; n];
        let mut pred = vec![u32::MAX; n];
        let mut heap = BinaryHeap::new();
        for &s in sources {
            dist[s] = 0;
            heap.push(Reverse((0u64, s as u32)));
        }
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u as usize] {
                continue;
            }
            for &(v, w) in &self.adj[u as usize] {
                let nd = d + w as u64;
                let vi = v as usize;
                if nd < dist[vi] {
                    dist[vi] = nd;
                    pred[vi] = u;
                    heap.push(Reverse((nd, v)));
                } else if nd == dist[vi] && u < pred[vi] {
                    pred[vi] = u;
                }
            }
        }
        ShortestPaths { dist, pred }
    }

    pub fn distance(&self, a: usize, b: usize) -> u64 {
        self.shortest_paths(&[a]).dist[b]
    }

    /// Four-point hyperbolicity, maximised over quadruples from a seeded sample
    /// of at most `sample` vertices.
    pub fn hyperbolicity(&self, sample: usize, seed: u64) -> f64 {
        let ids = self.sample_vertices(sample, seed);
        let rows: Vec<Vec<u64>> = ids.iter().map(|&s| self.shortest_paths(&[s]).dist).collect();
        let d = |i: usize, j: usize| rows[i][ids[j]];
        let m = ids.len();
        let mut best = 0u64;
        for a in 0..m {
            for b in a + 1..m {
                for c in b + 1..m {
                    for e in c + 1..m {
                        let mut s = [d(a, b) + d(c, e), d(a, c) + d(b, e), d(a, e) + d(b, c)];
                        if s.iter().any(|&x| x >= UNREACHABLE / 4) {
                            continue;
                        }
                        s.sort_unstable();
                        best = best.max(s[2] - s[1]);
                    }
                }
            }
        }
        best as f64 / 2.0
    }

    /// Over sampled pairs, the smallest `r` such that every path between the
    /// endpoints meets the `r`-ball around a midpoint of their geodesic.
    pub fn bottleneck(&self, pairs: usize, seed: u64) -> u64 {
        let ids = self.sample_vertices(2 * pairs, seed);
        let mut worst = 0;
        for pair in ids.chunks_exact(2) {
            let (x, y) = (pair[0], pair[1]);
            let sp = self.shortest_paths(&[x]);
            if sp.dist[y] == UNREACHABLE || sp.dist[y] < 2 {
                continue;
            }
            let path = sp.path_to(y);
            let half = sp.dist[y] / 2;
            let m = *path.iter().find(|&&v| sp.dist[v] >= half).expect("path reaches y");
            let from_m = self.shortest_paths(&[m]).dist;
            let mut r = 0;
            while r < sp.dist[y] {
                let blocked = |v: usize| from_m[v] <= r;
                if blocked(x) || blocked(y) || !self.connected_avoiding(x, y, &blocked) {
                    break;
                }
                r += 1;
            }
            worst = worst.max(r);
        }
        worst
    }

    fn connected_avoiding(&self, x: usize, y: usize, blocked: &dyn Fn(usize) -> bool) -> bool {
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![x];
        seen[x] = true;
        while let Some(u) = stack.pop() {
            if u == y {
                return true;
            }
            for &(v, _) in &self.adj[u] {
                let v = v as usize;
                if !seen[v] && !blocked(v) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        false
    }

    fn sample_vertices(&self, count: usize, seed: u64) -> Vec<usize> {
        let n = self.adj.len();
        if n <= count {
            return (0..n).collect();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| rng.gen_range(0..n)).collect()
    }

    /// Largest projection diameter between distinct axes of the truncation.
    pub fn projection_constant(&self) -> i64 {
        let mut best = 0;
        for (i, x) in self.axes.iter().enumerate() {
            for y in &self.axes[i + 1..] {
                let (lo, hi) = x.project_axis(y);
                best = best.max(hi - lo);
            }
        }
        best
    }
}

fn push_cross(
    adj: &mut [Vec<(u32, u32)>],
    offsets: &[usize],
    windows: &[(i64, i64)],
    (x, px): (usize, (i64, i64)),
    (z, pz): (usize, (i64, i64)),
    k: u32,
) {
    for s in px.0.max(windows[x].0)..=px.1.min(windows[x].1) {
        for t in pz.0.max(windows[z].0)..=pz.1.min(windows[z].1) {
            let u = offsets[x] + (s - windows[x].0) as usize;
            let v = offsets[z] + (t - windows[z].0) as usize;
            adj[u].push((v as u32, k));
            adj[v].push((u as u32, k));
        }
    }
}

#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub dist: Vec<u64>,
    pred: Vec<u32>,
}

impl ShortestPaths {
    /// Vertex ids from a source to `target`, inclusive.
    pub fn path_to(&self, target: usize) -> Vec<usize> {
        let mut out = vec![target];
        let mut cur = target;
        while self.dist[cur] != 0 {
            cur = self.pred[cur] as usize;
            out.push(cur);
        }
        out.reverse();
        out
    }
}

/// Largest projection diameter between distinct family axes meeting the ball.
pub fn measure_xi(family: &AxisFamily, radius: usize) -> Result<i64> {
    Ok(CkGraph::ball_truncation(family, radius, 1)?.projection_constant())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn ab_axis_is_isometric_in_the_truncation() {
        let fam = AxisFamily::new(w("ab")).unwrap();
        let g = CkGraph::ball_truncation(&fam, 6, 8).unwrap();
        let x0 = g.require(&fam.orbit_point(&w(""))).unwrap();
        let x1 = g.require(&fam.orbit_point(&w("abab"))).unwrap();
        assert_eq!(g.distance(x0, x1), 4);
    }

    #[test]
    fn distances_are_symmetric_with_triangle_inequality() {
        let fam = AxisFamily::new(w("a")).unwrap();
        let g = CkGraph::ball_truncation(&fam, 3, 2).unwrap();
        let ids = g.sample_vertices(12, 3);
        let rows: Vec<Vec<u64>> = ids.iter().map(|&s| g.shortest_paths(&[s]).dist).collect();
        for i in 0..ids.len() {
            for j in 0..ids.len() {
                assert_eq!(rows[i][ids[j]], rows[j][ids[i]]);
                for k in 0..ids.len() {
                    assert!(rows[i][ids[k]] <= rows[i][ids[j]] + rows[j][ids[k]]);
                }
            }
        }
    }

    #[test]
    fn cyclic_families_have_point_projections() {
        for f in ["a", "b", "ab", "aB"] {
            assert_eq!(measure_xi(&AxisFamily::new(w(f)).unwrap(), 4).unwrap(), 0, "{f}");
        }
    }

    #[test]
    fn point_round_trip() {
        let fam = AxisFamily::new(w("aB")).unwrap();
        let g = CkGraph::ball_truncation(&fam, 3, 3).unwrap();
        for id in 0..g.vertex_count() {
            assert_eq!(g.vertex_id(&g.point(id)), Some(id));
        }
    }
}
