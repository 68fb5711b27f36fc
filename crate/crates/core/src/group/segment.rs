use super::word::GroupWord;

/// An oriented geodesic in the Cayley tree, stored as its vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedSegment {
    vertices: Vec<GroupWord>,
}

impl OrientedSegment {
    pub fn origin(&self) -> &GroupWord {
        &self.vertices[0]
    }

    pub fn terminus(&self) -> &GroupWord {
        self.vertices.last().expect("segments are nonempty")
    }

    pub fn vertices(&self) -> &[GroupWord] {
        &self.vertices
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn reversed(&self) -> OrientedSegment {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        OrientedSegment { vertices }
    }

    /// Position of `v` along the segment, if it lies on it.
    pub fn position_of(&self, v: &GroupWord) -> Option<usize> {
        let d0 = self.origin().distance(v);
        (d0 + v.distance(self.terminus()) == self.length()).then_some(d0)
    }
}

pub fn geodesic(x: &GroupWord, y: &GroupWord) -> OrientedSegment {
    let p = x.common_prefix_len(y);
    let mut vertices = Vec::with_capacity(x.len() + y.len() + 1 - 2 * p);
    let mut cur = x.clone();
    vertices.push(cur.clone());
    while cur.len() > p {
        cur.pop();
        vertices.push(cur.clone());
    }
    for i in p..y.len() {
        cur.push_reduced(y.letter(i));
        vertices.push(cur.clone());
    }
    OrientedSegment { vertices }
}

/// Centre of the tripod spanned by three vertices.
pub fn median(x: &GroupWord, y: &GroupWord, z: &GroupWord) -> GroupWord {
    // The deepest of the three pairwise meeting points.
    let (pxy, pxz, pyz) = (x.common_prefix_len(y), x.common_prefix_len(z), y.common_prefix_len(z));
    if pxy >= pxz && pxy >= pyz {
        x.prefix(pxy)
    } else if pxz >= pyz {
        x.prefix(pxz)
    } else {
        y.prefix(pyz)
    }
}

/// True iff `sub` lies on `sup` and both run in the same direction.
pub fn contains_oriented(sub: &OrientedSegment, sup: &OrientedSegment) -> bool {
    let (Some(i), Some(j)) = (sup.position_of(sub.origin()), sup.position_of(sub.terminus())) else {
        return false;
    };
    i <= j
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    fn seg(ws: &[&str]) -> Vec<GroupWord> {
        ws.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn geodesic_examples() {
        assert_eq!(geodesic(&w(""), &w("ab")).vertices(), seg(&["", "a", "ab"]));
        assert_eq!(geodesic(&w("a"), &w("b")).vertices(), seg(&["a", "", "b"]));
        assert_eq!(geodesic(&w("ab"), &w("ab")).vertices(), seg(&["ab"]));
    }

    #[test]
    fn median_examples() {
        assert_eq!(median(&w(""), &w("aa"), &w("ab")), w("a"));
        assert_eq!(median(&w("ab"), &w("ab"), &w("B")), w("ab"));
        assert_eq!(median(&w(""), &w("a"), &w("b")), w(""));
    }

    #[test]
    fn containment_examples() {
        let sup = geodesic(&w(""), &w("abab"));
        assert!(contains_oriented(&geodesic(&w(""), &w("ab")), &sup));
        assert!(!contains_oriented(&geodesic(&w("ab"), &w("")), &sup));
        assert!(!contains_oriented(&geodesic(&w("a"), &w("aab")), &sup));
    }
}
