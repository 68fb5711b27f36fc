//! Brooks-type counting quasi-cocycles `η_{w,e}` on F₂.

use crate::cocycle::QuasiCocycle;
use crate::error::{Error, Result};
use crate::group::{enumerate_ball, GroupWord};
use crate::par::{self, Exec};
use crate::scalar::Scalar;
use crate::sparse::SparseVec;

#[derive(Clone, Debug)]
pub struct BrooksSpec<S> {
    word: GroupWord,
    vector: SparseVec<S>,
}

impl<S: Scalar> BrooksSpec<S> {
    pub fn new(word: GroupWord, vector: SparseVec<S>) -> Result<Self> {
        if word.is_identity() {
            return Err(Error::Precondition("counting word must be nonempty".into()));
        }
        if !vector.is_zero_sum() {
            return Err(Error::NotZeroSum);
        }
        Ok(BrooksSpec { word, vector })
    }

    /// `w = ab`, `e = δ_id − δ_{a²}`.
    pub fn standard() -> Self {
        let a2: GroupWord = GroupWord::from_letters([crate::group::Letter::A; 2]);
        let e = SparseVec::delta(GroupWord::identity()).sub(&SparseVec::delta(a2));
        BrooksSpec::new("ab".parse().unwrap(), e).unwrap()
    }

    pub fn word(&self) -> &GroupWord {
        &self.word
    }

    pub fn vector(&self) -> &SparseVec<S> {
        &self.vector
    }
}

/// `h` with `[h, hw]` an oriented subsegment of `[id, g]`, and of `[g, id]`.
pub fn w_sets(w: &GroupWord, g: &GroupWord) -> (Vec<GroupWord>, Vec<GroupWord>) {
    let (n, m) = (g.len(), w.len());
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    if m == 0 || m > n {
        return (plus, minus);
    }
    for i in 0..=n - m {
        if (0..m).all(|k| g.letter(i + k) == w.letter(k)) {
            plus.push(g.prefix(i));
        }
    }
    // Walking [g, id] the step out of prefix_j is the inverse of letter j-1.
    for j in m..=n {
        if (0..m).all(|k| g.letter(j - 1 - k).inverse() == w.letter(k)) {
            minus.push(g.prefix(j));
        }
    }
    minus.sort();
    (plus, minus)
}

#[derive(Clone, Debug)]
pub struct Brooks<S> {
    spec: BrooksSpec<S>,
}

impl<S: Scalar> Brooks<S> {
    pub fn new(spec: BrooksSpec<S>) -> Self {
        Brooks { spec }
    }

    pub fn spec(&self) -> &BrooksSpec<S> {
        &self.spec
    }
}

pub fn eta<S: Scalar>(spec: &BrooksSpec<S>, g: &GroupWord) -> SparseVec<S> {
    let (plus, minus) = w_sets(&spec.word, g);
    let one = S::one();
    let minus_one = one.neg();
    SparseVec::from_terms(
        plus.iter()
            .map(|h| (h, &one))
            .chain(minus.iter().map(|h| (h, &minus_one)))
            .flat_map(|(h, c)| spec.vector.iter().map(move |(x, v)| (h.mul(x), v.mul(c)))),
    )
}

impl<S: Scalar> QuasiCocycle<S> for Brooks<S> {
    fn eval(&self, g: &GroupWord) -> SparseVec<S> {
        eta(&self.spec, g)
    }
}

#[derive(Clone, Debug)]
pub struct AntisymmetryReport {
    pub checked: usize,
    pub violations: usize,
    pub first_counterexample: Option<GroupWord>,
}

/// Checks `η(g⁻¹) = −g⁻¹·η(g)` on the whole ball.
pub fn antisymmetry_check<S: Scalar>(
    spec: &BrooksSpec<S>,
    radius: usize,
    cap: u64,
    exec: Exec,
) -> Result<AntisymmetryReport> {
    let ball = enumerate_ball(radius, cap)?;
    let ok = par::map(exec, &ball, |g| {
        let gi = g.inverse();
        eta(spec, &gi) == eta(spec, g).translate(&gi).neg()
    });
    let violations = ok.iter().filter(|b| !**b).count();
    Ok(AntisymmetryReport {
        checked: ball.len(),
        violations,
        first_counterexample: ok.iter().position(|b| !*b).map(|i| ball[i].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn w_set_examples() {
        let ab = w("ab");
        assert_eq!(w_sets(&ab, &w("abab")), (vec![w(""), w("ab")], vec![]));
        assert_eq!(w_sets(&ab, &w("")), (vec![], vec![]));
        assert_eq!(w_sets(&ab, &w("BABA")), (vec![], vec![w("BA"), w("BABA")]));
    }

    #[test]
    fn eta_examples() {
        let spec = BrooksSpec::<Rational>::standard();
        let v = eta(&spec, &w("abab"));
        let expect = SparseVec::from_terms([
            (w(""), Rational::one()),
            (w("aa"), Rational::one().neg()),
            (w("ab"), Rational::one()),
            (w("abaa"), Rational::one().neg()),
        ]);
        assert_eq!(v, expect);
        assert_eq!(v.norm(), Rational::from_i64(4));
        assert!(eta(&spec, &w("")).is_empty());
        assert!(eta(&spec, &w("a")).is_empty());
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(BrooksSpec::<Rational>::new(w(""), SparseVec::zero()).is_err());
        assert!(BrooksSpec::<Rational>::new(w("ab"), SparseVec::delta(w("a"))).is_err());
    }
}
