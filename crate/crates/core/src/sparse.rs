//! Finitely supported vectors indexed by group elements.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::GroupWord;
use crate::scalar::Scalar;

/// A finitely supported vector; entries sorted by index with no stored zeros.
///
/// Orbit points `h·x` of a basepoint with trivial stabilizer are indexed by
/// `h` itself, so one index type covers every vector in the crate.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<S> {
    entries: Vec<(GroupWord, S)>,
}

impl<S: Scalar> Default for SparseVec<S> {
    fn default() -> Self {
        SparseVec::zero()
    }
}

impl<S: Scalar> SparseVec<S> {
    pub fn zero() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn delta(index: GroupWord) -> Self {
        SparseVec { entries: vec![(index, S::one())] }
    }

    /// Sums the given terms; repeated indices accumulate in input order.
    pub fn from_terms<I: IntoIterator<Item = (GroupWord, S)>>(terms: I) -> Self {
        let mut raw: Vec<(GroupWord, S)> = terms.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut entries: Vec<(GroupWord, S)> = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            match entries.last_mut() {
                Some((lk, lv)) if *lk == k => lv.add_assign(&v),
                _ => entries.push((k, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn entries(&self) -> &[(GroupWord, S)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupWord, &S)> {
        self.entries.iter().map(|(k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: &GroupWord) -> S {
        match self.entries.binary_search_by(|(k, _)| k.cmp(index)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn norm(&self) -> S {
        let mut n = S::zero();
        for (_, v) in &self.entries {
            n.add_assign(&v.abs());
        }
        n
    }

    pub fn sum(&self) -> S {
        let mut n = S::zero();
        for (_, v) in &self.entries {
            n.add_assign(v);
        }
        n
    }

    /// Membership in the zero-sum subspace; float mode allows [`crate::scalar::FLOAT_TOL`].
    pub fn is_zero_sum(&self) -> bool {
        self.sum().approx_eq(&S::zero(), &self.norm())
    }

    /// Largest word length in the support.
    pub fn support_radius(&self) -> usize {
        self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(k, v)| (k.clone(), v.neg())).collect() }
    }

    /// `self + c·other` by a sorted merge.
    pub fn add_scaled(&self, c: &S, other: &Self) -> Self {
        if c.is_zero() || other.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0.clone(), b[j].1.mul(c)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = a[i].1.add(&b[j].1.mul(c));
                    if !v.is_zero() {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&S::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&S::one().neg(), other)
    }

    /// The permutation representation: the entry at `x` moves to `g·x`.
    pub fn translate(&self, g: &GroupWord) -> Self {
        if g.is_identity() {
            return self.clone();
        }
        let mut entries: Vec<(GroupWord, S)> = self.entries.iter().map(|(k, v)| (g.mul(k), v.clone())).collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        SparseVec { entries }
    }

    /// One `index<TAB>value` line per entry, in index order.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            let _ = writeln!(s, "{k}\t{}", v.to_text());
        }
        s
    }

    pub fn deserialize(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (k, v) = line.split_once('\t').ok_or_else(|| Error::Parse(format!("line {}: missing tab", n + 1)))?;
            terms.push((k.parse::<GroupWord>()?, S::parse_text(v)?));
        }
        Ok(SparseVec::from_terms(terms))
    }
}

/// Entrywise linear combination.
pub fn linear_combine<S: Scalar>(terms: &[(S, &SparseVec<S>)]) -> SparseVec<S> {
    SparseVec::from_terms(
        terms.iter().filter(|(c, _)| !c.is_zero()).flat_map(|(c, v)| v.iter().map(move |(k, x)| (k.clone(), x.mul(c)))),
    )
}

/// The coboundary `β(g) = δ_{x₀} − δ_{g·x₀}`.
pub fn coboundary_beta<S: Scalar>(g: &GroupWord, basepoint: &GroupWord) -> SparseVec<S> {
    SparseVec::from_terms([(basepoint.clone(), S::one()), (g.mul(basepoint), S::one().neg())])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoDirection {
    /// Zero-sum vectors to vectors supported off the basepoint.
    Forward,
    Inverse,
}

/// The isomorphism between the zero-sum subspace and the vectors supported
/// off `basepoint`.
pub fn iso_pair<S: Scalar>(dir: IsoDirection, v: &SparseVec<S>, basepoint: &GroupWord) -> Result<SparseVec<S>> {
    match dir {
        IsoDirection::Forward => {
            if !v.is_zero_sum() {
                return Err(Error::NotZeroSum);
            }
            Ok(SparseVec { entries: v.entries.iter().filter(|(k, _)| k != basepoint).cloned().collect() })
        }
        IsoDirection::Inverse => {
            if !v.get(basepoint).is_zero() {
                return Err(Error::SupportsBasepoint(basepoint.to_string()));
            }
            let restored = SparseVec::delta(basepoint.clone()).scale(&v.sum().neg());
            Ok(v.add(&restored))
        }
    }
}
