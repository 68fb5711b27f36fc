use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A generator of F₂ or its inverse. The discriminants fix the
/// lexicographic order a < A < b < B and `code ^ 1` is the inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Letter {
    A = 0,
    AInv = 1,
    B = 2,
    BInv = 3,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::B, Letter::BInv];

    #[inline]
    pub fn code(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn from_code(code: u8) -> Letter {
        Letter::ALL[(code & 3) as usize]
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter::from_code(self.code() ^ 1)
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::B => 'b',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'a' => Ok(Letter::A),
            'A' => Ok(Letter::AInv),
            'b' => Ok(Letter::B),
            'B' => Ok(Letter::BInv),
            other => Err(Error::InvalidLetter(other)),
        }
    }
}

const PER_CHUNK: usize = 32;

/// A freely reduced word in F₂, packed two bits per letter, most significant
/// bits first so that chunk comparison is lexicographic comparison.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    len: u32,
    chunks: SmallVec<[u64; 2]>,
}

#[inline]
fn shift(i: usize) -> u32 {
    (62 - 2 * (i % PER_CHUNK)) as u32
}

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord::default()
    }

    pub fn letter_word(l: Letter) -> GroupWord {
        let mut w = GroupWord::identity();
        w.push_raw(l);
        w
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> GroupWord {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push_reduced(l);
        }
        w
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn letter(&self, i: usize) -> Letter {
        debug_assert!(i < self.len());
        Letter::from_code((self.chunks[i / PER_CHUNK] >> shift(i)) as u8)
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = Letter> + ExactSizeIterator + '_ {
        (0..self.len()).map(move |i| self.letter(i))
    }

    pub fn first(&self) -> Option<Letter> {
        (self.len > 0).then(|| self.letter(0))
    }

    pub fn last(&self) -> Option<Letter> {
        (self.len > 0).then(|| self.letter(self.len() - 1))
    }

    fn push_raw(&mut self, l: Letter) {
        let i = self.len();
        if i.is_multiple_of(PER_CHUNK) {
            self.chunks.push(0);
        }
        self.chunks[i / PER_CHUNK] |= (l.code() as u64) << shift(i);
        self.len += 1;
    }

    /// Right-multiplies by one letter, cancelling if it undoes the last one.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.last() == Some(l.inverse()) {
            self.pop();
        } else {
            self.push_raw(l);
        }
    }

    pub fn pop(&mut self) -> Option<Letter> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let l = self.letter(n - 1);
        let i = n - 1;
        self.chunks[i / PER_CHUNK] &= !(3u64 << shift(i));
        self.len -= 1;
        if i.is_multiple_of(PER_CHUNK) {
            self.chunks.pop();
        }
        Some(l)
    }

    /// The prefix of length `n` (clamped to the word length).
    pub fn prefix(&self, n: usize) -> GroupWord {
        let n = n.min(self.len());
        let nchunks = n.div_ceil(PER_CHUNK);
        let mut chunks: SmallVec<[u64; 2]> = self.chunks[..nchunks].iter().copied().collect();
        if !n.is_multiple_of(PER_CHUNK) {
            let keep = 2 * (n % PER_CHUNK) as u32;
            chunks[nchunks - 1] &= !(u64::MAX >> keep);
        }
        GroupWord { len: n as u32, chunks }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut out = self.clone();
        for l in other.letters() {
            out.push_reduced(l);
        }
        out
    }

    pub fn inverse(&self) -> GroupWord {
        let mut out = GroupWord::identity();
        for l in self.letters().rev() {
            out.push_raw(l.inverse());
        }
        out
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Length of the longest common prefix.
    pub fn common_prefix_len(&self, other: &GroupWord) -> usize {
        let n = self.len().min(other.len());
        for (i, (x, y)) in self.chunks.iter().zip(other.chunks.iter()).enumerate() {
            let d = x ^ y;
            if d != 0 {
                return (i * PER_CHUNK + (d.leading_zeros() / 2) as usize).min(n);
            }
        }
        n
    }

    /// Tree distance between the vertices `self` and `other`.
    pub fn distance(&self, other: &GroupWord) -> usize {
        self.len() + other.len() - 2 * self.common_prefix_len(other)
    }

    /// Writes `self = u·c·u⁻¹` with `c` cyclically reduced and returns `(u, c)`.
    pub fn cyclic_reduction(&self) -> (GroupWord, GroupWord) {
        let n = self.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letter(n - 1 - k) == self.letter(k).inverse() {
            k += 1;
        }
        let u = self.prefix(k);
        let c = GroupWord::from_letters((k..n - k).map(|i| self.letter(i)));
        (u, c)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.len() < 2 || self.letter(0) != self.letter(self.len() - 1).inverse()
    }

    /// The shortest `r` with `self = r^k`.
    pub fn primitive_root(&self) -> GroupWord {
        let n = self.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.letter(i) == self.letter(i - d)) {
                return self.prefix(d);
            }
        }
        self.clone()
    }
}

impl Ord for GroupWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| self.chunks.cmp(&other.chunks))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupWord> {
        let mut w = GroupWord::identity();
        for c in s.trim().chars() {
            w.push_reduced(Letter::from_char(c)?);
        }
        Ok(w)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Multiply,
    Invert,
    Normalize,
}

/// Group arithmetic on raw, possibly unreduced letter sequences.
/// `Multiply` takes the product of all operands in order; `Invert` and
/// `Normalize` act on the first operand.
pub fn group_op(kind: GroupOp, operands: &[&[Letter]]) -> GroupWord {
    match kind {
        GroupOp::Multiply => GroupWord::from_letters(operands.iter().flat_map(|o| o.iter().copied())),
        GroupOp::Normalize => GroupWord::from_letters(operands.first().into_iter().flat_map(|o| o.iter().copied())),
        GroupOp::Invert => {
            GroupWord::from_letters(operands.first().into_iter().flat_map(|o| o.iter().rev().map(|l| l.inverse())))
        }
    }
}

/// Parses a letter sequence without reducing it.
pub fn raw_letters(s: &str) -> Result<Vec<Letter>> {
    s.trim().chars().map(Letter::from_char).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GroupWord {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let ab = raw_letters("ab").unwrap();
        let inv = raw_letters("BA").unwrap();
        assert!(group_op(GroupOp::Multiply, &[&ab, &inv]).is_identity());
        assert_eq!(group_op(GroupOp::Normalize, &[&raw_letters("aaAb").unwrap()]), w("ab"));
        assert_eq!(group_op(GroupOp::Invert, &[&raw_letters("abb").unwrap()]), w("BBA"));
    }

    #[test]
    fn packing_across_chunks() {
        let long = w(&"abAB".repeat(20));
        assert_eq!(long.len(), 80);
        assert_eq!(long.to_string(), "abAB".repeat(20));
        let mut x = long.clone();
        for _ in 0..80 {
            x.pop();
        }
        assert_eq!(x, GroupWord::identity());
        assert_eq!(long.prefix(33).to_string(), "abAB".repeat(20)[..33]);
        assert_eq!(long.mul(&long.inverse()), GroupWord::identity());
        assert_eq!(long.common_prefix_len(&long.prefix(40)), 40);
    }

    #[test]
    fn order_is_length_then_lex() {
        let mut v = [w("b"), w("aa"), w(""), w("A"), w("a"), w("B"), w("ab")];
        v.sort();
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["", "a", "A", "b", "B", "aa", "ab"]);
    }

    #[test]
    fn cyclic_reduction_and_root() {
        let (u, c) = w("abA").cyclic_reduction();
        assert_eq!((u, c), (w("a"), w("b")));
        let (u, c) = w("ab").cyclic_reduction();
        assert_eq!((u, c), (w(""), w("ab")));
        assert_eq!(w("ababab").primitive_root(), w("ab"));
        assert_eq!(w("aab").primitive_root(), w("aab"));
    }

    #[test]
    fn rejects_bad_letters() {
        assert!("abc".parse::<GroupWord>().is_err());
    }
}
