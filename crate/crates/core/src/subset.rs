//! Ground sets and bitmask subsets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 16;

/// A subset of the ground set, bit `i` set iff element `i` is present.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetId(pub u32);

impl SubsetId {
    pub const EMPTY: SubsetId = SubsetId(0);

    pub fn singleton(i: usize) -> Self {
        SubsetId(1 << i)
    }

    pub fn full(n: usize) -> Self {
        SubsetId(((1u64 << n) - 1) as u32)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        SubsetId(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Self {
        SubsetId(self.0 & !(1 << i))
    }

    #[inline]
    pub fn union(self, other: SubsetId) -> Self {
        SubsetId(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: SubsetId) -> Self {
        SubsetId(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: SubsetId) -> Self {
        SubsetId(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetId) -> bool {
        self.0 & !other.0 == 0
    }

    /// Whether neither set contains the other.
    #[inline]
    pub fn is_incomparable(self, other: SubsetId) -> bool {
        !self.is_subset_of(other) && !other.is_subset_of(self)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = SubsetId> {
        let set = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == set { None } else { Some((cur.wrapping_sub(set)) & set) };
            Some(SubsetId(cur))
        })
    }

    /// Sort key for the (cardinality, bitmask) order used in all reports.
    #[inline]
    pub fn order_key(self) -> (u32, u32) {
        (self.0.count_ones(), self.0)
    }
}

impl fmt::Debug for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("{}");
        }
        for i in self.elements() {
            if i < 26 {
                write!(f, "{}", (b'a' + i as u8) as char)?;
            } else {
                write!(f, "#{i}")?;
            }
        }
        Ok(())
    }
}

/// A finite ground set with ordered, distinct element labels.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    /// Ground set of `n` elements labelled `a`, `b`, `c`, ...
    pub fn new(n: usize) -> Result<Self> {
        Self::check_size(n)?;
        Ok(GroundSet { labels: (0..n).map(default_label).collect() })
    }

    pub fn with_labels<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        Self::check_size(labels.len())?;
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || labels[..i].contains(l) {
                return Err(Error::InvalidLabels(labels.join(",")));
            }
        }
        Ok(GroundSet { labels })
    }

    fn check_size(n: usize) -> Result<()> {
        if n == 0 {
            Err(Error::EmptyGroundSet)
        } else if n > MAX_ELEMENTS {
            Err(Error::GroundSetTooLarge(n))
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> SubsetId {
        SubsetId::full(self.len())
    }

    /// Number of subsets, `2^n`.
    pub fn subset_count(&self) -> usize {
        1 << self.len()
    }

    /// All subsets in bitmask order, including the empty set.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetId> {
        (0..self.subset_count() as u32).map(SubsetId)
    }

    /// Nonempty subsets ordered by cardinality, then by position of the
    /// elements (so `ab, ac, ad, bc, ...` for default labels).
    pub fn display_order(&self) -> Vec<SubsetId> {
        display_order(self.len())
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Renders a subset by concatenating labels; the empty set is `{}`.
    pub fn format(&self, s: SubsetId) -> String {
        if s.is_empty() {
            return "{}".to_string();
        }
        let single_chars = self.labels.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = s.elements().map(|i| self.labels[i].as_str()).collect();
        if single_chars {
            parts.concat()
        } else {
            format!("{{{}}}", parts.join(","))
        }
    }

    /// Parses a subset written as concatenated single-character labels, or
    /// `{}` for the empty set.
    pub fn parse_subset(&self, text: &str) -> Result<SubsetId> {
        let text = text.trim();
        if text == "{}" || text.is_empty() || text == "∅" {
            return Ok(SubsetId::EMPTY);
        }
        let body = text.strip_prefix('{').and_then(|t| t.strip_suffix('}'));
        let mut set = SubsetId::EMPTY;
        let tokens: Vec<String> = match body {
            Some(b) => b.split(',').map(|t| t.trim().to_string()).collect(),
            None => text.chars().map(|c| c.to_string()).collect(),
        };
        for tok in tokens {
            let i = self.element(&tok).ok_or_else(|| Error::Parse(format!("unknown element `{tok}` in `{text}`")))?;
            set = set.with(i);
        }
        Ok(set)
    }
}

pub(crate) fn default_label(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Nonempty subsets of an `n`-element set in display order.
pub fn display_order(n: usize) -> Vec<SubsetId> {
    let mut v: Vec<SubsetId> = (1..1u32 << n).map(SubsetId).collect();
    v.sort_by_key(|s| {
        let mut key = [u8::MAX; MAX_ELEMENTS];
        for (k, i) in s.elements().enumerate() {
            key[k] = i as u8;
        }
        (s.len(), key)
    });
    v
}

/// A family of subsets of an `n`-element ground set, stored as a bitmap over
/// all `2^n` subsets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetFamily {
    n: usize,
    words: Vec<u64>,
}

impl SubsetFamily {
    pub fn empty(n: usize) -> Self {
        SubsetFamily { n, words: vec![0; (1usize << n).div_ceil(64)] }
    }

    pub fn from_iter(n: usize, sets: impl IntoIterator<Item = SubsetId>) -> Self {
        let mut fam = Self::empty(n);
        for s in sets {
            fam.insert(s);
        }
        fam
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, s: SubsetId) -> bool {
        let i = s.index();
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `s`, returning whether it was new.
    #[inline]
    pub fn insert(&mut self, s: SubsetId) -> bool {
        let i = s.index();
        let had = self.contains(s);
        self.words[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subfamily_of(&self, other: &SubsetFamily) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Members in bitmask order.
    pub fn iter(&self) -> impl Iterator<Item = SubsetId> + '_ {
        (0..1u32 << self.n).map(SubsetId).filter(|&s| self.contains(s))
    }

    /// Members sorted by (cardinality, bitmask).
    pub fn sorted(&self) -> Vec<SubsetId> {
        let mut v: Vec<SubsetId> = self.iter().collect();
        v.sort_by_key(|s| s.order_key());
        v
    }

    /// Intersection of all members; the full set for an empty family.
    pub fn meet(&self) -> SubsetId {
        self.iter().fold(SubsetId::full(self.n), SubsetId::intersection)
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sorted()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_order_matches_table_convention() {
        let order = display_order(4);
        let g = GroundSet::new(4).unwrap();
        let names: Vec<String> = order.iter().map(|&s| g.format(s)).collect();
        assert_eq!(names, ["a", "b", "c", "d", "ab", "ac", "ad", "bc", "bd", "cd", "abc", "abd", "acd", "bcd", "abcd"]);
    }

    #[test]
    fn subsets_enumerates_every_submask() {
        let s = SubsetId(0b1011);
        let subs: Vec<u32> = s.subsets().map(|x| x.0).collect();
        assert_eq!(subs, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(SubsetId::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn ground_set_bounds() {
        assert!(matches!(GroundSet::new(0), Err(Error::EmptyGroundSet)));
        assert!(GroundSet::new(16).is_ok());
        assert!(matches!(GroundSet::new(17), Err(Error::GroundSetTooLarge(17))));
        assert!(GroundSet::with_labels(["a", "a"]).is_err());
    }

    #[test]
    fn parse_and_format_round_trip() {
        let g = GroundSet::new(5).unwrap();
        for s in g.subsets() {
            assert_eq!(g.parse_subset(&g.format(s)).unwrap(), s);
        }
        assert!(g.parse_subset("az").is_err());
    }

    #[test]
    fn family_meet_and_order() {
        let fam = SubsetFamily::from_iter(3, [SubsetId(0b011), SubsetId(0b110), SubsetId(0b111)]);
        assert_eq!(fam.len(), 3);
        assert_eq!(fam.meet(), SubsetId(0b010));
        assert_eq!(fam.sorted(), vec![SubsetId(0b011), SubsetId(0b110), SubsetId(0b111)]);
    }
}
