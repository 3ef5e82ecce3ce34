//! Color sets of faces in a balanced complex.
//!
//! Colors are `1..=d`; a [`Support`] is a subset of them stored as a bit
//! pattern with color `r` at bit `r - 1`. The cap of 16 colors keeps every
//! per-facet table at `2^d` entries.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported number of colors.
pub const MAX_COLORS: usize = 16;

/// A single balancing color, `1 ≤ value ≤ d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(u8);

impl Color {
    pub fn new(value: usize) -> Option<Color> {
        (1..=MAX_COLORS).contains(&value).then_some(Color(value as u8))
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }
}

/// A set of colors.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Support(u16);

impl Support {
    pub const EMPTY: Support = Support(0);

    /// The full color set `{1..=d}`.
    pub fn full(d: usize) -> Support {
        assert!(d <= MAX_COLORS, "at most {MAX_COLORS} colors are supported");
        Support(((1u32 << d) - 1) as u16)
    }

    pub fn from_bits(bits: u16) -> Support {
        Support(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// Builds a support from colors; panics on a color outside `1..=16`.
    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Support {
        let mut bits = 0u16;
        for c in colors {
            assert!((1..=MAX_COLORS).contains(&c), "color {c} out of range");
            bits |= 1 << (c - 1);
        }
        Support(bits)
    }

    /// The run `{lo..=hi}`; empty when `lo > hi`.
    pub fn range(lo: usize, hi: usize) -> Support {
        Support::from_colors(lo.max(1)..=hi)
    }

    pub fn contains(self, color: usize) -> bool {
        color >= 1 && color <= MAX_COLORS && self.0 & (1 << (color - 1)) != 0
    }

    pub fn insert(self, color: usize) -> Support {
        Support(self.0 | (1 << (color - 1)))
    }

    pub fn remove(self, color: usize) -> Support {
        Support(self.0 & !(1 << (color - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Support) -> Support {
        Support(self.0 | other.0)
    }

    pub fn intersection(self, other: Support) -> Support {
        Support(self.0 & other.0)
    }

    pub fn difference(self, other: Support) -> Support {
        Support(self.0 & !other.0)
    }

    /// Colors in increasing order.
    pub fn colors(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=MAX_COLORS).filter(move |&c| bits & (1 << (c - 1)) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.colors().collect()
    }

    /// Sum of the colors, the degree this support contributes to a
    /// rank-graded series.
    pub fn rank_sum(self) -> usize {
        self.colors().sum()
    }

    /// Largest `r` such that `{1..=r}` is contained in this support.
    pub fn initial_run(self) -> usize {
        (!self.0).trailing_zeros() as usize
    }

    /// Whether the colors form a single run of consecutive integers.
    /// The empty set counts as connected.
    pub fn is_connected(self) -> bool {
        if self.0 == 0 {
            return true;
        }
        let shifted = self.0 >> self.0.trailing_zeros();
        shifted & shifted.wrapping_add(1) == 0
    }

    /// All subsets of `self`, in increasing bit order.
    pub fn subsets(self) -> impl Iterator<Item = Support> {
        let mask = self.0;
        let mut next = Some(0u16);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some(cur.wrapping_sub(mask) & mask)
            };
            Some(Support(cur))
        })
    }

    /// All supersets of `self` inside `within`.
    pub fn supersets_within(self, within: Support) -> impl Iterator<Item = Support> {
        let base = self.0;
        within.difference(self).subsets().map(move |s| Support(s.0 | base))
    }

    /// Maps colors through `f`, e.g. for the rank reversal `i ↦ n-1-i`.
    pub fn map_colors(self, f: impl Fn(usize) -> usize) -> Support {
        Support::from_colors(self.colors().map(f))
    }

    /// Dash-joined color list used in CSV output, `"-"` for the empty set.
    pub fn dashed(self) -> String {
        if self.is_empty() {
            return "-".to_string();
        }
        self.colors().map(|c| c.to_string()).collect::<Vec<_>>().join("-")
    }
}

impl fmt::Debug for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.colors().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Support {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_vec().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Support {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let colors = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = colors.iter().find(|c| !(1..=MAX_COLORS).contains(*c)) {
            return Err(serde::de::Error::custom(format!("color {bad} out of range")));
        }
        Ok(Support::from_colors(colors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s = Support::from_colors([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(Support::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn supersets_within_full() {
        let d = Support::from_colors([2]);
        let sups: Vec<_> = d.supersets_within(Support::full(3)).collect();
        assert_eq!(sups.len(), 4);
        assert!(sups.iter().all(|t| d.is_subset(*t)));
    }

    #[test]
    fn runs_and_connectivity() {
        assert_eq!(Support::from_colors([1, 2, 4]).initial_run(), 2);
        assert_eq!(Support::from_colors([2, 3]).initial_run(), 0);
        assert!(Support::from_colors([2, 3, 4]).is_connected());
        assert!(!Support::from_colors([2, 4]).is_connected());
        assert!(Support::EMPTY.is_connected());
    }

    #[test]
    fn dashed_and_display() {
        assert_eq!(Support::from_colors([1, 3, 5]).dashed(), "1-3-5");
        assert_eq!(Support::EMPTY.dashed(), "-");
        assert_eq!(Support::from_colors([4, 5]).to_string(), "{4,5}");
    }
}
