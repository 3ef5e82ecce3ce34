//! Pure balanced boolean cell complexes given by facets and a face-key function.
//!
//! A cell is named by a pair `(facet, support)`; two pairs denote the same
//! cell exactly when the key function gives them equal [`CellKey`]s. Every
//! topological question (intersections, links, boundaries) is answered from
//! the memoized key table, so the face poset is never materialized.

mod crossing;
mod exact_cover;
mod homology;
mod partitioning;
mod shelling;

pub use crossing::{check_crossing, CrossingVerdict, CrossingWitness};
pub use homology::{betti_gf2, reduced_betti_gf2, Gf2ChainComplex};
pub use partitioning::{
    descent_assignment, partitioning_exists, verify_partitioning, PartitionAssignment,
    PartitioningVerdict,
};
pub use shelling::{
    shelling_exists, topological_descents, verify_shelling, OrderIndex, ShellingCertificate,
    ShellingStep, ShellingVerdict,
};

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::ComplexError;
use crate::support::{Support, MAX_COLORS};

/// Canonical byte code of a cell together with its support.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellKey {
    pub code: Vec<u8>,
    pub support: Support,
}

impl CellKey {
    pub fn new(code: Vec<u8>, support: Support) -> CellKey {
        CellKey { code, support }
    }

    /// The key shared by every facet at the empty support.
    pub fn empty() -> CellKey {
        CellKey {
            code: Vec::new(),
            support: Support::EMPTY,
        }
    }
}

impl fmt::Debug for CellKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellKey({}, ", self.support)?;
        for b in &self.code {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of an exhaustive search with a node budget.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome<T> {
    Found(T),
    NoneExists { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

/// Default node budget for the backtracking searches.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// A pure balanced boolean cell complex with `d` colors.
///
/// Cell ids are dense `u32`s; the table stores the id of `(facet, S)` at
/// `facet * 2^d + S`.
#[derive(Clone)]
pub struct BalancedComplex {
    colors: usize,
    names: Vec<String>,
    table: Vec<u32>,
    keys: Vec<CellKey>,
    reps: Vec<(u32, Support)>,
}

impl fmt::Debug for BalancedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BalancedComplex")
            .field("colors", &self.colors)
            .field("facets", &self.names.len())
            .field("cells", &self.keys.len())
            .finish()
    }
}

/// Builds a complex from facets and a key function.
///
/// The key function is never called on the empty support; that cell gets
/// [`CellKey::empty`]. Facets whose full-support keys coincide are rejected.
pub fn build_complex<F, N, K>(
    colors: usize,
    facets: &[F],
    name: N,
    keyfn: K,
) -> Result<BalancedComplex, ComplexError>
where
    F: Sync,
    N: Fn(&F) -> String,
    K: Fn(&F, Support) -> CellKey + Sync,
{
    if colors > MAX_COLORS {
        return Err(ComplexError::TooManyColors(colors));
    }
    let width = 1usize << colors;
    let per_facet: Vec<Vec<CellKey>> = facets
        .par_iter()
        .map(|f| {
            (0..width)
                .map(|bits| {
                    let s = Support::from_bits(bits as u16);
                    if s.is_empty() {
                        CellKey::empty()
                    } else {
                        keyfn(f, s)
                    }
                })
                .collect()
        })
        .collect();

    let mut interner: HashMap<CellKey, u32> = HashMap::new();
    let mut keys = Vec::new();
    let mut reps = Vec::new();
    let mut table = Vec::with_capacity(facets.len() * width);
    for (fi, row) in per_facet.into_iter().enumerate() {
        for (bits, key) in row.into_iter().enumerate() {
            let support = Support::from_bits(bits as u16);
            if key.support != support {
                return Err(ComplexError::KeySupportMismatch {
                    facet: fi,
                    support,
                });
            }
            let next = keys.len() as u32;
            let id = *interner.entry(key).or_insert_with_key(|k| {
                keys.push(k.clone());
                reps.push((fi as u32, support));
                next
            });
            table.push(id);
        }
    }
    let complex = BalancedComplex {
        colors,
        names: facets.iter().map(name).collect(),
        table,
        keys,
        reps,
    };
    complex.check_distinct_facets()?;
    Ok(complex)
}

impl BalancedComplex {
    /// Builds a complex straight from a table of cell ids, re-interning them
    /// densely. Used for links and rank selections.
    fn from_ids(colors: usize, names: Vec<String>, raw: Vec<u32>) -> BalancedComplex {
        let width = 1usize << colors;
        let mut remap: HashMap<u32, u32> = HashMap::new();
        let mut keys = Vec::new();
        let mut reps = Vec::new();
        let mut table = Vec::with_capacity(raw.len());
        for (pos, old) in raw.into_iter().enumerate() {
            let support = Support::from_bits((pos % width) as u16);
            let facet = (pos / width) as u32;
            let next = keys.len() as u32;
            let id = *remap.entry(old).or_insert_with(|| {
                let code = if support.is_empty() {
                    Vec::new()
                } else {
                    old.to_le_bytes().to_vec()
                };
                keys.push(CellKey::new(code, support));
                reps.push((facet, support));
                next
            });
            table.push(id);
        }
        BalancedComplex {
            colors,
            names,
            table,
            keys,
            reps,
        }
    }

    fn check_distinct_facets(&self) -> Result<(), ComplexError> {
        let full = Support::full(self.colors);
        let mut seen: HashMap<u32, usize> = HashMap::new();
        for f in 0..self.facet_count() {
            if let Some(prev) = seen.insert(self.cell_id(f, full), f) {
                return Err(ComplexError::DuplicateFacet { first: prev, second: f });
            }
        }
        Ok(())
    }

    /// Number of colors `d`; the complex has dimension `d - 1`.
    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn full_support(&self) -> Support {
        Support::full(self.colors)
    }

    pub fn facet_count(&self) -> usize {
        self.names.len()
    }

    pub fn facet_name(&self, facet: usize) -> &str {
        &self.names[facet]
    }

    pub fn facet_names(&self) -> &[String] {
        &self.names
    }

    /// Number of distinct cells, the empty cell included.
    pub fn cell_count(&self) -> usize {
        self.keys.len()
    }

    #[inline]
    pub fn cell_id(&self, facet: usize, support: Support) -> u32 {
        self.table[(facet << self.colors) | support.index()]
    }

    pub fn cell_key(&self, id: u32) -> &CellKey {
        &self.keys[id as usize]
    }

    pub fn cell_support(&self, id: u32) -> Support {
        self.keys[id as usize].support
    }

    /// The first `(facet, support)` pair, in facet order, naming this cell.
    pub fn representative(&self, id: u32) -> (usize, Support) {
        let (f, s) = self.reps[id as usize];
        (f as usize, s)
    }

    /// Whether two facets share their face of the given support.
    pub fn shares(&self, a: usize, b: usize, support: Support) -> bool {
        self.cell_id(a, support) == self.cell_id(b, support)
    }

    /// Flag f-vector: `f_T` counts the distinct cells of support `T`.
    pub fn flag_f(&self) -> FlagVector {
        let mut values = vec![0i64; 1 << self.colors];
        for key in &self.keys {
            values[key.support.index()] += 1;
        }
        FlagVector {
            colors: self.colors,
            values,
        }
    }

    /// Flag h-vector by inclusion–exclusion over the flag f-vector.
    pub fn flag_h(&self) -> FlagVector {
        self.flag_f().inclusion_exclusion()
    }

    /// Ordinary f-vector `(f_0, …, f_{d-1})` counting cells by dimension.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.colors];
        for key in &self.keys {
            let k = key.support.len();
            if k > 0 {
                out[k - 1] += 1;
            }
        }
        out
    }

    /// Link of the cell `(facet, support)`: a complex on the remaining
    /// colors, renumbered `1..=d-|S|` in increasing order.
    pub fn link(&self, facet: usize, support: Support) -> Result<BalancedComplex, ComplexError> {
        if facet >= self.facet_count() || !support.is_subset(self.full_support()) {
            return Err(ComplexError::CellNotFound);
        }
        let id = self.cell_id(facet, support);
        let rest: Vec<usize> = self.full_support().difference(support).to_vec();
        let colors = rest.len();
        let members: Vec<usize> = (0..self.facet_count())
            .filter(|&f| self.cell_id(f, support) == id)
            .collect();
        let mut raw = Vec::with_capacity(members.len() << colors);
        for &f in &members {
            for bits in 0..(1usize << colors) {
                let lifted = Support::from_bits(bits as u16)
                    .colors()
                    .fold(support, |acc, c| acc.insert(rest[c - 1]));
                raw.push(self.cell_id(f, lifted));
            }
        }
        let names = members.iter().map(|&f| self.names[f].clone()).collect();
        Ok(BalancedComplex::from_ids(colors, names, raw))
    }

    /// Rank selection to the colors of `support`, renumbered in increasing
    /// order. Facets are the distinct cells of that support.
    pub fn rank_select(&self, support: Support) -> BalancedComplex {
        let kept: Vec<usize> = support.intersection(self.full_support()).to_vec();
        let colors = kept.len();
        let sel = Support::from_colors(kept.iter().copied());
        let mut seen = HashMap::new();
        let mut members = Vec::new();
        for f in 0..self.facet_count() {
            if seen.insert(self.cell_id(f, sel), f).is_none() {
                members.push(f);
            }
        }
        let mut raw = Vec::with_capacity(members.len() << colors);
        for &f in &members {
            for bits in 0..(1usize << colors) {
                let lifted = Support::from_colors(
                    Support::from_bits(bits as u16).colors().map(|c| kept[c - 1]),
                );
                raw.push(self.cell_id(f, lifted));
            }
        }
        let names = members.iter().map(|&f| self.names[f].clone()).collect();
        BalancedComplex::from_ids(colors, names, raw)
    }

    /// Euler characteristic `Σ (-1)^i f_i` over nonempty cells.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// A function on supports, e.g. a flag f- or h-vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    colors: usize,
    values: Vec<i64>,
}

impl FlagVector {
    pub fn from_fn(colors: usize, f: impl Fn(Support) -> i64) -> FlagVector {
        FlagVector {
            colors,
            values: Support::full(colors).subsets().map(f).collect(),
        }
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn get(&self, s: Support) -> i64 {
        self.values[s.index()]
    }

    /// `(support, value)` pairs in increasing bit order of the support.
    pub fn iter(&self) -> impl Iterator<Item = (Support, i64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(bits, &v)| (Support::from_bits(bits as u16), v))
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    /// `g_S = Σ_{T ⊆ S} (-1)^{|S-T|} v_T`.
    pub fn inclusion_exclusion(&self) -> FlagVector {
        let mut values = self.values.clone();
        for bit in 0..self.colors {
            for s in 0..values.len() {
                if s & (1 << bit) != 0 {
                    values[s] -= values[s ^ (1 << bit)];
                }
            }
        }
        FlagVector {
            colors: self.colors,
            values,
        }
    }

    /// `g_S = Σ_{T ⊆ S} v_T`, the inverse of [`Self::inclusion_exclusion`].
    pub fn subset_sums(&self) -> FlagVector {
        let mut values = self.values.clone();
        for bit in 0..self.colors {
            for s in 0..values.len() {
                if s & (1 << bit) != 0 {
                    values[s] += values[s ^ (1 << bit)];
                }
            }
        }
        FlagVector {
            colors: self.colors,
            values,
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Two triangles glued along an edge, as a plain simplicial complex on
    /// colored vertices: facet = list of vertex names per color.
    pub(crate) fn simplicial(colors: usize, facets: &[Vec<u32>]) -> BalancedComplex {
        build_complex(
            colors,
            facets,
            |f| format!("{f:?}"),
            |f, s| {
                let code = s.colors().flat_map(|c| f[c - 1].to_le_bytes()).collect();
                CellKey::new(code, s)
            },
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_complex() {
        let c = simplicial(1, &[vec![0]]);
        assert_eq!(c.facet_count(), 1);
        assert_eq!(c.cell_count(), 2);
        assert_eq!(c.flag_f().get(Support::EMPTY), 1);
    }

    #[test]
    fn duplicate_facets_rejected() {
        let err = build_complex(
            2,
            &[0u8, 1u8],
            |f| f.to_string(),
            |_, s| CellKey::new(vec![7], s),
        )
        .unwrap_err();
        assert_eq!(err, ComplexError::DuplicateFacet { first: 0, second: 1 });
    }

    #[test]
    fn flag_vectors_invert() {
        let c = simplicial(2, &[vec![0, 0], vec![0, 1], vec![1, 1]]);
        let f = c.flag_f();
        let h = c.flag_h();
        assert_eq!(h.subset_sums(), f);
        assert_eq!(h.total(), 3);
        assert_eq!(h.get(Support::EMPTY), 1);
    }

    #[test]
    fn link_of_extreme_cells() {
        let c = simplicial(2, &[vec![0, 0], vec![0, 1], vec![1, 1]]);
        let whole = c.link(0, Support::EMPTY).unwrap();
        assert_eq!(whole.flag_f(), c.flag_f());
        let point = c.link(1, Support::full(2)).unwrap();
        assert_eq!(point.colors(), 0);
        assert_eq!(point.facet_count(), 1);
        let v = c.link(0, Support::from_colors([1])).unwrap();
        assert_eq!(v.facet_count(), 2);
        assert_eq!(v.f_vector(), vec![2]);
    }

    #[test]
    fn rank_select_extremes() {
        let c = simplicial(2, &[vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(c.rank_select(c.full_support()).flag_f(), c.flag_f());
        let empty = c.rank_select(Support::EMPTY);
        assert_eq!(empty.colors(), 0);
        assert_eq!(empty.facet_count(), 1);
        let second = c.rank_select(Support::from_colors([2]));
        assert_eq!(second.facet_count(), 2);
    }
}
