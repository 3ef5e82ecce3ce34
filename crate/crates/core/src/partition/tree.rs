use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{Label3, Labelling, Planar};
use super::{facet_cap, SetPartition, MAX_GROUND};
use crate::complex::{build_complex, BalancedComplex, CellKey};
use crate::error::BuildError;
use crate::support::{Support, MAX_COLORS};

/// One bar insertion: the block at index `block` of the current (sorted)
/// block order is split into `left | right` with `left ≤ right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SplitRecord {
    pub block: usize,
    pub left: usize,
    pub right: usize,
}

/// A maximal chain orbit as its sequence of bar insertions, one per rank
/// `1..=n-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FacetEncoding {
    pub n: usize,
    pub splits: Vec<SplitRecord>,
}

impl fmt::Display for FacetEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .splits
            .iter()
            .map(|s| format!("{}:{}/{}", s.block, s.left, s.right))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Node {
    pub size: usize,
    pub parent: Option<usize>,
    /// Smaller child first; for equal sizes, the one split first.
    pub children: Option<[usize; 2]>,
    /// Rank of the step that split this block, 0 while unsplit.
    pub split_rank: usize,
    pub created: usize,
}

/// Binary refinement tree of a (partial) maximal chain. Node 0 is the
/// single block at rank 0; the `r`-th split happens at rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTree {
    n: usize,
    pub(crate) nodes: Vec<Node>,
}

impl SplitTree {
    pub fn new(n: usize) -> SplitTree {
        SplitTree {
            n,
            nodes: vec![Node {
                size: n,
                parent: None,
                children: None,
                split_rank: 0,
                created: 0,
            }],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of splits so far.
    pub fn rank(&self) -> usize {
        (self.nodes.len() - 1) / 2
    }

    pub(crate) fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    pub(crate) fn split(&mut self, id: usize, left: usize) -> [usize; 2] {
        let rank = self.rank() + 1;
        let size = self.nodes[id].size;
        debug_assert!(left >= 1 && 2 * left <= size && self.nodes[id].children.is_none());
        let a = self.nodes.len();
        for s in [left, size - left] {
            self.nodes.push(Node {
                size: s,
                parent: Some(id),
                children: None,
                split_rank: 0,
                created: rank,
            });
        }
        self.nodes[id].children = Some([a, a + 1]);
        self.nodes[id].split_rank = rank;
        [a, a + 1]
    }

    /// The other child of this node's parent, when both have equal size.
    pub(crate) fn twin(&self, id: usize) -> Option<usize> {
        let p = self.nodes[id].parent?;
        let [a, b] = self.nodes[p].children?;
        let other = if a == id { b } else { a };
        (self.nodes[a].size == self.nodes[b].size).then_some(other)
    }

    fn alive_under(&self, id: usize, rank: usize, out: &mut Vec<usize>) {
        let node = &self.nodes[id];
        match node.children {
            Some(kids) if node.split_rank <= rank => {
                for k in kids {
                    self.alive_under(k, rank, out);
                }
            }
            _ => out.push(id),
        }
    }

    fn code(&self, id: usize, levels: &[usize], out: &mut Vec<u8>) {
        out.push(self.nodes[id].size as u8);
        let Some((&rank, rest)) = levels.split_first() else {
            out.push(0);
            return;
        };
        let mut alive = Vec::new();
        self.alive_under(id, rank, &mut alive);
        let mut kids: Vec<Vec<u8>> = alive
            .into_iter()
            .map(|k| {
                let mut c = Vec::new();
                self.code(k, rest, &mut c);
                c
            })
            .collect();
        kids.sort_unstable();
        out.push(kids.len() as u8);
        for k in kids {
            out.extend_from_slice(&k);
        }
    }

    /// Orbit key of the face of this chain with ranks `support`. Agrees
    /// byte for byte with [`super::partition_key`] on any realization.
    pub fn forest_key(&self, support: Support) -> CellKey {
        let levels = support.to_vec();
        let mut code = Vec::new();
        self.code(0, &levels, &mut code);
        CellKey::new(code, support)
    }

    /// The refinement of block `id` on its own, with its split ranks
    /// renumbered `1..`.
    pub(crate) fn subtree(&self, id: usize) -> SplitTree {
        let mut internal = Vec::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            if let Some(kids) = self.nodes[x].children {
                internal.push(x);
                stack.extend(kids);
            }
        }
        internal.sort_by_key(|&x| self.nodes[x].split_rank);
        let mut out = SplitTree::new(self.nodes[id].size);
        let mut map = vec![usize::MAX; self.nodes.len()];
        map[id] = 0;
        for x in internal {
            let [a, b] = self.nodes[x].children.expect("internal");
            let [na, nb] = out.split(map[x], self.nodes[a].size);
            map[a] = na;
            map[b] = nb;
        }
        out
    }

    /// Node split at `rank`.
    pub(crate) fn split_at(&self, rank: usize) -> Option<usize> {
        self.nodes.iter().position(|x| x.split_rank == rank && x.children.is_some())
    }

    /// Whether `id` lies in the subtree of `top`.
    pub(crate) fn is_under(&self, mut id: usize, top: usize) -> bool {
        loop {
            if id == top {
                return true;
            }
            match self.nodes[id].parent {
                Some(p) => id = p,
                None => return false,
            }
        }
    }

    /// Blocks present at `rank`.
    pub(crate) fn alive_at(&self, rank: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.alive_under(0, rank, &mut out);
        out
    }

    /// A concrete chain in this orbit, ranks `1..=rank()`, with the blocks
    /// laid out left to right in the leaf order `leaves`.
    pub fn realize(&self, leaves: &[usize]) -> Vec<SetPartition> {
        let mut masks = vec![0u32; self.nodes.len()];
        let mut next = 0usize;
        for &leaf in leaves {
            let size = self.nodes[leaf].size;
            let mask = ((1u64 << (next + size)) - (1u64 << next)) as u32;
            next += size;
            let mut id = Some(leaf);
            while let Some(x) = id {
                masks[x] |= mask;
                id = self.nodes[x].parent;
            }
        }
        (1..=self.rank())
            .map(|r| {
                let mut p: Vec<u32> = self.alive_at(r).into_iter().map(|x| masks[x]).collect();
                p.sort_unstable();
                p
            })
            .collect()
    }
}

/// A facet of `Δ(Π_n)/S_n` with its encoding, labels, and final planar
/// layout.
#[derive(Clone, Debug)]
pub struct PartitionFacet {
    pub encoding: FacetEncoding,
    pub labels: Vec<Label3>,
    pub tree: SplitTree,
    /// Leaves in the final sorted order.
    pub leaves: Vec<usize>,
    /// Rank of the bar at each position `1..=n-1`, left to right.
    pub bar_ranks: Vec<usize>,
}

impl PartitionFacet {
    pub(crate) fn from_planar(p: &Planar) -> PartitionFacet {
        PartitionFacet {
            encoding: p.encoding(),
            labels: p.labels().to_vec(),
            tree: p.tree().clone(),
            leaves: p.leaves(),
            bar_ranks: p.bar_ranks(),
        }
    }

    /// Balls-and-bars name: the rank of each bar, left to right.
    pub fn name(&self) -> String {
        let parts: Vec<String> = self.bar_ranks.iter().map(usize::to_string).collect();
        parts.join(".")
    }

    pub fn n(&self) -> usize {
        self.encoding.n
    }

    /// Concrete chain of set partitions at ranks `1..=n-2`.
    pub fn chain(&self) -> Vec<SetPartition> {
        let mut c = self.tree.realize(&self.leaves);
        c.truncate(self.n().saturating_sub(2));
        c
    }
}

/// All facets of `Δ(Π_n)/S_n`, sorted by label sequence (ties, which the
/// labelling should never produce, fall back to the encoding).
pub fn enumerate_partition_facets(n: usize, cap: usize) -> Result<Vec<PartitionFacet>, BuildError> {
    let cap = cap.min(MAX_COLORS + 2).min(MAX_GROUND);
    if n < 3 {
        return Err(BuildError::Unsupported(format!("n={n}; the proper part is empty")));
    }
    if n > cap {
        return Err(BuildError::CapExceeded { got: n, cap });
    }
    let mut out = Vec::new();
    let mut p = Planar::new(n, Labelling::Sorted);
    collect(&mut p, &mut out);
    out.sort_by(|a, b| a.labels.cmp(&b.labels).then_with(|| a.encoding.cmp(&b.encoding)));
    Ok(out)
}

fn collect(p: &mut Planar, out: &mut Vec<PartitionFacet>) {
    if p.is_complete() {
        out.push(PartitionFacet::from_planar(p));
        return;
    }
    for (block, left) in p.candidates() {
        let mut q = p.clone();
        q.step(block, left).expect("candidate steps are valid");
        collect(&mut q, out);
    }
}

/// Indices `i` with `facets[i]` and `facets[i+1]` carrying equal labels.
pub fn label_ties(facets: &[PartitionFacet]) -> Vec<usize> {
    (0..facets.len().saturating_sub(1))
        .filter(|&i| facets[i].labels == facets[i + 1].labels)
        .collect()
}

/// The complex `Δ(Π_n)/S_n` on the given facets, in the given order.
pub fn partition_complex(n: usize, facets: &[PartitionFacet]) -> Result<BalancedComplex, BuildError> {
    Ok(build_complex(n - 2, facets, PartitionFacet::name, |f, s| f.tree.forest_key(s))?)
}

/// `Δ(Π_n)/S_n` with facets in lexicographic label order, under
/// [`facet_cap`].
pub fn lex_quotient(n: usize) -> Result<BalancedComplex, BuildError> {
    Ok(lex_complex(n)?.1)
}

/// Facets and complex for `n`, under [`facet_cap`].
pub(crate) fn lex_complex(n: usize) -> Result<(Vec<PartitionFacet>, BalancedComplex), BuildError> {
    let facets = enumerate_partition_facets(n, facet_cap())?;
    let c = partition_complex(n, &facets)?;
    Ok((facets, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partition_key;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_partition_facets(3, 9).unwrap().len(), 1);
        assert_eq!(enumerate_partition_facets(4, 9).unwrap().len(), 2);
        assert_eq!(enumerate_partition_facets(5, 9).unwrap().len(), 5);
        assert!(enumerate_partition_facets(10, 9).is_err());
    }

    #[test]
    fn four_letters_order() {
        let f = enumerate_partition_facets(4, 9).unwrap();
        assert_eq!(f[0].labels[0].bar, 1);
        assert_eq!(f[1].labels[0].bar, 2);
        assert_eq!(f[1].labels[1].bar, 1);
    }

    #[test]
    fn tree_keys_match_realized_chains() {
        for n in 3..=7 {
            for f in enumerate_partition_facets(n, 9).unwrap() {
                let chain = f.chain();
                let full = Support::full(n - 2);
                for s in full.subsets() {
                    let sub: Vec<SetPartition> = s.colors().map(|r| chain[r - 1].clone()).collect();
                    assert_eq!(partition_key(n, &sub, s).unwrap(), f.tree.forest_key(s));
                }
            }
        }
    }

    #[test]
    fn names_are_distinct() {
        let f = enumerate_partition_facets(7, 9).unwrap();
        let mut names: Vec<String> = f.iter().map(PartitionFacet::name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), f.len());
        assert!(label_ties(&f).is_empty());
    }
}
