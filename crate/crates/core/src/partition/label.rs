use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::tree::{FacetEncoding, SplitRecord, SplitTree};
use crate::error::BuildError;

/// Label of one covering step, compared by bar position, then position
/// word, then ancestor ranks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label3 {
    /// Post-sort position of the new bar, `1..=n-1`.
    pub bar: usize,
    /// All post-sort bar positions, increasing.
    pub word: Vec<usize>,
    /// Ranks at which the ancestors of the split block were split, root
    /// first and parent last.
    pub ancestors: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Labelling {
    /// Bar positions with no reordering of blocks.
    Presort,
    /// Block sort between refinement and labelling.
    Sorted,
}

/// A partially built chain with a planar block order.
#[derive(Clone, Debug)]
pub struct Planar {
    tree: SplitTree,
    /// Per node: display the larger-index child first.
    swapped: Vec<bool>,
    mode: Labelling,
    labels: Vec<Label3>,
    records: Vec<SplitRecord>,
    orders: Vec<Vec<usize>>,
}

impl Planar {
    pub fn new(n: usize, mode: Labelling) -> Planar {
        Planar {
            tree: SplitTree::new(n),
            swapped: vec![false],
            mode,
            labels: Vec::new(),
            records: Vec::new(),
            orders: Vec::new(),
        }
    }

    pub fn tree(&self) -> &SplitTree {
        &self.tree
    }

    pub fn labels(&self) -> &[Label3] {
        &self.labels
    }

    /// Block sizes in planar order after each step.
    pub fn orders(&self) -> &[Vec<usize>] {
        &self.orders
    }

    pub fn encoding(&self) -> FacetEncoding {
        FacetEncoding {
            n: self.tree.n(),
            splits: self.records.clone(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.tree.rank() + 1 == self.tree.n()
    }

    fn display(&self, id: usize) -> Option<[usize; 2]> {
        self.tree.node(id).children.map(|[a, b]| if self.swapped[id] { [b, a] } else { [a, b] })
    }

    fn push_leaves(&self, id: usize, out: &mut Vec<usize>) {
        match self.display(id) {
            Some([a, b]) => {
                self.push_leaves(a, out);
                self.push_leaves(b, out);
            }
            None => out.push(id),
        }
    }

    /// Current blocks in planar order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.push_leaves(0, &mut out);
        out
    }

    /// Bar positions inside the block `id`, relative to its left end.
    fn word(&self, id: usize) -> Vec<usize> {
        let mut leaves = Vec::new();
        self.push_leaves(id, &mut leaves);
        let mut acc = 0;
        let mut out = Vec::with_capacity(leaves.len().saturating_sub(1));
        for &l in &leaves[..leaves.len() - 1] {
            acc += self.tree.node(l).size;
            out.push(acc);
        }
        out
    }

    /// Rank of the bar at each position, left to right.
    pub fn bar_ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.tree.n() - 1];
        self.fill_bar_ranks(0, 0, &mut out);
        out.retain(|&r| r != 0);
        out
    }

    fn fill_bar_ranks(&self, id: usize, start: usize, out: &mut [usize]) {
        if let Some([a, b]) = self.display(id) {
            let mid = start + self.tree.node(a).size;
            out[mid - 1] = self.tree.node(id).split_rank;
            self.fill_bar_ranks(a, start, out);
            self.fill_bar_ranks(b, mid, out);
        }
    }

    /// Splits that pick a representative of each equivalence class: every
    /// block of size at least two, except one whose unsplit twin lies to
    /// its left.
    pub fn candidates(&self) -> Vec<(usize, usize)> {
        let leaves = self.leaves();
        let mut out = Vec::new();
        for (i, &id) in leaves.iter().enumerate() {
            if self.blocked(&leaves, i) {
                continue;
            }
            let size = self.tree.node(id).size;
            for left in 1..=size / 2 {
                out.push((i, left));
            }
        }
        out
    }

    fn blocked(&self, leaves: &[usize], i: usize) -> bool {
        i > 0 && self.tree.twin(leaves[i]) == Some(leaves[i - 1])
    }

    /// Splits block `block` of the current order into `left | size-left`,
    /// sorts, and returns the step's label.
    pub fn step(&mut self, block: usize, left: usize) -> Result<Label3, BuildError> {
        if self.is_complete() {
            return Err(BuildError::MalformedChain("chain is already maximal".into()));
        }
        let leaves = self.leaves();
        let Some(&id) = leaves.get(block) else {
            return Err(BuildError::MalformedChain(format!("no block at index {block}")));
        };
        let size = self.tree.node(id).size;
        if left == 0 || 2 * left > size {
            return Err(BuildError::MalformedChain(format!("cannot split {size} as {left}|{}", size - left)));
        }
        if self.blocked(&leaves, block) {
            return Err(BuildError::MalformedChain(format!(
                "block {block} has an equivalent block to its left"
            )));
        }
        let rank = self.tree.rank() + 1;
        self.tree.split(id, left);
        self.swapped.extend([false, false]);
        if self.mode == Labelling::Sorted {
            self.sort_ancestors(id);
        }
        let leaves = self.leaves();
        let mut positions = Vec::with_capacity(leaves.len() - 1);
        let mut acc = 0;
        let mut bar = 0;
        let [first, _] = self.display(id).expect("just split");
        for &l in &leaves[..leaves.len() - 1] {
            acc += self.tree.node(l).size;
            positions.push(acc);
            if l == first {
                bar = acc;
            }
        }
        let mut ancestors = Vec::new();
        let mut up = self.tree.node(id).parent;
        while let Some(a) = up {
            ancestors.push(self.tree.node(a).split_rank);
            up = self.tree.node(a).parent;
        }
        ancestors.reverse();
        let label = Label3 {
            bar,
            word: positions,
            ancestors,
        };
        debug_assert_eq!(self.tree.node(id).split_rank, rank);
        self.records.push(SplitRecord {
            block,
            left,
            right: size - left,
        });
        self.labels.push(label.clone());
        self.orders.push(leaves.iter().map(|&l| self.tree.node(l).size).collect());
        Ok(label)
    }

    /// Reorders twin siblings from the split block up to the root: a split
    /// twin goes left of an unsplit one; two split twins are ordered by
    /// their internal bar words, then by which was split first.
    fn sort_ancestors(&mut self, from: usize) {
        let mut x = from;
        while let Some(p) = self.tree.node(x).parent {
            if self.tree.twin(x).is_some() {
                let [a, b] = self.tree.node(p).children.expect("parent is split");
                let key = |id: usize| {
                    let node = self.tree.node(id);
                    (node.children.is_none(), self.word(id), node.split_rank)
                };
                self.swapped[p] = key(b).cmp(&key(a)) == Ordering::Less;
            }
            x = p;
        }
    }
}

/// Labels of every step of a facet, with the block sizes in sorted order
/// after each step.
pub fn label_facet(enc: &FacetEncoding) -> Result<(Vec<Label3>, Vec<Vec<usize>>), BuildError> {
    let mut p = Planar::new(enc.n, Labelling::Sorted);
    for s in &enc.splits {
        if s.left + s.right != p_size(&p, s.block)? {
            return Err(BuildError::MalformedChain(format!("split {s:?} does not match the block")));
        }
        p.step(s.block, s.left)?;
    }
    Ok((p.labels().to_vec(), p.orders().to_vec()))
}

fn p_size(p: &Planar, block: usize) -> Result<usize, BuildError> {
    p.leaves()
        .get(block)
        .map(|&id| p.tree().node(id).size)
        .ok_or_else(|| BuildError::MalformedChain(format!("no block at index {block}")))
}

/// Recovers an encoding from its label sequence.
pub fn decode_labels(n: usize, labels: &[Label3]) -> Result<FacetEncoding, BuildError> {
    let mut p = Planar::new(n, Labelling::Sorted);
    for (t, want) in labels.iter().enumerate() {
        let next = p.candidates().into_iter().find_map(|(block, left)| {
            let mut q = p.clone();
            (q.step(block, left).ok().as_ref() == Some(want)).then_some(q)
        });
        p = next.ok_or_else(|| BuildError::MalformedChain(format!("no step matches label {t}")))?;
    }
    Ok(p.encoding())
}

/// Bar-position labels with no block sort, for a chain of ordered block
/// compositions starting above the single block. Each step must replace
/// one block by two, smaller first.
pub fn presort_labels(n: usize, chain: &[Vec<usize>]) -> Result<Vec<usize>, BuildError> {
    let mut prev = vec![n];
    let mut out = Vec::with_capacity(chain.len());
    for (t, cur) in chain.iter().enumerate() {
        let bad = || BuildError::MalformedChain(format!("step {t} is not a single split"));
        if cur.len() != prev.len() + 1 || cur.iter().sum::<usize>() != n {
            return Err(bad());
        }
        let i = (0..prev.len()).find(|&i| prev[i] != cur[i]).unwrap_or(prev.len() - 1);
        let (a, b) = (cur[i], cur[i + 1]);
        if a + b != prev[i] || a > b || prev[i + 1..] != cur[i + 2..] {
            return Err(bad());
        }
        out.push(cur[..=i].iter().sum());
        prev = cur.clone();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_letters() {
        let mut p = Planar::new(3, Labelling::Sorted);
        let l = p.step(0, 1).unwrap();
        assert_eq!(l, Label3 { bar: 1, word: vec![1], ancestors: vec![] });
        let l = p.step(1, 1).unwrap();
        assert_eq!(l, Label3 { bar: 2, word: vec![1, 2], ancestors: vec![1] });
        assert!(p.is_complete());
    }

    #[test]
    fn pair_of_pairs_is_sorted() {
        let mut p = Planar::new(4, Labelling::Sorted);
        p.step(0, 2).unwrap();
        assert_eq!(p.candidates(), vec![(0, 1)]);
        assert_eq!(p.step(0, 1).unwrap().bar, 1);
        assert_eq!(p.step(2, 1).unwrap().bar, 3);
    }

    #[test]
    fn later_twin_with_smaller_word_moves_left() {
        // 22 -> 11|11 -> 2|9|11 -> then 1|10 in the other eleven.
        let mut p = Planar::new(22, Labelling::Sorted);
        p.step(0, 11).unwrap();
        assert_eq!(p.step(0, 2).unwrap().bar, 2);
        let l = p.step(2, 1).unwrap();
        assert_eq!(l.bar, 1);
        assert_eq!(l.word, vec![1, 11, 13]);
        assert_eq!(p.orders().last().unwrap(), &vec![1, 10, 2, 9]);
    }

    #[test]
    fn presort_examples() {
        assert_eq!(presort_labels(4, &[vec![1, 3], vec![1, 1, 2]]).unwrap(), vec![1, 2]);
        let chain = [
            vec![11, 11],
            vec![1, 10, 11],
            vec![1, 1, 9, 11],
            vec![1, 1, 9, 2, 9],
            vec![1, 1, 9, 2, 2, 7],
        ];
        assert_eq!(presort_labels(22, &chain).unwrap()[1..], [1, 2, 13, 15]);
        assert!(presort_labels(4, &[vec![3, 1]]).is_err());
    }

    #[test]
    fn decoding_round_trips() {
        let mut p = Planar::new(7, Labelling::Sorted);
        for (b, l) in [(0, 3), (1, 2), (0, 1), (2, 1), (1, 1), (5, 1)] {
            p.step(b, l).unwrap();
        }
        assert!(p.is_complete());
        assert_eq!(decode_labels(7, p.labels()).unwrap(), p.encoding());
        let (labels, _) = label_facet(&p.encoding()).unwrap();
        assert_eq!(labels, p.labels());
    }
}
