use serde::{Deserialize, Serialize};

use super::exact_cover::{self, Cover};
use super::{BalancedComplex, OrderIndex, SearchOutcome};
use crate::error::ComplexError;
use crate::support::Support;

/// Minimal face `G_i` (as a support) assigned to each facet `F_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionAssignment {
    pub minimal: Vec<Support>,
}

impl PartitionAssignment {
    pub fn new(minimal: Vec<Support>) -> PartitionAssignment {
        PartitionAssignment { minimal }
    }

    /// Number of facets assigned each support.
    pub fn histogram(&self, colors: usize) -> Vec<i64> {
        let mut out = vec![0i64; 1 << colors];
        for g in &self.minimal {
            out[g.index()] += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitioningVerdict {
    Pass,
    /// A cell covered by zero or several intervals, named by one of its
    /// `(facet, support)` pairs, with the facets whose intervals contain it.
    Fail {
        facet: usize,
        support: Support,
        covered_by: Vec<usize>,
    },
}

impl PartitioningVerdict {
    pub fn passed(&self) -> bool {
        *self == PartitioningVerdict::Pass
    }
}

/// Checks that the intervals `[G_i, F_i]` cover every cell exactly once.
pub fn verify_partitioning(
    c: &BalancedComplex,
    a: &PartitionAssignment,
) -> Result<PartitioningVerdict, ComplexError> {
    if a.minimal.len() != c.facet_count() {
        return Err(ComplexError::AssignmentLength {
            expected: c.facet_count(),
            got: a.minimal.len(),
        });
    }
    let full = c.full_support();
    let mut count = vec![0u32; c.cell_count()];
    for (f, g) in a.minimal.iter().enumerate() {
        if !g.is_subset(full) {
            return Err(ComplexError::CellNotFound);
        }
        for s in g.supersets_within(full) {
            count[c.cell_id(f, s) as usize] += 1;
        }
    }
    let bad = (0..c.cell_count()).find(|&id| count[id] != 1);
    Ok(match bad {
        None => PartitioningVerdict::Pass,
        Some(id) => {
            let (facet, support) = c.representative(id as u32);
            let covered_by = a
                .minimal
                .iter()
                .enumerate()
                .filter(|(f, g)| g.is_subset(support) && c.cell_id(*f, support) == id as u32)
                .map(|(f, _)| f)
                .collect();
            PartitioningVerdict::Fail {
                facet,
                support,
                covered_by,
            }
        }
    })
}

/// Assigns each facet its topological descent set in the given order.
pub fn descent_assignment(
    c: &BalancedComplex,
    order: &[usize],
) -> Result<PartitionAssignment, ComplexError> {
    let idx = OrderIndex::new(c, order)?;
    Ok(PartitionAssignment::new(
        (0..c.facet_count()).map(|f| idx.descents(c, f)).collect(),
    ))
}

/// Exact-cover search for a partitioning. Each facet picks one interval
/// `[G, F]`; every cell must be covered once.
pub fn partitioning_exists(
    c: &BalancedComplex,
    budget: u64,
) -> SearchOutcome<PartitionAssignment> {
    let full = c.full_support();
    let cells = c.cell_count();
    let mut options = Vec::new();
    let mut meta = Vec::new();
    for f in 0..c.facet_count() {
        for g in full.subsets() {
            let mut items: Vec<usize> = g
                .supersets_within(full)
                .map(|s| c.cell_id(f, s) as usize)
                .collect();
            items.push(cells + f);
            items.sort_unstable();
            options.push(items);
            meta.push((f, g));
        }
    }
    match exact_cover::solve(cells + c.facet_count(), &options, budget) {
        Cover::Found(rows) => {
            let mut minimal = vec![Support::EMPTY; c.facet_count()];
            for r in rows {
                let (f, g) = meta[r];
                minimal[f] = g;
            }
            SearchOutcome::Found(PartitionAssignment::new(minimal))
        }
        Cover::Exhausted(nodes) => SearchOutcome::NoneExists { nodes },
        Cover::OutOfBudget(nodes) => SearchOutcome::BudgetExceeded { nodes },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::tests::simplicial;

    #[test]
    fn single_facet_partitions_trivially() {
        let c = simplicial(2, &[vec![0, 0]]);
        let a = PartitionAssignment::new(vec![Support::EMPTY]);
        assert!(verify_partitioning(&c, &a).unwrap().passed());
        assert_eq!(partitioning_exists(&c, 100), SearchOutcome::Found(a));
    }

    #[test]
    fn double_cover_of_empty_cell() {
        let c = simplicial(2, &[vec![0, 0], vec![0, 1]]);
        let a = PartitionAssignment::new(vec![Support::EMPTY, Support::EMPTY]);
        match verify_partitioning(&c, &a).unwrap() {
            PartitioningVerdict::Fail {
                support,
                covered_by,
                ..
            } => {
                assert_eq!(support, Support::EMPTY);
                assert_eq!(covered_by, vec![0, 1]);
            }
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn descent_sets_of_a_shelling_partition() {
        let c = simplicial(2, &[vec![0, 0], vec![0, 1], vec![1, 1]]);
        let a = descent_assignment(&c, &[0, 1, 2]).unwrap();
        assert!(verify_partitioning(&c, &a).unwrap().passed());
        match partitioning_exists(&c, 1000) {
            SearchOutcome::Found(found) => {
                assert!(verify_partitioning(&c, &found).unwrap().passed())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn disconnected_edges_are_not_partitionable() {
        // Only one interval may contain ∅, and the other edge cannot cover
        // both of its vertices without it.
        let c = simplicial(2, &[vec![0, 0], vec![1, 1]]);
        assert!(matches!(
            partitioning_exists(&c, 1000),
            SearchOutcome::NoneExists { .. }
        ));
    }
}
