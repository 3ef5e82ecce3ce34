use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{BalancedComplex, SearchOutcome};
use crate::error::ComplexError;
use crate::support::Support;

/// Positions of facets in a total order plus, for every cell, the earliest
/// position of a facet containing it.
#[derive(Clone, Debug)]
pub struct OrderIndex {
    position: Vec<usize>,
    first: Vec<usize>,
}

impl OrderIndex {
    pub fn new(c: &BalancedComplex, order: &[usize]) -> Result<OrderIndex, ComplexError> {
        let n = c.facet_count();
        let mut position = vec![usize::MAX; n];
        if order.len() != n {
            return Err(ComplexError::NotAPermutation);
        }
        for (p, &f) in order.iter().enumerate() {
            if f >= n || position[f] != usize::MAX {
                return Err(ComplexError::NotAPermutation);
            }
            position[f] = p;
        }
        let mut first = vec![usize::MAX; c.cell_count()];
        for f in 0..n {
            let p = position[f];
            for s in c.full_support().subsets() {
                let id = c.cell_id(f, s) as usize;
                first[id] = first[id].min(p);
            }
        }
        Ok(OrderIndex { position, first })
    }

    pub fn position(&self, facet: usize) -> usize {
        self.position[facet]
    }

    /// Whether the face of `facet` with this support lies in an earlier facet.
    #[inline]
    pub fn is_old(&self, c: &BalancedComplex, facet: usize, s: Support) -> bool {
        self.first[c.cell_id(facet, s) as usize] < self.position[facet]
    }

    /// Colors `r` whose codimension-one face (omitting `r`) is old.
    pub fn descents(&self, c: &BalancedComplex, facet: usize) -> Support {
        let full = c.full_support();
        full.colors()
            .filter(|&r| self.is_old(c, facet, full.remove(r)))
            .fold(Support::EMPTY, Support::insert)
    }

    /// Maximal supports among the old faces of `facet`.
    pub fn maximal_old_faces(&self, c: &BalancedComplex, facet: usize) -> Vec<Support> {
        let full = c.full_support();
        full.subsets()
            .filter(|&s| self.is_old(c, facet, s))
            .filter(|&s| {
                full.difference(s)
                    .colors()
                    .all(|r| !self.is_old(c, facet, s.insert(r)))
            })
            .collect()
    }
}

/// Topological descent set of the facet at position `j` of `order`.
pub fn topological_descents(
    c: &BalancedComplex,
    order: &[usize],
    j: usize,
) -> Result<Support, ComplexError> {
    let idx = OrderIndex::new(c, order)?;
    let facet = *order.get(j).ok_or(ComplexError::NotAPermutation)?;
    Ok(idx.descents(c, facet))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingStep {
    pub facet: usize,
    pub descents: Support,
    /// Maximal faces of the intersection with the earlier facets.
    pub maximal: Vec<Support>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShellingVerdict {
    Pass,
    /// `step` is 1-based; `witness` is a maximal old face of codimension
    /// greater than one.
    Fail {
        step: usize,
        facet: usize,
        witness: Support,
        codimension: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingCertificate {
    pub order: Vec<usize>,
    pub steps: Vec<ShellingStep>,
    pub verdict: ShellingVerdict,
}

impl ShellingCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == ShellingVerdict::Pass
    }

    /// 1-based steps whose intersection with the earlier facets is not pure
    /// of codimension one.
    pub fn failing_steps(&self, colors: usize) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, st)| st.maximal.iter().any(|m| m.len() + 1 != colors))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Checks that every facet meets the union of the earlier ones in a pure
/// codimension-one subcomplex.
pub fn verify_shelling(
    c: &BalancedComplex,
    order: &[usize],
) -> Result<ShellingCertificate, ComplexError> {
    let idx = OrderIndex::new(c, order)?;
    let d = c.colors();
    let mut verdict = ShellingVerdict::Pass;
    let mut steps = Vec::with_capacity(order.len());
    for (j, &facet) in order.iter().enumerate() {
        let maximal = idx.maximal_old_faces(c, facet);
        if verdict == ShellingVerdict::Pass {
            if let Some(bad) = maximal.iter().find(|m| m.len() + 1 != d) {
                verdict = ShellingVerdict::Fail {
                    step: j + 1,
                    facet,
                    witness: *bad,
                    codimension: d - bad.len(),
                };
            }
        }
        steps.push(ShellingStep {
            facet,
            descents: idx.descents(c, facet),
            maximal,
        });
    }
    Ok(ShellingCertificate {
        order: order.to_vec(),
        steps,
        verdict,
    })
}

/// Exhaustive search for a shelling order.
///
/// Facets are tried in index order. Whether a prefix can be completed only
/// depends on its set of facets, so dead sets are memoized.
pub fn shelling_exists(c: &BalancedComplex, budget: u64) -> SearchOutcome<Vec<usize>> {
    let mut search = ShellSearch {
        c,
        covered: vec![0; c.cell_count()],
        used: vec![false; c.facet_count()],
        order: Vec::new(),
        dead: HashSet::new(),
        nodes: 0,
        budget,
    };
    match search.extend() {
        Step::Done => SearchOutcome::Found(search.order),
        Step::Dead => SearchOutcome::NoneExists { nodes: search.nodes },
        Step::OutOfBudget => SearchOutcome::BudgetExceeded { nodes: search.nodes },
    }
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

struct ShellSearch<'a> {
    c: &'a BalancedComplex,
    covered: Vec<u32>,
    used: Vec<bool>,
    order: Vec<usize>,
    dead: HashSet<Vec<bool>>,
    nodes: u64,
    budget: u64,
}

impl ShellSearch<'_> {
    /// Whether `facet` can be appended: its new faces must be exactly the
    /// supersets of its descent set.
    fn fits(&self, facet: usize) -> bool {
        let c = self.c;
        let full = c.full_support();
        let old = |s: Support| self.covered[c.cell_id(facet, s) as usize] > 0;
        let descents = full
            .colors()
            .filter(|&r| old(full.remove(r)))
            .fold(Support::EMPTY, Support::insert);
        descents.supersets_within(full).all(|s| !old(s))
    }

    fn toggle(&mut self, facet: usize, add: bool) {
        for s in self.c.full_support().subsets() {
            let id = self.c.cell_id(facet, s) as usize;
            if add {
                self.covered[id] += 1;
            } else {
                self.covered[id] -= 1;
            }
        }
        self.used[facet] = add;
    }

    fn extend(&mut self) -> Step {
        if self.order.len() == self.c.facet_count() {
            return Step::Done;
        }
        if self.dead.contains(&self.used) {
            return Step::Dead;
        }
        for facet in 0..self.c.facet_count() {
            if self.used[facet] || !self.fits(facet) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.toggle(facet, true);
            self.order.push(facet);
            match self.extend() {
                Step::Dead => {
                    self.order.pop();
                    self.toggle(facet, false);
                }
                other => return other,
            }
        }
        self.dead.insert(self.used.clone());
        Step::Dead
    }
}
