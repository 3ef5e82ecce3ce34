use serde::{Deserialize, Serialize};

use super::{BalancedComplex, OrderIndex};
use crate::error::ComplexError;
use crate::support::Support;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingWitness {
    pub later: usize,
    pub earlier: usize,
    /// Support of the shared face whose complement is disconnected.
    pub support: Support,
    /// Length of the longest initial run `1..=r` shared by the two facets.
    pub run: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingVerdict {
    Pass,
    Fail(CrossingWitness),
}

/// Checks the crossing condition for a facet order.
///
/// For a later facet `F_k` and an earlier `F_j` sharing initial colors
/// `1..=r` (and no longer run), every shared face `σ` containing `1..=r`
/// whose complement is disconnected must lie in a larger face `τ` of `F_k`,
/// shared with some earlier facet, whose complement is the single run
/// `r+1..=s`.
pub fn check_crossing(c: &BalancedComplex, order: &[usize]) -> Result<CrossingVerdict, ComplexError> {
    let idx = OrderIndex::new(c, order)?;
    let d = c.colors();
    let full = c.full_support();
    for (pk, &k) in order.iter().enumerate() {
        // gap_ok[r][s]: F_k minus the run r+1..=s is an old face.
        let gap_ok: Vec<Vec<bool>> = (0..=d)
            .map(|r| {
                (0..=d)
                    .map(|s| s > r && idx.is_old(c, k, full.difference(Support::range(r + 1, s))))
                    .collect()
            })
            .collect();
        for &j in &order[..pk] {
            let run = (1..=d)
                .take_while(|&r| c.shares(j, k, Support::range(1, r)))
                .last()
                .unwrap_or(0);
            if run == d {
                continue;
            }
            let head = Support::range(1, run);
            for tail in Support::range(run + 2, d).subsets() {
                let s = head.union(tail);
                if full.difference(s).is_connected() || !c.shares(j, k, s) {
                    continue;
                }
                let gap_end = tail.colors().next().map_or(d, |first| first - 1);
                if !(run + 1..=gap_end).any(|end| gap_ok[run][end]) {
                    return Ok(CrossingVerdict::Fail(CrossingWitness {
                        later: k,
                        earlier: j,
                        support: s,
                        run,
                    }));
                }
            }
        }
    }
    Ok(CrossingVerdict::Pass)
}
