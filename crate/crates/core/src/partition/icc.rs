use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::label::{Labelling, Planar};
use super::tree::lex_complex;
use crate::complex::{build_complex, BalancedComplex, CellKey, OrderIndex};
use crate::error::BuildError;
use crate::support::Support;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IccScope {
    /// Every rooted edge-interval.
    All,
    /// At most this many root cells per pair of interval endpoints.
    Sample(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IccWitness {
    /// A facet through the root cell, and the root's support.
    pub facet: usize,
    pub root: Support,
    /// Interval chains (by position in the interval order) with no
    /// topological descent inside the interval.
    pub increasing: Vec<usize>,
    /// Names of those chains' first facets.
    pub names: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IccVerdict {
    Pass { intervals: usize },
    Fail(IccWitness),
}

/// Facets of an interval complex (in their given order) with no
/// topological descent. The increasing chain condition holds when this is
/// exactly `[0]`.
pub fn icc_on_interval(c: &BalancedComplex) -> Vec<usize> {
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let idx = OrderIndex::new(c, &order).expect("identity order");
    order.into_iter().filter(|&f| idx.descents(c, f).is_empty()).collect()
}

/// Checks the increasing chain condition on rooted edge-intervals of
/// `Δ(Π_n)/S_n` in lexicographic facet order. A root is a cell of support
/// `{1..i} ∪ {j}` (or `{1..i}` for intervals reaching the top); its
/// interval chains are the cells of support `{1..j}` above it, ordered by
/// their first facet.
pub fn check_icc(n: usize, scope: IccScope) -> Result<IccVerdict, BuildError> {
    let (_, c) = lex_complex(n)?;
    let d = c.colors();
    let mut intervals = 0;
    for i in 0..=d {
        for j in i + 2..=d + 1 {
            let mut root = Support::range(1, i);
            if j <= d {
                root = root.insert(j);
            }
            let interior = Support::range(1, j - i - 1);
            let mut seen = HashSet::new();
            for f in 0..c.facet_count() {
                if !seen.insert(c.cell_id(f, root)) {
                    continue;
                }
                if let IccScope::Sample(cap) = scope {
                    if seen.len() > cap {
                        break;
                    }
                }
                intervals += 1;
                let chains = c.link(f, root)?.rank_select(interior);
                let increasing = icc_on_interval(&chains);
                if increasing != [0] {
                    let names = increasing.iter().map(|&x| chains.facet_name(x).to_string()).collect();
                    return Ok(IccVerdict::Fail(IccWitness {
                        facet: f,
                        root,
                        increasing,
                        names,
                    }));
                }
            }
        }
    }
    Ok(IccVerdict::Pass { intervals })
}

/// The interval from `11|11` to `1|1|9|2|2|7` in `Π_22`, as a complex on
/// its three interior ranks with chains ordered by their labels under the
/// given labelling. Facet names are the interval's label words.
pub fn presort_interval_example(mode: Labelling) -> Result<BalancedComplex, BuildError> {
    let mut root = Planar::new(22, mode);
    root.step(0, 11)?;
    let mut chains = Vec::new();
    extend(&root, 4, &mut chains);
    chains.retain(reaches_target);
    chains.sort_by(|a, b| a.labels().cmp(b.labels()).then_with(|| a.encoding().cmp(&b.encoding())));
    let name = |p: &Planar| {
        let bars: Vec<String> = p.labels()[1..].iter().map(|l| l.bar.to_string()).collect();
        bars.join(",")
    };
    Ok(build_complex(3, &chains, name, |p, s| {
        let levels = Support::from_colors([1, 5]).union(s.map_colors(|r| r + 1));
        CellKey::new(p.tree().forest_key(levels).code, s)
    })?)
}

fn extend(p: &Planar, steps: usize, out: &mut Vec<Planar>) {
    if steps == 0 {
        out.push(p.clone());
        return;
    }
    for (block, left) in p.candidates() {
        let mut q = p.clone();
        q.step(block, left).expect("candidate steps are valid");
        extend(&q, steps - 1, out);
    }
}

/// One eleven refined to `1,1,9` and the other to `2,2,7`.
fn reaches_target(p: &Planar) -> bool {
    let tree = p.tree();
    let [a, b] = tree.node(0).children.expect("root is split");
    let parts = |top: usize| {
        let mut sizes: Vec<usize> = tree
            .alive_at(tree.rank())
            .into_iter()
            .filter(|&x| tree.is_under(x, top))
            .map(|x| tree.node(x).size)
            .collect();
        sizes.sort_unstable();
        sizes
    };
    let mut pair = [parts(a), parts(b)];
    pair.sort();
    pair == [vec![1, 1, 9], vec![2, 2, 7]]
}
