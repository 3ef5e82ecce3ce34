use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::tree::{lex_complex, PartitionFacet, SplitTree};
use crate::complex::{verify_partitioning, CellKey, OrderIndex, PartitionAssignment, PartitioningVerdict, verify_shelling};
use crate::error::BuildError;
use crate::support::Support;

/// Blocks `B_1, …, B_m` of equal size created left to right by consecutive
/// splits of one parent, with the minimal-face data computed for them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarRun {
    /// Rank creating `B_1`.
    pub first_rank: usize,
    pub m: usize,
    pub block_size: usize,
    /// The last two blocks come from a single split.
    pub twins: bool,
    /// Splitter ranks that are ranks of the link, left to right.
    pub splitters: Vec<usize>,
    /// Ranks between two consecutive refinements of the run's blocks.
    pub slot_ranks: Vec<usize>,
    /// Final block order `σ`, blocks numbered `1..=m` left to right.
    pub final_order: Vec<usize>,
    /// Link ranks placed in the minimal face.
    pub chosen: Vec<usize>,
}

/// How a facet's minimal face was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FacetRule {
    /// Topological descents of a lexicographic shelling step.
    Shelling,
    /// Non-shelling step: link rules on each run, topological descents on
    /// the remaining ranks.
    Link { runs: Vec<SimilarRun>, external: Support },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitioningReport {
    pub n: usize,
    /// Facet names in lexicographic order.
    pub names: Vec<String>,
    pub assignment: PartitionAssignment,
    pub rules: Vec<FacetRule>,
    /// Lexicographic positions of the non-shelling steps.
    pub non_shelling: Vec<usize>,
    pub verdict: PartitioningVerdict,
    /// Count of minimal faces per support, indexed by support bits.
    pub histogram: Vec<i64>,
    pub flag_h: Vec<i64>,
}

impl PartitioningReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed() && self.histogram == self.flag_h
    }
}

/// Positions (in lexicographic order) of facets whose intersection with the
/// earlier facets is not pure of codimension one.
pub fn non_shelling_facets(n: usize) -> Result<Vec<usize>, BuildError> {
    let (_, c) = lex_complex(n)?;
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let cert = verify_shelling(&c, &order)?;
    Ok(cert.failing_steps(c.colors()).into_iter().map(|s| s - 1).collect())
}

/// Assigns a minimal face to every facet of `Δ(Π_n)/S_n` and verifies the
/// result. A failed verification is reported in the returned verdict.
pub fn build_partitioning(n: usize) -> Result<PartitioningReport, BuildError> {
    build_partitioning_with(n, RuleScope::NonShelling)
}

/// Which facets take the link rules.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleScope {
    /// Only facets that are not lexicographic shelling steps.
    #[default]
    NonShelling,
    /// Every facet containing a run of similar blocks.
    AllRuns,
}

pub fn build_partitioning_with(n: usize, scope: RuleScope) -> Result<PartitioningReport, BuildError> {
    Builder {
        scope,
        blocks: HashMap::new(),
    }
    .build(n)
}

struct Builder {
    scope: RuleScope,
    /// Per block size: facet lookup by full key, and minimal faces.
    blocks: HashMap<usize, (HashMap<CellKey, usize>, Vec<Support>)>,
}

impl Builder {
    fn build(&mut self, n: usize) -> Result<PartitioningReport, BuildError> {
        let (facets, c) = lex_complex(n)?;
        let order: Vec<usize> = (0..c.facet_count()).collect();
        let idx = OrderIndex::new(&c, &order)?;
        let cert = verify_shelling(&c, &order)?;
        let non_shelling: Vec<usize> = cert.failing_steps(c.colors()).into_iter().map(|s| s - 1).collect();
        let mut minimal = Vec::with_capacity(facets.len());
        let mut rules = Vec::with_capacity(facets.len());
        for (f, facet) in facets.iter().enumerate() {
            let descents = idx.descents(&c, f);
            let shapes = find_runs(&facet.tree);
            let use_rule = match self.scope {
                RuleScope::NonShelling => non_shelling.contains(&f),
                RuleScope::AllRuns => !shapes.is_empty(),
            };
            if !use_rule {
                minimal.push(descents);
                rules.push(FacetRule::Shelling);
                continue;
            }
            let mut runs = Vec::new();
            let mut link = Support::EMPTY;
            let mut chosen = Support::EMPTY;
            for shape in &shapes {
                let run = self.apply_rule(facet, shape)?;
                for &r in run.splitters.iter().chain(&run.slot_ranks) {
                    link = link.insert(r);
                }
                for &r in &run.chosen {
                    chosen = chosen.insert(r);
                }
                runs.push(run);
            }
            let external = descents.difference(link);
            minimal.push(external.union(chosen));
            rules.push(FacetRule::Link { runs, external });
        }
        let assignment = PartitionAssignment::new(minimal);
        let verdict = verify_partitioning(&c, &assignment)?;
        let histogram = assignment.histogram(c.colors());
        let flag_h = (0..1usize << c.colors())
            .map(|bits| c.flag_h().get(Support::from_bits(bits as u16)))
            .collect();
        Ok(PartitioningReport {
            n,
            names: c.facet_names().to_vec(),
            assignment,
            rules,
            non_shelling,
            verdict,
            histogram,
            flag_h,
        })
    }

    /// Minimal face of a block's own refinement in `Δ(Π_b)/S_b`.
    fn block_face(&mut self, tree: &SplitTree, block: usize) -> Result<Support, BuildError> {
        let sub = tree.subtree(block);
        let b = sub.n();
        if b < 3 {
            return Ok(Support::EMPTY);
        }
        if !self.blocks.contains_key(&b) {
            let report = self.build(b)?;
            let (facets, _) = lex_complex(b)?;
            let keys = facets
                .iter()
                .enumerate()
                .map(|(i, f)| (f.tree.forest_key(Support::full(b - 2)), i))
                .collect();
            self.blocks.insert(b, (keys, report.assignment.minimal));
        }
        let (keys, faces) = &self.blocks[&b];
        let i = keys[&sub.forest_key(Support::full(b - 2))];
        Ok(faces[i])
    }

    fn apply_rule(&mut self, facet: &PartitionFacet, shape: &RunShape) -> Result<SimilarRun, BuildError> {
        let tree = &facet.tree;
        let n = facet.n();
        let m = shape.blocks.len();
        let top = n - 1;
        let owner = |t: usize| -> Option<usize> {
            let node = tree.split_at(t)?;
            shape.blocks.iter().position(|&b| tree.is_under(node, b))
        };
        let owners: Vec<Option<usize>> = (0..=top).map(|t| if t == 0 { None } else { owner(t) }).collect();
        let offsets = leaf_offsets(facet);
        let slot = |t: usize, b: usize| -> usize {
            let p = facet.bar_ranks.iter().position(|&r| r == t).expect("every rank has a bar") + 1;
            p - offsets[shape.blocks[b]]
        };
        let mut faces = Vec::with_capacity(m);
        for &b in &shape.blocks {
            faces.push(self.block_face(tree, b)?);
        }
        let created = shape.first_rank + m - 1 - usize::from(shape.twins);
        let splitters: Vec<usize> = (0..m - 1 - usize::from(shape.twins))
            .map(|i| shape.first_rank + i)
            .filter(|&r| r <= n - 2)
            .collect();
        let slot_ranks: Vec<usize> = (created + 1..=n - 2)
            .filter(|&t| owners[t].is_some() && owners[t + 1].is_some())
            .collect();

        let mut order: Vec<usize> = (0..m).collect();
        let mut class: Vec<usize> = vec![0; m];
        let mut next_class = 1;
        let mut rounds: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
        let mut count = vec![0usize; m];
        let mut first_insert = vec![None; m];
        let mut chosen = Vec::new();
        let mut t = created + 1;
        let mut last_was_visit: Option<usize> = None;
        while t <= top {
            let Some(b) = owners[t] else {
                for (c, (_, visited)) in rounds.drain() {
                    split_class(&mut class, &mut next_class, c, &visited);
                }
                last_was_visit = None;
                t += 1;
                continue;
            };
            let start = t;
            let mut pattern = Vec::new();
            let mut clean = true;
            loop {
                let pos_before: Vec<usize> = positions(&order);
                move_last(&mut order, &class, b);
                count[b] += 1;
                first_insert[b].get_or_insert(t);
                pattern.push(slot(t, b));
                if t < top && t <= n - 2 {
                    if let Some(b2) = owners[t + 1] {
                        let include = if b2 == b {
                            let inner = faces[b].contains(count[b]);
                            clean &= !inner;
                            inner
                        } else {
                            let (s, s2) = (slot(t, b), slot(t + 1, b2));
                            s > s2 || (s == s2 && pos_before[b] > pos_before[b2])
                        };
                        if include {
                            chosen.push(t);
                        }
                    }
                }
                if t < top && owners[t + 1] == Some(b) {
                    t += 1;
                } else {
                    break;
                }
            }
            let _ = start;
            let c = class[b];
            if !clean {
                if let Some((_, visited)) = rounds.remove(&c) {
                    split_class(&mut class, &mut next_class, c, &visited);
                }
                class[b] = next_class;
                next_class += 1;
            } else {
                let continues = match rounds.get(&c) {
                    Some((p, visited)) => *p == pattern && !visited.contains(&b) && last_was_visit.map(|x| class[x]) == Some(c),
                    None => false,
                };
                if continues {
                    rounds.get_mut(&c).expect("round").1.push(b);
                } else {
                    if let Some((_, visited)) = rounds.remove(&c) {
                        split_class(&mut class, &mut next_class, c, &visited);
                    }
                    rounds.insert(class[b], (pattern, vec![b]));
                }
                let cb = class[b];
                let size = class.iter().filter(|&&x| x == cb).count();
                if rounds.get(&cb).is_some_and(|(_, v)| v.len() == size) {
                    rounds.remove(&cb);
                }
            }
            last_was_visit = Some(b);
            t += 1;
        }
        let pos = positions(&order);
        for (i, &r) in splitters.iter().enumerate() {
            if pos[i] > pos[i + 1] {
                chosen.push(r);
            }
        }
        if shape.twins && pos[m - 2] > pos[m - 1] {
            if let Some(r) = first_insert[m - 2].filter(|&r| r <= n - 2) {
                chosen.push(r);
            }
        }
        chosen.sort_unstable();
        chosen.dedup();
        Ok(SimilarRun {
            first_rank: shape.first_rank,
            m,
            block_size: tree.node(shape.blocks[0]).size,
            twins: shape.twins,
            splitters,
            slot_ranks,
            final_order: order.iter().map(|&b| b + 1).collect(),
            chosen,
        })
    }
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (p, &b) in order.iter().enumerate() {
        pos[b] = p;
    }
    pos
}

/// Moves `b` just after the last block of its class.
fn move_last(order: &mut Vec<usize>, class: &[usize], b: usize) {
    let from = order.iter().position(|&x| x == b).expect("block in order");
    order.remove(from);
    let last = order.iter().rposition(|&x| class[x] == class[b]).map_or(from, |p| (p + 1).max(from));
    order.insert(last, b);
}

/// Blocks of class `c` visited in an unfinished round keep the class; the
/// others move to a new one.
fn split_class(class: &mut [usize], next: &mut usize, c: usize, visited: &[usize]) {
    let rest: Vec<usize> = (0..class.len()).filter(|&b| class[b] == c && !visited.contains(&b)).collect();
    if rest.is_empty() || rest.len() == class.iter().filter(|&&x| x == c).count() {
        return;
    }
    for b in rest {
        class[b] = *next;
    }
    *next += 1;
}

/// Start of each node in the final planar layout.
fn leaf_offsets(facet: &PartitionFacet) -> Vec<usize> {
    let nodes = &facet.tree.nodes;
    let mut start = vec![usize::MAX; nodes.len()];
    let mut acc = 0;
    for &leaf in &facet.leaves {
        let mut up = Some(leaf);
        while let Some(x) = up {
            start[x] = start[x].min(acc);
            up = nodes[x].parent;
        }
        acc += nodes[leaf].size;
    }
    start
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RunShape {
    first_rank: usize,
    blocks: Vec<usize>,
    twins: bool,
}

/// Maximal runs of at least two equal blocks of size at least two, each
/// split off as the left child of the previous remainder at consecutive
/// ranks.
fn find_runs(tree: &SplitTree) -> Vec<RunShape> {
    let nodes = &tree.nodes;
    let mut out = Vec::new();
    for (x, node) in nodes.iter().enumerate() {
        let Some([a, b]) = node.children else { continue };
        let s = nodes[a].size;
        if s < 2 {
            continue;
        }
        if let Some(p) = node.parent {
            let [pa, pb] = nodes[p].children.expect("parent is split");
            if pb == x && nodes[pa].size == s && nodes[p].split_rank + 1 == node.split_rank {
                continue;
            }
        }
        let mut blocks = vec![a];
        let mut cur = b;
        let mut rank = node.split_rank;
        let mut twins = false;
        loop {
            if nodes[cur].size == s {
                blocks.push(cur);
                twins = true;
                break;
            }
            match nodes[cur].children {
                Some([l, r]) if nodes[cur].split_rank == rank + 1 && nodes[l].size == s => {
                    blocks.push(l);
                    cur = r;
                    rank += 1;
                }
                _ => break,
            }
        }
        if blocks.len() >= 2 {
            out.push(RunShape {
                first_rank: node.split_rank,
                blocks,
                twins,
            });
        }
    }
    out
}
