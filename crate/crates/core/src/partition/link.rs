use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::label::{Label3, Labelling, Planar};
use crate::complex::{build_complex, BalancedComplex, OrderIndex};
use crate::error::BuildError;
use crate::perm::all_permutations;
use crate::support::Support;

/// Variant of the link subcomplex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkOptions {
    /// The last two of the `m` blocks are created in a single step, so the
    /// rightmost splitter is not a rank of the link and the two blocks are
    /// interchangeable until a slot rank separates them.
    pub final_twins: bool,
}

/// A tuple `(σ_0, …, σ_k)` of one-line permutations of `1..=m`.
pub type SigmaTuple = Vec<Vec<usize>>;

fn check_tuple(m: usize, k: usize, sigmas: &[Vec<usize>], options: LinkOptions) -> Result<(), BuildError> {
    let bad = |msg: String| Err(BuildError::Unsupported(msg));
    if m < 2 || k < 1 {
        return bad(format!("need m ≥ 2 and k ≥ 1, got m={m}, k={k}"));
    }
    if sigmas.len() != k + 1 {
        return bad(format!("expected {} permutations, got {}", k + 1, sigmas.len()));
    }
    for (l, s) in sigmas.iter().enumerate() {
        let mut seen = vec![false; m + 1];
        if s.len() != m || s.iter().any(|&x| x == 0 || x > m || std::mem::replace(&mut seen[x], true)) {
            return bad(format!("σ_{l} is not a permutation of 1..{m}"));
        }
    }
    if sigmas[0].iter().enumerate().any(|(i, &x)| x != i + 1) {
        return bad("σ_0 must be the identity".into());
    }
    if options.final_twins && position(&sigmas[1], m) < position(&sigmas[1], m - 1) {
        return bad("the left twin must be refined first in slot 1".into());
    }
    Ok(())
}

fn position(sigma: &[usize], b: usize) -> usize {
    sigma.iter().position(|&x| x == b).expect("checked permutation")
}

fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &x) in sigma.iter().enumerate() {
        inv[x - 1] = i + 1;
    }
    inv
}

/// `ρ_l = σ_{l-1}⁻¹ ∘ σ_l` for `l = 1..k`, and `ρ_0 = σ_k⁻¹ ∘ σ_0`.
fn rhos(sigmas: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let k = sigmas.len() - 1;
    (0..=k)
        .map(|l| {
            let prev = if l == 0 { k } else { l - 1 };
            let inv = inverse(&sigmas[prev]);
            sigmas[l].iter().map(|&x| inv[x - 1]).collect()
        })
        .collect()
}

/// Minimal face of the facet `(σ_0, …, σ_k)`, as link ranks `lm + j`
/// (`0 ≤ l ≤ k`, `1 ≤ j < m`).
///
/// With twins, a wrap-around descent on the bar between the twins is
/// replaced by the slot-1 rank at which the left twin is refined.
pub fn link_subcomplex_minimal_face(
    m: usize,
    k: usize,
    sigmas: &[Vec<usize>],
    options: LinkOptions,
) -> Result<Vec<usize>, BuildError> {
    check_tuple(m, k, sigmas, options)?;
    Ok(minimal_face_unchecked(m, sigmas, options))
}

fn minimal_face_unchecked(m: usize, sigmas: &[Vec<usize>], options: LinkOptions) -> Vec<usize> {
    let mut out = BTreeSet::new();
    for (l, rho) in rhos(sigmas).iter().enumerate() {
        for j in 1..m {
            if rho[j - 1] > rho[j] {
                if options.final_twins && l == 0 && j == m - 1 {
                    out.insert(m + position(&sigmas[1], m - 1) + 1);
                } else {
                    out.insert(l * m + j);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// All link ranks `lm + j`, increasing.
pub fn link_ranks(m: usize, k: usize, options: LinkOptions) -> Vec<usize> {
    (0..=k)
        .flat_map(|l| (1..m).map(move |j| l * m + j))
        .filter(|&r| !(options.final_twins && r == m - 1))
        .collect()
}

/// All facets of the link subcomplex: tuples with `σ_0` the identity (and
/// the left twin first in slot 1 when twins are present), in lexicographic
/// order of `(σ_1, …, σ_k)`.
pub fn link_tuples(m: usize, k: usize, options: LinkOptions) -> Vec<SigmaTuple> {
    let perms = all_permutations(m);
    let id: Vec<usize> = (1..=m).collect();
    let mut out = vec![vec![id]];
    for s in 1..=k {
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for t in &out {
            for p in &perms {
                let p: Vec<usize> = p.iter().map(|&x| x + 1).collect();
                if s == 1 && options.final_twins && position(&p, m) < position(&p, m - 1) {
                    continue;
                }
                let mut u = t.clone();
                u.push(p);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// What a face of the link records about each block: for each slot rank
/// in the support, whether the block already has that slot's bar. Blocks
/// between consecutive included splitters are interchangeable, so the face
/// is the multiset of histories within each such group.
fn face_signature(m: usize, support: &[usize], sigmas: &[Vec<usize>], options: LinkOptions) -> Vec<Vec<Vec<bool>>> {
    let slot_ranks: Vec<(usize, usize)> = support.iter().filter(|&&r| r > m).map(|&r| (r / m, r % m)).collect();
    let history = |b: usize| -> Vec<bool> {
        slot_ranks
            .iter()
            .map(|&(s, t)| position(&sigmas[s], b) < t)
            .collect()
    };
    groups(m, support, options)
        .into_iter()
        .map(|g| {
            let mut hs: Vec<Vec<bool>> = g.into_iter().map(history).collect();
            hs.sort();
            hs
        })
        .collect()
}

/// Blocks `1..=m` cut by the splitters in `support`.
fn groups(m: usize, support: &[usize], options: LinkOptions) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for b in 1..=m {
        out.last_mut().expect("nonempty").push(b);
        let cut = b < m && support.contains(&b) && !(options.final_twins && b == m - 1);
        if cut {
            out.push(Vec::new());
        }
    }
    out
}

/// Extends the face of `support` in the facet `sigmas` to the unique facet
/// whose minimal face lies inside `support`.
///
/// Every relabelling of blocks within splitter groups is a representation
/// of the face; each is extended by filling slot 1 in block order and slot
/// `s + 1` in `σ_s` order between consecutive included ranks.
pub fn extend_face_to_facet(
    m: usize,
    k: usize,
    support: &[usize],
    sigmas: &[Vec<usize>],
    options: LinkOptions,
) -> Result<SigmaTuple, BuildError> {
    check_tuple(m, k, sigmas, options)?;
    let ranks = link_ranks(m, k, options);
    if let Some(r) = support.iter().find(|r| !ranks.contains(r)) {
        return Err(BuildError::Unsupported(format!("{r} is not a link rank")));
    }
    let target = face_signature(m, support, sigmas, options);
    let mut found = BTreeSet::new();
    for relabel in group_relabellings(&groups(m, support, options), m) {
        let mut rep: SigmaTuple = sigmas.to_vec();
        for s in rep.iter_mut().skip(1) {
            for x in s.iter_mut() {
                *x = relabel[*x];
            }
        }
        let ext = increasing_extension(m, support, &rep);
        if options.final_twins && position(&ext[1], m) < position(&ext[1], m - 1) {
            continue;
        }
        let g = minimal_face_unchecked(m, &ext, options);
        if g.iter().all(|r| support.contains(r)) && face_signature(m, support, &ext, options) == target {
            found.insert(ext);
        }
    }
    let mut found = found.into_iter();
    match (found.next(), found.next()) {
        (Some(f), None) => Ok(f),
        (None, _) => Err(BuildError::NotAPartitioning(format!("face {support:?} lies in no interval"))),
        (Some(_), Some(_)) => Err(BuildError::NotAPartitioning(format!("face {support:?} lies in several intervals"))),
    }
}

/// Maps `b ↦ relabel[b]` (index 0 unused) permuting each group internally.
fn group_relabellings(groups: &[Vec<usize>], m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![(0..=m).collect::<Vec<usize>>()];
    for g in groups {
        let mut next = Vec::new();
        for base in &out {
            for p in all_permutations(g.len()) {
                let mut r = base.clone();
                for (i, &b) in g.iter().enumerate() {
                    r[b] = g[p[i]];
                }
                next.push(r);
            }
        }
        out = next;
    }
    out
}

/// The facet through the face given by `rep` at `support` that has no
/// descents of `ρ_1, …, ρ_k` between consecutive included slot ranks.
fn increasing_extension(m: usize, support: &[usize], rep: &[Vec<usize>]) -> SigmaTuple {
    let k = rep.len() - 1;
    let mut out: SigmaTuple = vec![(1..=m).collect()];
    for s in 1..=k {
        let cuts: Vec<usize> = support
            .iter()
            .filter(|&&r| r > s * m && r < (s + 1) * m)
            .map(|&r| r - s * m)
            .chain([m])
            .collect();
        let prev_inv = inverse(&out[s - 1]);
        let mut sigma = Vec::with_capacity(m);
        let mut from = 0;
        for t in cuts {
            let mut chunk: Vec<usize> = rep[s][from..t].to_vec();
            chunk.sort_by_key(|&b| prev_inv[b - 1]);
            sigma.extend(chunk);
            from = t;
        }
        out.push(sigma);
    }
    out
}

/// The link subcomplex realized inside `Δ(Π_n)/S_n`, with its facets in
/// the lexicographic order of their labels.
#[derive(Clone, Debug)]
pub struct LinkSubcomplex {
    pub m: usize,
    pub k: usize,
    pub options: LinkOptions,
    pub n: usize,
    pub tuples: Vec<SigmaTuple>,
    pub labels: Vec<Vec<Label3>>,
    /// Link ranks `lm + j` for the link's colors `1..`, in order.
    pub link_ranks: Vec<usize>,
    /// Ranks of the face whose link this is, in the ambient complex.
    pub face: Support,
    pub complex: BalancedComplex,
}

impl LinkSubcomplex {
    /// Topological descents of each facet in the stored order, as link ranks.
    pub fn descents(&self) -> Vec<Vec<usize>> {
        let order: Vec<usize> = (0..self.complex.facet_count()).collect();
        let idx = OrderIndex::new(&self.complex, &order).expect("identity order");
        order
            .iter()
            .map(|&f| idx.descents(&self.complex, f).colors().map(|c| self.link_ranks[c - 1]).collect())
            .collect()
    }

    /// Converts link ranks to a support on the link's colors.
    pub fn to_support(&self, ranks: &[usize]) -> Support {
        Support::from_colors(ranks.iter().map(|r| {
            1 + self.link_ranks.iter().position(|x| x == r).expect("link rank")
        }))
    }
}

/// Builds the link subcomplex for `(m, k)`.
///
/// Without twins, `m` blocks of size `k+1` are split off left to right and
/// the remaining block of size `k+2` sheds singletons after the slots are
/// filled; ranks are exactly `lm + j`. With twins there is no extra block
/// and ambient slot ranks are one less than link ranks.
pub fn embedded_link_complex(m: usize, k: usize, options: LinkOptions) -> Result<LinkSubcomplex, BuildError> {
    if m < 2 || k < 1 {
        return Err(BuildError::Unsupported(format!("need m ≥ 2 and k ≥ 1, got m={m}, k={k}")));
    }
    let n = if options.final_twins { m * (k + 1) } else { m * (k + 1) + k + 2 };
    let shift = usize::from(options.final_twins);
    let link = link_ranks(m, k, options);
    let ambient: BTreeSet<usize> = link.iter().map(|&r| if r < m { r } else { r - shift }).collect();
    let face = Support::from_colors((1..=n - 2).filter(|r| !ambient.contains(r)));
    let mut chains: Vec<(Planar, SigmaTuple)> = link_tuples(m, k, options)
        .into_iter()
        .map(|t| realize(m, k, n, &t, options).map(|p| (p, t)))
        .collect::<Result<_, _>>()?;
    chains.sort_by(|a, b| a.0.labels().cmp(b.0.labels()).then_with(|| a.1.cmp(&b.1)));
    let full = build_complex(
        n - 2,
        &chains,
        |(_, t)| tuple_name(t),
        |(p, _), s| p.tree().forest_key(s),
    )?;
    let id = full.cell_id(0, face);
    if (0..full.facet_count()).any(|f| full.cell_id(f, face) != id) {
        return Err(BuildError::MalformedChain("embedded facets do not share the face".into()));
    }
    let complex = full.link(0, face)?;
    Ok(LinkSubcomplex {
        m,
        k,
        options,
        n,
        labels: chains.iter().map(|(p, _)| p.labels().to_vec()).collect(),
        tuples: chains.into_iter().map(|(_, t)| t).collect(),
        link_ranks: link,
        face,
        complex,
    })
}

pub fn tuple_name(t: &[Vec<usize>]) -> String {
    let parts: Vec<String> = t
        .iter()
        .map(|s| {
            let sep = if s.len() > 9 { "," } else { "" };
            s.iter().map(usize::to_string).collect::<Vec<_>>().join(sep)
        })
        .collect();
    parts.join(" ")
}

fn realize(m: usize, k: usize, n: usize, tuple: &[Vec<usize>], options: LinkOptions) -> Result<Planar, BuildError> {
    let mut p = Planar::new(n, Labelling::Sorted);
    let split = |p: &mut Planar, node: usize, left: usize| -> Result<[usize; 2], BuildError> {
        let block = p.leaves().iter().position(|&x| x == node).expect("live block");
        p.step(block, left)?;
        Ok(p.tree().node(node).children.expect("just split"))
    };
    let mut blocks = vec![0; m + 1];
    let mut rest = 0;
    let splitters = if options.final_twins { m - 1 } else { m };
    for b in blocks.iter_mut().skip(1).take(splitters) {
        let [a, r] = split(&mut p, rest, k + 1)?;
        *b = a;
        rest = r;
    }
    if options.final_twins {
        blocks[m] = rest;
    }
    for sigma in &tuple[1..] {
        for &b in sigma {
            let [_, r] = split(&mut p, blocks[b], 1)?;
            blocks[b] = r;
        }
    }
    if !options.final_twins {
        while !p.is_complete() {
            let [_, r] = split(&mut p, rest, 1)?;
            rest = r;
        }
    }
    debug_assert!(p.is_complete());
    Ok(p)
}
