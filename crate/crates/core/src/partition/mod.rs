//! The quotient `Δ(Π_n)/S_n` of the partition lattice.
//!
//! Ranks count blocks minus one, so the single-block partition sits at
//! rank 0 and the proper part uses ranks (colors) `1..=n-2`. A maximal
//! chain orbit is a binary refinement tree whose internal nodes carry the
//! rank at which they split ([`SplitTree`]); faces are identified by the
//! canonical code of their level forest ([`partition_key`]).

mod icc;
mod label;
mod link;
mod partitioning;
mod tables;
mod tree;

pub use icc::{check_icc, icc_on_interval, presort_interval_example, IccScope, IccVerdict, IccWitness};
pub use label::{decode_labels, label_facet, presort_labels, Label3, Labelling, Planar};
pub use link::{
    embedded_link_complex, extend_face_to_facet, link_ranks, link_subcomplex_minimal_face,
    link_tuples, tuple_name, LinkOptions, LinkSubcomplex, SigmaTuple,
};
pub use partitioning::{
    build_partitioning, build_partitioning_with, non_shelling_facets, FacetRule, PartitioningReport,
    RuleScope, SimilarRun,
};
pub use tables::{b_s_table, conjecture_scan, convert_support, rp2_witness, BsTable, Rp2Report, ScanRow};
pub use tree::{
    enumerate_partition_facets, label_ties, lex_quotient, partition_complex, FacetEncoding, PartitionFacet, SplitRecord,
    SplitTree,
};

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::complex::CellKey;
use crate::error::BuildError;
use crate::support::Support;

/// Default largest `n` for which facets are enumerated.
pub const DEFAULT_MAX_N: usize = 9;

static FACET_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_N);

/// Largest `n` accepted by the operations that enumerate all facets.
pub fn facet_cap() -> usize {
    FACET_CAP.load(Ordering::Relaxed)
}

/// Raises or lowers [`facet_cap`] for the whole process.
pub fn set_facet_cap(cap: usize) {
    FACET_CAP.store(cap, Ordering::Relaxed);
}

/// Largest ground set accepted by the chain utilities.
pub const MAX_GROUND: usize = 32;

/// A set partition of `{1..n}`: blocks as bit patterns, letter `i` at bit
/// `i - 1`.
pub type SetPartition = Vec<u32>;

/// Parses `"1234|5678"` or `"1,2|3,10"` into a set partition.
pub fn parse_set_partition(text: &str) -> Result<SetPartition, BuildError> {
    let bad = || BuildError::MalformedChain(text.to_string());
    text.split('|')
        .map(|block| {
            let letters: Option<Vec<u32>> = if block.contains(',') {
                block.split(',').map(|t| t.trim().parse().ok()).collect()
            } else {
                block.chars().map(|ch| ch.to_digit(10)).collect()
            };
            letters
                .filter(|ls| !ls.is_empty())
                .and_then(|ls| {
                    ls.iter().try_fold(0u32, |acc, &l| {
                        (1..=MAX_GROUND as u32).contains(&l).then(|| acc | 1 << (l - 1))
                    })
                })
                .ok_or_else(bad)
        })
        .collect()
}

fn check_set_partition(n: usize, p: &[u32]) -> Result<(), BuildError> {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut seen = 0u32;
    for &b in p {
        if b == 0 || b & seen != 0 || b & !full != 0 {
            return Err(BuildError::MalformedChain("blocks are not a partition".into()));
        }
        seen |= b;
    }
    if seen != full {
        return Err(BuildError::MalformedChain("blocks do not cover the ground set".into()));
    }
    Ok(())
}

fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    fine.iter().all(|&b| coarse.iter().any(|&c| b & !c == 0))
}

/// Forest code of `block` at `level`, with the chain's partitions below it.
fn block_code(chain: &[SetPartition], level: usize, block: u32, out: &mut Vec<u8>) {
    out.push(block.count_ones() as u8);
    let Some(next) = chain.get(level) else {
        out.push(0);
        return;
    };
    let mut kids: Vec<Vec<u8>> = next
        .iter()
        .filter(|&&b| b & !block == 0)
        .map(|&b| {
            let mut code = Vec::new();
            block_code(chain, level + 1, b, &mut code);
            code
        })
        .collect();
    kids.sort_unstable();
    out.push(kids.len() as u8);
    for k in kids {
        out.extend_from_slice(&k);
    }
}

/// Orbit key of a chain of set partitions, coarse first. The chain's
/// ranks (blocks minus one) must be the colors of `support`, in order.
pub fn partition_key(n: usize, chain: &[SetPartition], support: Support) -> Result<CellKey, BuildError> {
    if n == 0 || n > MAX_GROUND {
        return Err(BuildError::Unsupported(format!("n={n}")));
    }
    let ranks = support.to_vec();
    if ranks.len() != chain.len() {
        return Err(BuildError::MalformedChain(format!(
            "{} chain elements for support {support}",
            chain.len()
        )));
    }
    for (t, p) in chain.iter().enumerate() {
        check_set_partition(n, p)?;
        if p.len() != ranks[t] + 1 || ranks[t] + 2 > n {
            return Err(BuildError::MalformedChain(format!("element {t} has the wrong rank")));
        }
        if t > 0 && !refines(p, &chain[t - 1]) {
            return Err(BuildError::MalformedChain(format!("element {t} does not refine its predecessor")));
        }
    }
    Ok(key_unchecked(n, chain, support))
}

pub(crate) fn key_unchecked(n: usize, chain: &[SetPartition], support: Support) -> CellKey {
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut code = Vec::new();
    block_code(chain, 0, full, &mut code);
    CellKey::new(code, support)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> SetPartition {
        parse_set_partition(text).unwrap()
    }

    #[test]
    fn relabelled_pairs_share_a_key() {
        let s = Support::from_colors([1]);
        assert_eq!(
            partition_key(4, &[p("12|34")], s).unwrap(),
            partition_key(4, &[p("13|24")], s).unwrap()
        );
        assert_ne!(
            partition_key(4, &[p("12|34")], s).unwrap(),
            partition_key(4, &[p("1|234")], s).unwrap()
        );
    }

    #[test]
    fn malformed_chains_are_rejected() {
        let s = Support::from_colors([1, 2]);
        assert!(partition_key(4, &[p("12|34"), p("1|23|4")], s).is_err());
        assert!(partition_key(4, &[p("12|34")], s).is_err());
        assert!(partition_key(4, &[p("12|3")], Support::from_colors([1])).is_err());
        assert!(parse_set_partition("12||3").is_err());
    }

    #[test]
    fn multi_digit_letters() {
        let q = p("1,2,10|3,4,5,6,7,8,9");
        assert_eq!(q.len(), 2);
        assert_eq!(q[0], 0b10_0000_0011);
    }
}
