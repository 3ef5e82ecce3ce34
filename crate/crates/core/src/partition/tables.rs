use serde::{Deserialize, Serialize};

use super::tree::lex_complex;
use super::{key_unchecked, parse_set_partition};
use crate::complex::{betti_gf2, reduced_betti_gf2};
use crate::error::{BuildError, ComplexError};
use crate::support::Support;

/// `b_S(n)` for every `S ⊆ {1..n-2}`, indexed in the standard convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsTable {
    pub n: usize,
    pub values: Vec<(Support, i64)>,
}

impl BsTable {
    pub fn get(&self, s: Support) -> Option<i64> {
        self.values.iter().find(|(t, _)| *t == s).map(|&(_, v)| v)
    }
}

/// Converts between the standard rank convention and the complex's
/// coarse-at-bottom ranks: `i ↦ n-1-i`.
pub fn convert_support(n: usize, s: Support) -> Support {
    s.map_colors(|i| n - 1 - i)
}

pub fn b_s_table(n: usize) -> Result<BsTable, BuildError> {
    let (_, c) = lex_complex(n)?;
    let h = c.flag_h();
    let values = c
        .full_support()
        .subsets()
        .map(|s| (s, h.get(convert_support(n, s))))
        .collect();
    Ok(BsTable { n, values })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rp2Report {
    pub chain: Vec<String>,
    pub support: Support,
    pub f_vector: Vec<u64>,
    pub betti: Vec<usize>,
    pub euler: i64,
}

/// The link in `Δ(Π_8)/S_8` of `1234|5678 < 1|234|5|678 < 1|2|34|5|6|78`.
pub fn rp2_witness() -> Result<Rp2Report, BuildError> {
    let texts = ["1234|5678", "1|234|5|678", "1|2|34|5|6|78"];
    let chain = texts.iter().map(|t| parse_set_partition(t)).collect::<Result<Vec<_>, _>>()?;
    let support = Support::from_colors(chain.iter().map(|p| p.len() - 1));
    super::partition_key(8, &chain, support)?;
    let key = key_unchecked(8, &chain, support);
    let (_, c) = lex_complex(8)?;
    let facet = (0..c.facet_count())
        .find(|&f| *c.cell_key(c.cell_id(f, support)) == key)
        .ok_or(ComplexError::CellNotFound)?;
    let link = c.link(facet, support)?;
    Ok(Rp2Report {
        chain: texts.iter().map(|t| t.to_string()).collect(),
        support,
        f_vector: link.f_vector(),
        betti: betti_gf2(&link)?,
        euler: link.euler_characteristic(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    /// Ranks in the standard convention.
    pub s: Support,
    /// The same ranks in the complex's convention.
    pub converted: Support,
    pub b_s: i64,
    /// Reduced GF(2) Betti numbers of the rank selection, from dimension -1.
    pub reduced_betti: Vec<usize>,
}

/// For each nonempty `S`, `b_S(n)` next to the reduced homology of the
/// rank-selected quotient. Emits data only.
pub fn conjecture_scan(n: usize) -> Result<Vec<ScanRow>, BuildError> {
    let (_, c) = lex_complex(n)?;
    let h = c.flag_h();
    let mut rows = Vec::new();
    for s in c.full_support().subsets().filter(|s| !s.is_empty()) {
        let converted = convert_support(n, s);
        let sel = c.rank_select(converted);
        rows.push(ScanRow {
            s,
            converted,
            b_s: h.get(converted),
            reduced_betti: reduced_betti_gf2(&sel)?,
        });
    }
    Ok(rows)
}
