//! The quotient `Δ(B_kn)/S_k≀S_n` of the boolean lattice on `k·n` letters.
//!
//! Letters `1..=kn` are arranged in `n` rows of `k`; row `i` holds
//! `k(i-1)+1..=ki`. A maximal chain is a permutation word (the order in
//! which letters are added), and a chain's orbit is determined by how full
//! each row is at each chain element, up to reordering the rows.

use serde::{Deserialize, Serialize};

use crate::complex::{build_complex, BalancedComplex, CellKey, FlagVector, PartitionAssignment};
use crate::complex::verify_partitioning;
use crate::error::BuildError;
use crate::series::TruncatedSeries;
use crate::support::{Support, MAX_COLORS};

/// Largest `k·n` accepted by the facet enumeration.
pub const MAX_LETTERS: usize = MAX_COLORS - 3;

/// A facet: the lexicographically smallest permutation word of its orbit,
/// with letters `1..=kn`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitRep(pub Vec<u8>);

impl OrbitRep {
    pub fn parse(word: &str) -> Result<OrbitRep, BuildError> {
        let letters: Option<Vec<u8>> = if word.contains(',') {
            word.split(',').map(|t| t.trim().parse::<u8>().ok()).collect()
        } else {
            word.chars().map(|ch| ch.to_digit(10).map(|d| d as u8)).collect()
        };
        letters
            .map(OrbitRep)
            .ok_or_else(|| BuildError::InvalidRepresentative(word.to_string()))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }
}

impl std::fmt::Display for OrbitRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sep = if self.0.len() > 9 { "," } else { "" };
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Ascent/descent type of a rank in a `k = 2` facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PositionClass {
    HonestAscent,
    HonestDescent,
    SwapAscent,
}

impl PositionClass {
    pub fn is_topological_descent(self) -> bool {
        self != PositionClass::HonestAscent
    }
}

fn row_of(k: usize, letter: usize) -> usize {
    (letter - 1) / k
}

fn serialize_histories(mut rows: Vec<Vec<u8>>, support: Support) -> CellKey {
    rows.sort_unstable();
    CellKey::new(rows.concat(), support)
}

/// Orbit key of a chain of subsets of `{1..kn}`, each given as a bit
/// pattern with letter `i` at bit `i - 1`. The chain's sizes must be the
/// colors of `support`, in order.
pub fn wreath_key(k: usize, n: usize, chain: &[u32], support: Support) -> Result<CellKey, BuildError> {
    let letters = k * n;
    if letters == 0 || letters > 31 {
        return Err(BuildError::Unsupported(format!("k={k}, n={n}")));
    }
    let ranks = support.to_vec();
    if ranks.len() != chain.len() {
        return Err(BuildError::MalformedChain(format!(
            "{} chain elements for support {support}",
            chain.len()
        )));
    }
    for (t, (&set, &rank)) in chain.iter().zip(&ranks).enumerate() {
        if set >> letters != 0 || set.count_ones() as usize != rank || rank >= letters {
            return Err(BuildError::MalformedChain(format!("element {t} has the wrong size")));
        }
        if t > 0 && chain[t - 1] & !set != 0 {
            return Err(BuildError::MalformedChain(format!("element {t} does not contain its predecessor")));
        }
    }
    let row_mask = (1u32 << k) - 1;
    let rows = (0..n)
        .map(|i| {
            chain
                .iter()
                .map(|&set| ((set >> (k * i)) & row_mask).count_ones() as u8)
                .collect()
        })
        .collect();
    Ok(serialize_histories(rows, support))
}

/// Key of the face of support `support` in the facet given by `word`.
fn facet_key(k: usize, n: usize, word: &[u8], support: Support) -> CellKey {
    let mut rows = vec![Vec::with_capacity(support.len()); n];
    let mut counts = vec![0u8; n];
    let mut next = support.colors().peekable();
    for (pos, &letter) in word.iter().enumerate() {
        counts[row_of(k, letter as usize)] += 1;
        if next.peek() == Some(&(pos + 1)) {
            next.next();
            for (row, &c) in rows.iter_mut().zip(&counts) {
                row.push(c);
            }
        }
    }
    serialize_histories(rows, support)
}

/// Whether `word` is the lexicographically smallest word of its orbit:
/// letters of a row appear in increasing order, and rows are entered in
/// increasing order.
pub fn is_orbit_rep(k: usize, n: usize, word: &[u8]) -> bool {
    let letters = k * n;
    let mut seen = vec![false; letters + 1];
    let mut next_in_row = vec![0usize; n];
    let mut rows_opened = 0;
    for &l in word {
        let l = l as usize;
        if l == 0 || l > letters || seen[l] {
            return false;
        }
        seen[l] = true;
        let row = row_of(k, l);
        if l != k * row + next_in_row[row] + 1 {
            return false;
        }
        if next_in_row[row] == 0 {
            if row != rows_opened {
                return false;
            }
            rows_opened += 1;
        }
        next_in_row[row] += 1;
    }
    word.len() == letters
}

/// `(kn)! / (k!^n n!)`, the number of maximal-chain orbits.
pub fn wreath_facet_count(k: usize, n: usize) -> u128 {
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    fact(k * n) / (fact(k).pow(n as u32) * fact(n))
}

/// All orbit representatives in lexicographic order.
pub fn enumerate_wreath_facets(k: usize, n: usize) -> Result<Vec<OrbitRep>, BuildError> {
    let letters = k * n;
    if k == 0 || n == 0 {
        return Err(BuildError::Unsupported(format!("k={k}, n={n}")));
    }
    if letters > MAX_LETTERS {
        return Err(BuildError::CapExceeded {
            got: letters,
            cap: MAX_LETTERS,
        });
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(letters);
    let mut filled = vec![0usize; n];
    extend_reps(k, n, &mut word, &mut filled, 0, &mut out);
    Ok(out)
}

fn extend_reps(
    k: usize,
    n: usize,
    word: &mut Vec<u8>,
    filled: &mut [usize],
    opened: usize,
    out: &mut Vec<OrbitRep>,
) {
    if word.len() == k * n {
        out.push(OrbitRep(word.clone()));
        return;
    }
    // Candidate letters: the next letter of each open row, then the first
    // letter of the next row. Row order equals letter order, so this is
    // already increasing.
    let last = if opened < n { opened + 1 } else { opened };
    for row in 0..last {
        if filled[row] == k || (row == opened && filled[row] != 0) {
            continue;
        }
        let letter = k * row + filled[row] + 1;
        filled[row] += 1;
        word.push(letter as u8);
        extend_reps(k, n, word, filled, opened.max(row + 1), out);
        word.pop();
        filled[row] -= 1;
    }
}

/// Ascent/descent type of each rank `1..=2n-1` of a `k = 2` facet.
pub fn classify_positions(n: usize, rep: &OrbitRep) -> Result<Vec<PositionClass>, BuildError> {
    let w = rep.letters();
    if !is_orbit_rep(2, n, w) {
        return Err(BuildError::InvalidRepresentative(rep.to_string()));
    }
    let mut pos = vec![0usize; 2 * n + 2];
    for (i, &l) in w.iter().enumerate() {
        pos[l as usize] = i;
    }
    Ok((0..w.len().saturating_sub(1))
        .map(|i| {
            let (a, b) = (w[i] as usize, w[i + 1] as usize);
            if a > b {
                PositionClass::HonestDescent
            } else if a % 2 == 1 && b == a + 2 && pos[a + 3] < pos[a + 1] {
                PositionClass::SwapAscent
            } else {
                PositionClass::HonestAscent
            }
        })
        .collect())
}

/// Topological descent set predicted by [`classify_positions`].
pub fn classified_descents(n: usize, rep: &OrbitRep) -> Result<Support, BuildError> {
    let classes = classify_positions(n, rep)?;
    Ok(Support::from_colors(
        classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.is_topological_descent())
            .map(|(i, _)| i + 1),
    ))
}

/// The complex `Δ(B_kn)/S_k≀S_n` with facets in lexicographic order.
pub fn wreath_complex(k: usize, n: usize) -> Result<BalancedComplex, BuildError> {
    let reps = enumerate_wreath_facets(k, n)?;
    let colors = k * n - 1;
    Ok(build_complex(
        colors,
        &reps,
        |r| r.to_string(),
        |r, s| facet_key(k, n, r.letters(), s),
    )?)
}

/// Hilbert series `Σ_T f_T Π_{r∈T} q^r/(1-q^r)` of the invariant ring,
/// through `q^D`.
pub fn face_ring_hilbert(c: &BalancedComplex, degree: usize) -> TruncatedSeries {
    let f = c.flag_f();
    let mut total = TruncatedSeries::zero(degree);
    for (t, count) in f.iter() {
        if count == 0 || t.rank_sum() > degree {
            continue;
        }
        let term = t
            .colors()
            .fold(TruncatedSeries::monomial(degree, t.rank_sum(), count), |acc, r| {
                acc.div_one_minus(r)
            });
        total = &total + &term;
    }
    total
}

/// `H(q) · Π_{r=1}^{factors} (1 - q^r)`.
pub fn hilbert_numerator(h: &TruncatedSeries, factors: usize) -> TruncatedSeries {
    (1..=factors).fold(h.clone(), |acc, r| acc.mul_one_minus(r))
}

/// `N(q) = Σ_i q^{Σ G_i}` for a verified partitioning, as coefficients
/// from `q^0`.
pub fn gs_numerator(c: &BalancedComplex, a: &PartitionAssignment) -> Result<Vec<i64>, BuildError> {
    let verdict = verify_partitioning(c, a)?;
    if !verdict.passed() {
        return Err(BuildError::NotAPartitioning(format!("{verdict:?}")));
    }
    let top = a.minimal.iter().map(|g| g.rank_sum()).max().unwrap_or(0);
    let mut out = vec![0i64; top + 1];
    for g in &a.minimal {
        out[g.rank_sum()] += 1;
    }
    Ok(out)
}

/// Numerator polynomial read off a flag h-vector: `Σ_S h_S q^{ΣS}`.
pub fn h_numerator(h: &FlagVector) -> Vec<i64> {
    let top = h.iter().map(|(s, _)| s.rank_sum()).max().unwrap_or(0);
    let mut out = vec![0i64; top + 1];
    for (s, v) in h.iter() {
        out[s.rank_sum()] += v;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}
