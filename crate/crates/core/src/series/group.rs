use std::collections::{BTreeMap, HashSet, VecDeque};

use num::{BigInt, BigRational};

use super::TruncatedSeries;
use crate::error::SeriesError;
use crate::perm;

/// Largest group that is enumerated element by element.
pub const GROUP_CAP: usize = 1_000_000;

/// Largest number of monomials the orbit-count oracle will enumerate.
pub const MONOMIAL_CAP: u128 = 20_000_000;

/// A permutation group on `0..degree`, enumerated explicitly.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Vec<usize>>,
    elements: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Closes the generators under composition (breadth first from the
    /// identity), refusing groups beyond `cap` elements.
    pub fn from_generators(
        degree: usize,
        generators: Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<PermGroup, SeriesError> {
        for g in &generators {
            if g.len() != degree {
                return Err(SeriesError::DegreeMismatch {
                    expected: degree,
                    got: g.len(),
                });
            }
            if !perm::is_permutation(g) {
                return Err(SeriesError::NotAPermutation);
            }
        }
        let id = perm::identity(degree);
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = perm::compose(g, &x);
                if seen.insert(y.clone()) {
                    if elements.len() >= cap {
                        return Err(SeriesError::GroupTooLarge {
                            order: elements.len() + 1,
                            cap,
                        });
                    }
                    elements.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        elements.sort();
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new(), 1).expect("trivial group")
    }

    pub fn symmetric(degree: usize) -> Result<PermGroup, SeriesError> {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut swap = perm::identity(degree);
            swap.swap(0, 1);
            gens.push(swap);
            let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(cycle);
        }
        PermGroup::from_generators(degree, gens, GROUP_CAP)
    }

    /// `S_k ≀ S_n` on `k·n` letters; row `i` holds letters `k·i..k·(i+1)`.
    pub fn wreath(k: usize, n: usize) -> Result<PermGroup, SeriesError> {
        let degree = k * n;
        let mut gens = Vec::new();
        if k >= 2 {
            let mut swap = perm::identity(degree);
            swap.swap(0, 1);
            gens.push(swap);
            let mut cycle = perm::identity(degree);
            for j in 0..k {
                cycle[j] = (j + 1) % k;
            }
            gens.push(cycle);
        }
        if n >= 2 {
            let mut swap_rows = perm::identity(degree);
            let mut cycle_rows = perm::identity(degree);
            for j in 0..k {
                swap_rows.swap(j, k + j);
                for i in 0..n {
                    cycle_rows[k * i + j] = k * ((i + 1) % n) + j;
                }
            }
            gens.push(swap_rows);
            gens.push(cycle_rows);
        }
        PermGroup::from_generators(degree, gens, GROUP_CAP)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Elements in lexicographic order of their one-line words.
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }
}

/// Molien series `(1/|G|) Σ_g Π_{cycles c of g} 1/(1 - q^{|c|})` through `q^D`.
pub fn molien(g: &PermGroup, degree: usize) -> Result<TruncatedSeries, SeriesError> {
    if g.order() > GROUP_CAP {
        return Err(SeriesError::GroupTooLarge {
            order: g.order(),
            cap: GROUP_CAP,
        });
    }
    let mut by_type: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for x in g.elements() {
        let mut t = perm::cycle_type(x);
        t.sort_unstable();
        *by_type.entry(t).or_default() += 1;
    }
    let mut total = TruncatedSeries::zero(degree);
    for (cycles, count) in by_type {
        let term = cycles
            .iter()
            .fold(TruncatedSeries::one(degree), |acc, &len| acc.div_one_minus(len));
        total = &total + &term.scale(&BigRational::from_integer(count.into()));
    }
    Ok(total.scale(&BigRational::new(BigInt::from(1), BigInt::from(g.order()))))
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of `G`-orbits on monomials of total degree `d` in `degree(G)`
/// variables, by canonicalizing every exponent vector under the group.
pub fn monomial_orbit_count(g: &PermGroup, d: usize) -> Result<u64, SeriesError> {
    let vars = g.degree();
    if vars == 0 {
        return Ok(u64::from(d == 0));
    }
    let count = binomial((d + vars - 1) as u128, (vars - 1) as u128);
    if count > MONOMIAL_CAP {
        return Err(SeriesError::TooManyMonomials {
            count,
            cap: MONOMIAL_CAP,
        });
    }
    let mut orbits: HashSet<Vec<u8>> = HashSet::new();
    let mut exps = vec![0u8; vars];
    let mut image = vec![0u8; vars];
    let mut best = vec![0u8; vars];
    compositions(&mut exps, 0, d, &mut |e| {
        best.copy_from_slice(e);
        for x in g.elements() {
            for (i, &v) in e.iter().enumerate() {
                image[x[i]] = v;
            }
            if image < best {
                best.copy_from_slice(&image);
            }
        }
        orbits.insert(best.clone());
    });
    Ok(orbits.len() as u64)
}

/// Visits every way to write `left` as an ordered sum filling `exps[at..]`.
fn compositions(exps: &mut [u8], at: usize, left: usize, visit: &mut impl FnMut(&[u8])) {
    if at + 1 == exps.len() {
        exps[at] = left as u8;
        visit(exps);
        return;
    }
    for v in 0..=left {
        exps[at] = v as u8;
        compositions(exps, at + 1, left - v, visit);
    }
}
