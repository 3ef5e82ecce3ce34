use std::collections::HashMap;

use super::BalancedComplex;
use crate::error::ComplexError;

/// Cellular chain complex over GF(2). Dimension `i` holds the cells of
/// support size `i + 1`; boundaries are sorted index lists into dimension
/// `i - 1` with pairs cancelled.
#[derive(Clone, Debug)]
pub struct Gf2ChainComplex {
    pub cells: Vec<Vec<u32>>,
    pub boundaries: Vec<Vec<Vec<u32>>>,
}

impl Gf2ChainComplex {
    pub fn new(c: &BalancedComplex) -> Gf2ChainComplex {
        let d = c.colors();
        let mut cells: Vec<Vec<u32>> = vec![Vec::new(); d];
        for id in 0..c.cell_count() as u32 {
            let k = c.cell_support(id).len();
            if k > 0 {
                cells[k - 1].push(id);
            }
        }
        let index: Vec<HashMap<u32, u32>> = cells
            .iter()
            .map(|ids| ids.iter().enumerate().map(|(i, &id)| (id, i as u32)).collect())
            .collect();
        let mut boundaries = vec![Vec::new(); d];
        for dim in 1..d {
            boundaries[dim] = cells[dim]
                .iter()
                .map(|&id| {
                    let (f, s) = c.representative(id);
                    let mut col: Vec<u32> = s
                        .colors()
                        .map(|r| index[dim - 1][&c.cell_id(f, s.remove(r))])
                        .collect();
                    col.sort_unstable();
                    cancel_pairs(&mut col);
                    col
                })
                .collect();
        }
        if d > 0 {
            boundaries[0] = vec![Vec::new(); cells[0].len()];
        }
        Gf2ChainComplex { cells, boundaries }
    }

    /// Confirms `∂∘∂ = 0`.
    pub fn check_boundary_square(&self) -> Result<(), ComplexError> {
        for dim in 2..self.cells.len() {
            for col in &self.boundaries[dim] {
                let mut acc: Vec<u32> = col
                    .iter()
                    .flat_map(|&j| self.boundaries[dim - 1][j as usize].iter().copied())
                    .collect();
                acc.sort_unstable();
                cancel_pairs(&mut acc);
                if !acc.is_empty() {
                    return Err(ComplexError::BoundarySquareNonzero { dim });
                }
            }
        }
        Ok(())
    }

    /// Rank of `∂_dim` over GF(2).
    pub fn boundary_rank(&self, dim: usize) -> usize {
        if dim == 0 || dim >= self.cells.len() {
            return 0;
        }
        gf2_rank(self.boundaries[dim].clone())
    }
}

fn cancel_pairs(sorted: &mut Vec<u32>) {
    let mut out = Vec::with_capacity(sorted.len());
    for &x in sorted.iter() {
        if out.last() == Some(&x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    *sorted = out;
}

/// Symmetric difference of two sorted lists.
fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Column reduction by lowest pivot.
fn gf2_rank(mut columns: Vec<Vec<u32>>) -> usize {
    let mut pivot_of: HashMap<u32, usize> = HashMap::new();
    let mut rank = 0;
    for j in 0..columns.len() {
        while let Some(&low) = columns[j].last() {
            match pivot_of.get(&low) {
                Some(&k) => columns[j] = xor_sorted(&columns[j], &columns[k]),
                None => {
                    pivot_of.insert(low, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers over GF(2) in dimensions `0..d`. The complex with no
/// nonempty cells gets the empty list.
pub fn betti_gf2(c: &BalancedComplex) -> Result<Vec<usize>, ComplexError> {
    let chain = Gf2ChainComplex::new(c);
    chain.check_boundary_square()?;
    let d = c.colors();
    let ranks: Vec<usize> = (0..=d).map(|i| chain.boundary_rank(i)).collect();
    Ok((0..d)
        .map(|i| chain.cells[i].len() - ranks[i] - ranks[i + 1])
        .collect())
}

/// Reduced Betti numbers indexed from dimension `-1`: entry 0 is
/// `β̃_{-1}`, which is 1 exactly for the complex whose only cell is empty.
pub fn reduced_betti_gf2(c: &BalancedComplex) -> Result<Vec<usize>, ComplexError> {
    let mut b = betti_gf2(c)?;
    let nonempty = c.cell_count() > 1;
    let mut out = vec![usize::from(!nonempty)];
    if let Some(b0) = b.first_mut() {
        *b0 -= usize::from(nonempty);
    }
    out.extend(b);
    Ok(out)
}
