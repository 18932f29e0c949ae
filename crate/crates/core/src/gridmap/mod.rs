//! The click map on n×n grids and everything built on its elimination:
//! kernels, solvability, particular solutions and minimum-click solutions.

mod cellset;
mod system;

pub use cellset::CellSet;
pub use system::GridSystem;

use crate::error::{Error, Result};
use crate::words;

/// Default largest nullity for which whole solution cosets are enumerated.
pub const DEFAULT_NULLITY_CAP: usize = 20;

/// A reduced basis of the click-map kernel (the even parity covers).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    n: usize,
    basis: Vec<CellSet>,
}

impl KernelBasis {
    /// Reduces arbitrary spanning vectors to reduced row-echelon form, pivots
    /// taken at the lowest cell index, rows ordered by pivot.
    pub fn from_vectors(n: usize, vectors: Vec<CellSet>) -> Self {
        let mut rows: Vec<CellSet> = Vec::new();
        for mut v in vectors {
            for r in &rows {
                let p = r.iter().next().expect("rows are nonzero");
                if v.contains(p) {
                    v ^= r;
                }
            }
            let Some(p) = v.iter().next() else { continue };
            for r in rows.iter_mut() {
                if r.contains(p) {
                    *r ^= &v;
                }
            }
            rows.push(v);
        }
        rows.sort_by_key(|r| r.iter().next());
        Self { n, basis: rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[CellSet] {
        &self.basis
    }

    /// Membership in the span of the basis.
    pub fn contains(&self, v: &CellSet) -> bool {
        let mut v = v.clone();
        for r in &self.basis {
            let p = r.iter().next().expect("rows are nonzero");
            if v.contains(p) {
                v ^= r;
            }
        }
        v.is_empty()
    }

    /// All `2^dim` elements of the span, indexed by the combination mask.
    pub fn span(&self) -> Vec<CellSet> {
        let mut out = Vec::with_capacity(1 << self.dim());
        out.push(CellSet::empty(self.n));
        for m in 1usize..1 << self.dim() {
            let mut v = out[m & (m - 1)].clone();
            v ^= &self.basis[m.trailing_zeros() as usize];
            out.push(v);
        }
        out
    }

    /// Nonzero elements of the span, in combination-mask order.
    pub fn nonzero_elements(&self) -> Vec<CellSet> {
        self.span().into_iter().skip(1).collect()
    }
}

pub(crate) fn neighborhood_cells(n: usize, v: usize) -> impl Iterator<Item = usize> {
    let (r, c) = (v / n, v % n);
    let up = (r > 0).then(|| v - n);
    let down = (r + 1 < n).then(|| v + n);
    let left = (c > 0).then(|| v - 1);
    let right = (c + 1 < n).then(|| v + 1);
    [up, left, Some(v), right, down].into_iter().flatten()
}

/// Closed neighborhood of cell `v`: the cell and its edge-adjacent cells.
pub fn neighborhood(n: usize, v: usize) -> Result<CellSet> {
    if v >= n * n {
        return Err(Error::CellOutOfRange { index: v, n });
    }
    CellSet::from_cells(n, neighborhood_cells(n, v))
}

/// The click map: lights toggled by clicking every cell of `clicks`.
pub fn apply_clicks(clicks: &CellSet) -> CellSet {
    let n = clicks.n();
    let src = clicks.words();
    let mut out = src.to_vec();
    if n > 1 {
        let mut not_last = CellSet::empty(n);
        let mut not_first = CellSet::empty(n);
        for v in 0..n * n {
            if v % n != n - 1 {
                not_last.insert(v);
            }
            if v % n != 0 {
                not_first.insert(v);
            }
        }
        let east: Vec<u64> = src.iter().zip(not_last.words()).map(|(a, m)| a & m).collect();
        let west: Vec<u64> = src.iter().zip(not_first.words()).map(|(a, m)| a & m).collect();
        words::xor_shl(&mut out, &east, 1);
        words::xor_shr(&mut out, &west, 1);
        words::xor_shl(&mut out, src, n);
        words::xor_shr(&mut out, src, n);
    }
    CellSet::from_words(n, out)
}

pub fn kernel_basis(n: usize) -> KernelBasis {
    GridSystem::cached(n).kernel().clone()
}

pub fn is_solvable(config: &CellSet) -> bool {
    GridSystem::cached(config.n()).is_solvable(config)
}

pub fn solve_particular(config: &CellSet) -> Result<CellSet> {
    GridSystem::cached(config.n()).solve_particular(config)
}

pub fn all_solutions(config: &CellSet) -> Result<Vec<CellSet>> {
    all_solutions_with_cap(config, DEFAULT_NULLITY_CAP)
}

/// Every solution of `config`: the particular solution XOR each kernel element.
pub fn all_solutions_with_cap(config: &CellSet, cap: usize) -> Result<Vec<CellSet>> {
    let sys = GridSystem::cached(config.n());
    let x = sys.solve_particular(config)?;
    let kernel = sys.kernel();
    check_cap(kernel.dim(), cap)?;
    Ok(kernel
        .span()
        .into_iter()
        .map(|mut q| {
            q ^= &x;
            q
        })
        .collect())
}

fn check_cap(nullity: usize, cap: usize) -> Result<()> {
    if nullity > cap {
        Err(Error::NullityCapExceeded { nullity, cap })
    } else {
        Ok(())
    }
}

/// A minimum-cardinality solution and its size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinClicks {
    pub count: usize,
    pub witness: CellSet,
}

pub fn min_clicks(config: &CellSet) -> Result<MinClicks> {
    min_clicks_with_cap(config, DEFAULT_NULLITY_CAP)
}

/// Smallest member of the solution coset of `config`. Ties go to the
/// row-major lexicographically smallest set.
pub fn min_clicks_with_cap(config: &CellSet, cap: usize) -> Result<MinClicks> {
    let sys = GridSystem::cached(config.n());
    let x = sys.solve_particular(config)?;
    min_in_coset(&x, sys.kernel(), cap)
}

/// Walks the coset `x + span(kernel)` in Gray-code order.
pub fn min_in_coset(x: &CellSet, kernel: &KernelBasis, cap: usize) -> Result<MinClicks> {
    check_cap(kernel.dim(), cap)?;
    let mut cur = x.clone();
    let mut best = cur.clone();
    let mut best_len = best.len();
    for i in 1u64..1 << kernel.dim() {
        cur ^= &kernel.elements()[i.trailing_zeros() as usize];
        let len = cur.len();
        if len < best_len || (len == best_len && cur.cmp_row_major(&best).is_lt()) {
            best_len = len;
            best = cur.clone();
        }
    }
    Ok(MinClicks {
        count: best_len,
        witness: best,
    })
}
