use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{apply_clicks, CellSet, KernelBasis};
use crate::error::{Error, Result};
use crate::words::{self, WORD_BITS};

/// The click matrix of the n×n grid in reduced row-echelon form, together with
/// the row transform that produced it (`T·A = R`).
///
/// Rows are n²-bit bitsets; the dense n²×n² matrix is only ever held in this
/// packed form.
#[derive(Debug)]
pub struct GridSystem {
    n: usize,
    row_words: usize,
    rank: usize,
    /// Pivot column of RREF row `r`, for `r < rank`.
    pivots: Vec<usize>,
    /// Row transform `T`, one n²-bit row per matrix row.
    transform: Vec<u64>,
    kernel: KernelBasis,
}

impl GridSystem {
    /// Runs Gaussian elimination on `[A | I]` for the n×n click matrix `A`.
    pub fn new(n: usize) -> Self {
        let cells = n * n;
        let rw = words::words_for(cells);
        let stride = 2 * rw;
        let mut m = vec![0u64; cells * stride];
        for v in 0..cells {
            let row = &mut m[v * stride..(v + 1) * stride];
            for u in super::neighborhood_cells(n, v) {
                words::flip(&mut row[..rw], u);
            }
            words::flip(&mut row[rw..], v);
        }

        let mut rank = 0;
        let mut pivots = Vec::new();
        for col in 0..cells {
            let (cw, cb) = (col / WORD_BITS, col % WORD_BITS);
            let bit = |m: &[u64], r: usize| (m[r * stride + cw] >> cb) & 1 == 1;
            let Some(p) = (rank..cells).find(|&r| bit(&m, r)) else {
                continue;
            };
            if p != rank {
                for w in 0..stride {
                    m.swap(p * stride + w, rank * stride + w);
                }
            }
            let pivot: Vec<u64> = m[rank * stride + cw..(rank + 1) * stride].to_vec();
            for r in 0..cells {
                if r != rank && bit(&m, r) {
                    let row = &mut m[r * stride + cw..(r + 1) * stride];
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }

        // Kernel: one vector per free column f, with x_f = 1 and the pivot
        // coordinates read off column f of R.
        let mut is_pivot = vec![false; cells];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in (0..cells).filter(|&f| !is_pivot[f]) {
            let mut v = CellSet::empty(n);
            v.insert(f);
            for (r, &p) in pivots.iter().enumerate() {
                if words::get(&m[r * stride..r * stride + rw], f) {
                    v.insert(p);
                }
            }
            basis.push(v);
        }

        let mut transform = vec![0u64; cells * rw];
        for r in 0..cells {
            transform[r * rw..(r + 1) * rw].copy_from_slice(&m[r * stride + rw..(r + 1) * stride]);
        }

        Self {
            n,
            row_words: rw,
            rank,
            pivots,
            transform,
            kernel: KernelBasis::from_vectors(n, basis),
        }
    }

    /// The shared, lazily built system for `n`. Safe to call concurrently;
    /// each size is eliminated once and then only read.
    pub fn cached(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<GridSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(sys) = cache.read().expect("cache poisoned").get(&n) {
            return Arc::clone(sys);
        }
        let built = Arc::new(Self::new(n));
        let mut guard = cache.write().expect("cache poisoned");
        Arc::clone(guard.entry(n).or_insert(built))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.n * self.n - self.rank
    }

    pub fn kernel(&self) -> &KernelBasis {
        &self.kernel
    }

    fn transformed(&self, y: &CellSet, r: usize) -> bool {
        let row = &self.transform[r * self.row_words..(r + 1) * self.row_words];
        row.iter()
            .zip(y.words())
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Solvability decided by the eliminated system: `T·y` must vanish on
    /// every zero row of `R`.
    pub fn is_solvable_by_elimination(&self, config: &CellSet) -> bool {
        (self.rank..self.n * self.n).all(|r| !self.transformed(config, r))
    }

    /// Solvability as orthogonality to the kernel. The click matrix is
    /// symmetric, so its image is the orthogonal complement of its kernel.
    pub fn is_solvable(&self, config: &CellSet) -> bool {
        self.kernel.elements().iter().all(|q| !q.dot(config))
    }

    /// The canonical solution: every free variable set to 0.
    pub fn solve_particular(&self, config: &CellSet) -> Result<CellSet> {
        if config.n() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: config.n(),
            });
        }
        if !self.is_solvable_by_elimination(config) {
            return Err(Error::Unsolvable);
        }
        let mut x = CellSet::empty(self.n);
        for (r, &p) in self.pivots.iter().enumerate() {
            if self.transformed(config, r) {
                x.insert(p);
            }
        }
        debug_assert_eq!(&apply_clicks(&x), config);
        Ok(x)
    }
}
