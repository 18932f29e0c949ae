//! The Most Clicks Problem: the largest minimum click count over all solvable
//! configurations of a grid.
//!
//! For side `6k - 1` the answer is at most `26k² - 12k + 1`, and exactly that
//! when the nullity is 2. This module provides the closed form, the
//! three-variable ILP behind it, an exhaustive oracle for small grids, and
//! constructive certificates that the bound is attained.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covers::{tiled_region_partition, RegionPartition, RegionSizes};
use crate::error::{Error, Result};
use crate::gf2poly;
use crate::gridmap::{self, apply_clicks, CellSet};

/// Default limit on `n² - d(n)`, the number of coset bits enumerated by
/// [`mcp_bruteforce`]. Covers every n ≤ 5.
pub const DEFAULT_BRUTE_FORCE_BUDGET: usize = 24;

pub fn mcp_formula(k: usize) -> usize {
    26 * k * k + 1 - 12 * k
}

/// Upper bound on the MCP of the n×n grid for `n = 6k - 1`, valid whatever
/// the nullity.
pub fn mcp_upper_bound(n: usize) -> Result<usize> {
    six_k_minus_one(n).map(mcp_formula)
}

/// `k` such that `n = 6k - 1`.
pub fn six_k_minus_one(n: usize) -> Result<usize> {
    if n % 6 == 5 {
        Ok((n + 1) / 6)
    } else {
        Err(Error::NotSixKMinusOne { n })
    }
}

/// Optimum of: maximize `R1 + R2 + R3` subject to `R2 + R3 ≤ 8k²`,
/// `R1 + R2 ≤ 6k²`, `R1 + R3 ≤ 6k²`, `0 ≤ R1 ≤ 4k²`, `0 ≤ R2, R3 ≤ 8k²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IlpOptimum {
    pub k: usize,
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    /// Bound from summing the three pairwise constraints: `2·objective ≤ 20k²`.
    pub dual_bound: usize,
}

impl IlpOptimum {
    pub fn objective(&self) -> usize {
        self.r1 + self.r2 + self.r3
    }

    pub fn is_feasible(&self) -> bool {
        ilp_feasible(self.k, self.r1, self.r2, self.r3)
    }

    /// Feasible and meeting the summed-constraint bound, hence optimal.
    pub fn is_certified_optimal(&self) -> bool {
        self.is_feasible() && self.objective() == self.dual_bound
    }

    /// Clicks of the worst case: the ILP objective plus all of region 4.
    pub fn total_clicks(&self) -> usize {
        self.objective() + RegionSizes::expected(self.k).r4
    }
}

pub fn ilp_feasible(k: usize, r1: usize, r2: usize, r3: usize) -> bool {
    let k2 = k * k;
    r2 + r3 <= 8 * k2
        && r1 + r2 <= 6 * k2
        && r1 + r3 <= 6 * k2
        && r1 <= 4 * k2
        && r2 <= 8 * k2
        && r3 <= 8 * k2
}

pub fn ilp_optimum(k: usize) -> IlpOptimum {
    let k2 = k * k;
    let opt = IlpOptimum {
        k,
        r1: 2 * k2,
        r2: 4 * k2,
        r3: 4 * k2,
        dual_bound: (8 * k2 + 6 * k2 + 6 * k2) / 2,
    };
    debug_assert!(opt.is_certified_optimal());
    opt
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceMcp {
    pub n: usize,
    pub mcp: usize,
    /// A configuration attaining the maximum: the one whose canonical coset
    /// representative is numerically smallest.
    pub worst_config: CellSet,
    /// A minimum solution of `worst_config`.
    pub witness: CellSet,
    pub cosets: u64,
}

pub fn mcp_bruteforce(n: usize) -> Result<BruteForceMcp> {
    mcp_bruteforce_with_budget(n, DEFAULT_BRUTE_FORCE_BUDGET)
}

/// Exact MCP by enumerating click space modulo the kernel.
///
/// Each coset has one representative vanishing on the kernel's pivot cells;
/// its members are that representative XOR each kernel element, and its
/// configuration's answer is the lightest member. Shards over the top free
/// bits run in parallel.
pub fn mcp_bruteforce_with_budget(n: usize, budget: usize) -> Result<BruteForceMcp> {
    if n == 0 {
        return Err(Error::EmptyGrid);
    }
    let cells = n * n;
    let kernel = gridmap::kernel_basis(n);
    let bits = cells - kernel.dim();
    if bits > budget || cells > 63 {
        return Err(Error::BudgetExceeded { bits, budget });
    }
    let span: Vec<u64> = kernel.span().iter().map(CellSet::to_u64).collect();
    let pivot_mask = kernel
        .elements()
        .iter()
        .fold(0u64, |m, e| m | 1 << e.iter().next().expect("nonzero"));
    let free_mask = ((1u64 << cells) - 1) & !pivot_mask;

    let free_bits: Vec<u32> = (0..cells as u32).filter(|b| free_mask >> b & 1 == 1).collect();
    let split = free_bits.len().min(8);
    let high: Vec<u32> = free_bits[free_bits.len() - split..].to_vec();
    let low_mask = high.iter().fold(free_mask, |m, b| m & !(1 << b));

    let (mcp, rep) = (0u64..1 << split)
        .into_par_iter()
        .map(|shard| {
            let prefix = high
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, b)| acc | ((shard >> i) & 1) << b);
            let mut best = (0u32, u64::MAX);
            // Enumerate all subsets of low_mask.
            let mut sub = 0u64;
            loop {
                let x = prefix | sub;
                let w = span.iter().map(|q| (x ^ q).count_ones()).min().expect("span nonempty");
                if w > best.0 || (w == best.0 && x < best.1) {
                    best = (w, x);
                }
                sub = sub.wrapping_sub(low_mask) & low_mask;
                if sub == 0 {
                    break;
                }
            }
            best
        })
        .reduce(
            || (0, u64::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a },
        );

    let rep = CellSet::from_u64(n, rep);
    let worst_config = apply_clicks(&rep);
    let witness = gridmap::min_in_coset(&rep, &kernel, usize::MAX)?.witness;
    Ok(BruteForceMcp {
        n,
        mcp: mcp as usize,
        worst_config,
        witness,
        cosets: 1 << bits,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub nullity_is_2: bool,
    pub coset_sizes_equal: bool,
    pub image_matches: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.nullity_is_2 && self.coset_sizes_equal && self.image_matches
    }
}

/// A worst-case configuration for the (6k-1)×(6k-1) grid together with the
/// facts that certify its minimum click count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McpCertificate {
    pub k: usize,
    pub n: usize,
    pub nullity: usize,
    pub worst_config: CellSet,
    pub claimed_min: usize,
    pub witness: CellSet,
    pub covers: [CellSet; 3],
    /// Cells of the witness in each region.
    pub region_counts: [usize; 4],
    pub checks: CertificateChecks,
}

impl McpCertificate {
    /// Certifying only if every check passes and the claimed minimum is the
    /// closed form.
    pub fn is_certified(&self) -> bool {
        self.checks.all() && self.claimed_min == mcp_formula(self.k)
    }

    /// Independent confirmation through elimination: the minimum solution of
    /// `worst_config` found by [`gridmap::min_clicks`].
    pub fn min_clicks_by_elimination(&self) -> Result<usize> {
        Ok(gridmap::min_clicks(&self.worst_config)?.count)
    }

    pub fn to_document(&self) -> CertificateDocument {
        CertificateDocument {
            k: self.k,
            n: self.n,
            nullity: self.nullity,
            claimed_min: self.claimed_min,
            bound: mcp_formula(self.k),
            certified: self.is_certified(),
            region_counts: self.region_counts,
            checks: self.checks,
            worst_config: self.worst_config.to_pattern(),
            witness: self.witness.to_pattern(),
            covers: self.covers.each_ref().map(CellSet::to_pattern).to_vec(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_document())?)
    }
}

/// The JSON form of a certificate. Patterns use the `#`/`.` text format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub k: usize,
    pub n: usize,
    pub nullity: usize,
    pub claimed_min: usize,
    pub bound: usize,
    pub certified: bool,
    pub region_counts: [usize; 4],
    pub checks: CertificateChecks,
    pub worst_config: String,
    pub witness: String,
    pub covers: Vec<String>,
}

impl CertificateDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Recomputes every check from the stored patterns alone, trusting none of
    /// the stored flags.
    pub fn recheck(&self) -> Result<CertificateChecks> {
        let worst = CellSet::parse_pattern(&self.worst_config)?;
        let witness = CellSet::parse_pattern(&self.witness)?;
        let covers = self
            .covers
            .iter()
            .map(|c| CellSet::parse_pattern(c))
            .collect::<Result<Vec<_>>>()?;
        if worst.n() != self.n || witness.n() != self.n || covers.iter().any(|c| c.n() != self.n) {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: worst.n(),
            });
        }
        let covers_valid = covers.len() == 3
            && covers.iter().all(|c| !c.is_empty() && crate::covers::is_even_cover(c))
            && (&covers[0] ^ &covers[1]) == covers[2];
        let weight = witness.len();
        Ok(CertificateChecks {
            nullity_is_2: gf2poly::nullity(self.n) == 2,
            coset_sizes_equal: covers_valid
                && weight == self.claimed_min
                && covers.iter().all(|e| (&witness ^ e).len() == weight),
            image_matches: apply_clicks(&witness) == worst,
        })
    }
}

/// Builds the certificate for an arbitrary click set `x` on the tiled
/// partition of parameter k.
pub fn certificate_for_clicks(partition: &RegionPartition, nullity: usize, x: CellSet) -> McpCertificate {
    let worst_config = apply_clicks(&x);
    let weight = x.len();
    let coset_sizes_equal = partition.covers.iter().all(|e| (&x ^ e).len() == weight);
    let image_matches = apply_clicks(&x) == worst_config;
    let region_counts = partition.regions.each_ref().map(|r| (r & &x).len());
    McpCertificate {
        k: partition.k,
        n: partition.n,
        nullity,
        worst_config,
        claimed_min: weight,
        witness: x,
        covers: partition.covers.clone(),
        region_counts,
        checks: CertificateChecks {
            nullity_is_2: nullity == 2,
            coset_sizes_equal,
            image_matches,
        },
    }
}

/// Worst-case construction: the first 2k², 4k² and 4k² cells (row-major) of
/// regions 1, 2 and 3, plus all of region 4. Every member of its coset has the
/// same size, so when the nullity is 2 its minimum is `26k² - 12k + 1`.
///
/// For `d(6k - 1) != 2` the certificate is still built from the tiled covers,
/// but `checks.nullity_is_2` is false and it certifies nothing.
pub fn worst_case_construct(k: usize) -> Result<McpCertificate> {
    let partition = tiled_region_partition(k)?;
    let nullity = gf2poly::nullity(partition.n);
    let ilp = ilp_optimum(k);
    let quotas = [ilp.r1, ilp.r2, ilp.r3, usize::MAX];
    let mut x = CellSet::empty(partition.n);
    for (region, quota) in partition.regions.iter().zip(quotas) {
        for v in region.iter().take(quota) {
            x.insert(v);
        }
    }
    Ok(certificate_for_clicks(&partition, nullity, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn formula_examples() {
        let table: Vec<usize> = [1, 3, 7, 9, 13].into_iter().map(mcp_formula).collect();
        assert_eq!(table, [15, 199, 1191, 1999, 4239]);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(mcp_upper_bound(5).unwrap(), 15);
        assert_eq!(mcp_upper_bound(11).unwrap(), 81);
        assert_eq!(mcp_upper_bound(41).unwrap(), 1191);
        assert!(matches!(mcp_upper_bound(6), Err(Error::NotSixKMinusOne { n: 6 })));
    }

    /// Exhaustive ILP search over the box.
    fn ilp_by_enumeration(k: usize) -> usize {
        let k2 = k * k;
        let mut best = 0;
        for r1 in 0..=4 * k2 {
            for r2 in 0..=8 * k2 {
                for r3 in 0..=8 * k2 {
                    if ilp_feasible(k, r1, r2, r3) {
                        best = best.max(r1 + r2 + r3);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn ilp_examples() {
        let o = ilp_optimum(1);
        assert_eq!((o.r1, o.r2, o.r3), (2, 4, 4));
        let o = ilp_optimum(3);
        assert_eq!((o.r1, o.r2, o.r3), (18, 36, 36));
        for k in 1..=3 {
            let o = ilp_optimum(k);
            assert_eq!(o.objective(), ilp_by_enumeration(k));
            assert_eq!(o.total_clicks(), mcp_formula(k));
        }
    }

    #[test]
    fn ilp_certified_up_to_fifty() {
        for k in 1..=50 {
            let o = ilp_optimum(k);
            assert!(o.is_certified_optimal());
            assert_eq!(o.objective(), 10 * k * k);
            assert_eq!(o.total_clicks(), mcp_formula(k));
        }
    }

    #[test]
    fn bruteforce_small() {
        for n in [1, 2, 3] {
            let b = mcp_bruteforce(n).unwrap();
            assert_eq!(b.mcp, n * n);
            assert_eq!(b.witness, CellSet::full(n));
            assert_eq!(b.worst_config, apply_clicks(&CellSet::full(n)));
        }
        assert!(matches!(mcp_bruteforce(6), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(mcp_bruteforce(0), Err(Error::EmptyGrid)));
    }

    #[test]
    fn bruteforce_four() {
        let b = mcp_bruteforce(4).unwrap();
        assert_eq!(b.cosets, 1 << 12);
        // Every config's minimum, computed config by config.
        let mut best = 0;
        for x in 0u64..1 << 16 {
            let y = apply_clicks(&CellSet::from_u64(4, x));
            best = best.max(gridmap::min_clicks(&y).unwrap().count);
        }
        assert_eq!(b.mcp, best);
        assert_eq!(b.mcp, 7);
        assert_eq!(gridmap::min_clicks(&b.worst_config).unwrap().count, b.mcp);
    }

    #[test]
    fn construct_k1() {
        let c = worst_case_construct(1).unwrap();
        assert!(c.is_certified());
        assert_eq!(c.claimed_min, 15);
        assert_eq!(c.region_counts, [2, 4, 4, 5]);
        assert_eq!(c.min_clicks_by_elimination().unwrap(), 15);
    }

    #[test]
    fn construct_k2_is_bound_only() {
        let c = worst_case_construct(2).unwrap();
        assert_eq!(c.nullity, 6);
        assert!(!c.checks.nullity_is_2);
        assert!(!c.is_certified());
        assert_eq!(c.claimed_min, 81);
        assert!(c.checks.coset_sizes_equal && c.checks.image_matches);
        // more kernel elements can only lower the minimum
        assert!(c.min_clicks_by_elimination().unwrap() <= 81);
    }

    #[test]
    fn any_region_choice_attains_the_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for k in [1, 3] {
            let partition = tiled_region_partition(k).unwrap();
            let ilp = ilp_optimum(k);
            for _ in 0..5 {
                let mut x = CellSet::empty(partition.n);
                for (region, quota) in partition.regions.iter().zip([ilp.r1, ilp.r2, ilp.r3]) {
                    let mut cells: Vec<usize> = region.iter().collect();
                    cells.shuffle(&mut rng);
                    cells.into_iter().take(quota).for_each(|v| x.insert(v));
                }
                partition.regions[3].iter().for_each(|v| x.insert(v));
                let c = certificate_for_clicks(&partition, gf2poly::nullity(partition.n), x);
                assert!(c.is_certified(), "k={k}");
                assert_eq!(c.min_clicks_by_elimination().unwrap(), mcp_formula(k));
            }
        }
    }

    #[test]
    fn certificate_json_round_trip_and_recheck() {
        let c = worst_case_construct(1).unwrap();
        let doc = CertificateDocument::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(doc, c.to_document());
        assert_eq!(doc.recheck().unwrap(), c.checks);

        let mut forged = doc.clone();
        forged.claimed_min = 16;
        assert!(!forged.recheck().unwrap().coset_sizes_equal);
        let mut forged = doc;
        forged.worst_config = CellSet::empty(5).to_pattern();
        assert!(!forged.recheck().unwrap().image_matches);
    }
}
