//! Even parity covers: verification, reflective tiling onto larger grids, and
//! the four-region partition of a nullity-2 grid of side 6k-1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly;
use crate::gridmap::{kernel_basis, neighborhood_cells, CellSet};

/// True iff every closed neighborhood meets `s` in an even number of cells.
pub fn is_even_cover(s: &CellSet) -> bool {
    let n = s.n();
    (0..n * n).all(|v| neighborhood_cells(n, v).filter(|&u| s.contains(u)).count() % 2 == 0)
}

/// Tiles the cover `q` of the (n-1)×(n-1) grid k×k times onto the
/// (nk-1)×(nk-1) grid, with one empty separator row/column between tiles and
/// every odd tile mirrored along that axis.
pub fn tile_cover(q: &CellSet, n: usize, k: usize) -> Result<CellSet> {
    if n == 0 || q.n() + 1 != n {
        return Err(Error::SizeMismatch {
            expected: n.saturating_sub(1),
            found: q.n(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("tile count k must be at least 1".into()));
    }
    if !is_even_cover(q) {
        return Err(Error::NotEvenCover);
    }
    let size = n * k - 1;
    // Source coordinate along one axis, or None on a separator strip.
    let source = |x: usize| {
        let (tile, offset) = (x / n, x % n);
        match offset {
            o if o == n - 1 => None,
            o if tile % 2 == 0 => Some(o),
            o => Some(n - 2 - o),
        }
    };
    let mut out = CellSet::empty(size);
    for r in 0..size {
        let Some(sr) = source(r) else { continue };
        for c in 0..size {
            if let Some(sc) = source(c) {
                if q.contains_at(sr, sc) {
                    out.insert(r * size + c);
                }
            }
        }
    }
    Ok(out)
}

/// Cells of the (6k-1)×(6k-1) grid split by membership in the three nonzero
/// kernel elements.
///
/// `regions[0]` is the 4k² class, `regions[3]` the cells in no cover, and
/// the two 8k² classes follow in order of their smallest cell. The covers are
/// labeled to match: `covers[0] = R2 ∪ R3`, `covers[1] = R1 ∪ R2`,
/// `covers[2] = R1 ∪ R3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionPartition {
    pub k: usize,
    pub n: usize,
    pub regions: [CellSet; 4],
    pub covers: [CellSet; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionSizes {
    pub r1: usize,
    pub r2: usize,
    pub r3: usize,
    pub r4: usize,
}

impl RegionSizes {
    /// Sizes predicted for parameter k.
    pub fn expected(k: usize) -> Self {
        let k2 = k * k;
        Self {
            r1: 4 * k2,
            r2: 8 * k2,
            r3: 8 * k2,
            r4: 16 * k2 + 1 - 12 * k,
        }
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.r1, self.r2, self.r3, self.r4]
    }
}

impl RegionPartition {
    pub fn sizes(&self) -> RegionSizes {
        let [r1, r2, r3, r4] = self.regions.each_ref().map(CellSet::len);
        RegionSizes { r1, r2, r3, r4 }
    }

    /// One character per cell, `1`..`4` naming its region, in pattern layout.
    pub fn to_label_grid(&self) -> String {
        let mut out = String::new();
        for r in 0..self.n {
            for c in 0..self.n {
                let v = r * self.n + c;
                let label = self.regions.iter().position(|reg| reg.contains(v)).unwrap_or(9);
                out.push(char::from(b'1' + label as u8));
            }
            out.push('\n');
        }
        out
    }
}

/// The three nonzero 5×5 kernel elements tiled onto the (6k-1)×(6k-1) grid.
pub fn tiled_five_by_five_covers(k: usize) -> Result<Vec<CellSet>> {
    kernel_basis(5)
        .nonzero_elements()
        .iter()
        .map(|q| tile_cover(q, 6, k))
        .collect()
}

pub fn region_partition(k: usize) -> Result<RegionPartition> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let n = 6 * k - 1;
    let nullity = gf2poly::nullity(n);
    if nullity != 2 {
        return Err(Error::NullityNotTwo { n, nullity });
    }
    // With nullity 2 the three tiled covers are the whole nonzero kernel.
    tiled_region_partition(k)
}

/// The membership partition for the tiled 5×5 covers, without requiring the
/// tiled covers to span the whole kernel.
pub fn tiled_region_partition(k: usize) -> Result<RegionPartition> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let covers = tiled_five_by_five_covers(k)?;
    partition_from_covers(k, &covers)
}

fn partition_from_covers(k: usize, covers: &[CellSet]) -> Result<RegionPartition> {
    let n = 6 * k - 1;
    let mut classes: [CellSet; 8] = std::array::from_fn(|_| CellSet::empty(n));
    for v in 0..n * n {
        let mask = covers
            .iter()
            .enumerate()
            .fold(0usize, |m, (i, e)| m | (usize::from(e.contains(v)) << i));
        classes[mask].insert(v);
    }
    let expected = RegionSizes::expected(k);
    let pairs = [0b011, 0b101, 0b110];
    if [0b001, 0b010, 0b100, 0b111].iter().any(|&m| !classes[m].is_empty()) {
        return Err(Error::InvalidParameter(
            "covers do not form a two-dimensional kernel".into(),
        ));
    }
    let r1_mask = pairs
        .into_iter()
        .find(|&m| classes[m].len() == expected.r1)
        .ok_or_else(|| Error::InvalidParameter("no region of size 4k^2".into()))?;
    let mut rest: Vec<usize> = pairs.into_iter().filter(|&m| m != r1_mask).collect();
    rest.sort_by_key(|&m| classes[m].iter().next());
    let r1 = classes[r1_mask].clone();
    let r2 = classes[rest[0]].clone();
    let r3 = classes[rest[1]].clone();
    let r4 = classes[0].clone();
    let covers = [&r2 | &r3, &r1 | &r2, &r1 | &r3];
    Ok(RegionPartition {
        k,
        n,
        regions: [r1, r2, r3, r4],
        covers,
    })
}
