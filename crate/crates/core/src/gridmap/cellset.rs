use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, BitXorAssign};

use crate::error::{Error, Result};
use crate::words::{self, WORD_BITS};

/// A set of cells of an n×n grid, stored as an n²-bit row-major bitset.
///
/// The same type is used for light configurations and for click sets. Bits
/// past `n²` are never set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    n: usize,
    words: Vec<u64>,
}

impl CellSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; words::words_for(n * n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.words.fill(u64::MAX);
        s.clear_tail();
        s
    }

    pub fn from_cells(n: usize, cells: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in cells {
            s.check(v)?;
            s.insert(v);
        }
        Ok(s)
    }

    pub fn from_coords(n: usize, coords: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut s = Self::empty(n);
        for (r, c) in coords {
            if r >= n || c >= n {
                return Err(Error::CellOutOfRange { index: r * n + c, n });
            }
            s.insert(r * n + c);
        }
        Ok(s)
    }

    /// Builds a set from raw words; bits past n² are cleared.
    pub(crate) fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        words.resize(words::words_for(n * n), 0);
        let mut s = Self { n, words };
        s.clear_tail();
        s
    }

    /// The low n² bits of `bits` as a set; requires n² ≤ 64.
    pub fn from_u64(n: usize, bits: u64) -> Self {
        assert!(n * n <= WORD_BITS, "{n}x{n} grid does not fit one word");
        Self::from_words(n, vec![bits])
    }

    /// The set as a single word; requires n² ≤ 64.
    pub fn to_u64(&self) -> u64 {
        assert!(self.n * self.n <= WORD_BITS, "grid does not fit one word");
        self.words.first().copied().unwrap_or(0)
    }

    fn clear_tail(&mut self) {
        let bits = self.n * self.n;
        if !bits.is_multiple_of(WORD_BITS) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (bits % WORD_BITS)) - 1;
            }
        }
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.cell_count() {
            Ok(())
        } else {
            Err(Error::CellOutOfRange { index: v, n: self.n })
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cell_count(&self) -> usize {
        self.n * self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.cell_count() && words::get(&self.words, v)
    }

    pub fn contains_at(&self, row: usize, col: usize) -> bool {
        row < self.n && col < self.n && self.contains(row * self.n + col)
    }

    /// Panics if `v` is out of range.
    pub fn insert(&mut self, v: usize) {
        assert!(v < self.cell_count(), "cell {v} out of range");
        self.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.cell_count() {
            self.words[v / WORD_BITS] &= !(1 << (v % WORD_BITS));
        }
    }

    pub fn toggle(&mut self, v: usize) {
        assert!(v < self.cell_count(), "cell {v} out of range");
        words::flip(&mut self.words, v);
    }

    pub fn len(&self) -> usize {
        words::count_ones(&self.words)
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of member cells in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        words::ones(&self.words)
    }

    pub fn complement(&self) -> Self {
        let mut s = Self {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    /// GF(2) inner product: parity of the intersection.
    pub fn dot(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .fold(0, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    fn assert_same_grid(&self, other: &Self) {
        assert_eq!(self.n, other.n, "cell sets from different grid sizes");
    }

    /// Row-major lexicographic order on the bit sequence (cell 0 first, unset
    /// before set). This is the tie-break order used for minimum solutions.
    pub fn cmp_row_major(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                if a != b {
                    let low = (a ^ b).trailing_zeros();
                    return if (a >> low) & 1 == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }

    /// Pattern text: n lines of n characters, `#` set and `.` unset, each
    /// line newline-terminated.
    pub fn to_pattern(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for r in 0..self.n {
            for c in 0..self.n {
                out.push(if self.contains_at(r, c) { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the pattern text format. Rejects ragged or non-square input and
    /// any character other than `#` and `.`. A missing final newline is tolerated.
    pub fn parse_pattern(text: &str) -> Result<Self> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        if body.is_empty() {
            return Err(Error::Parse {
                line: 1,
                message: "empty pattern".into(),
            });
        }
        let lines: Vec<&str> = body.split('\n').collect();
        let n = lines.len();
        let mut s = Self::empty(n);
        for (r, line) in lines.iter().enumerate() {
            let width = line.chars().count();
            if width != n {
                return Err(Error::Parse {
                    line: r + 1,
                    message: format!("expected {n} cells, found {width}"),
                });
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '#' => s.insert(r * n + c),
                    '.' => {}
                    other => {
                        return Err(Error::Parse {
                            line: r + 1,
                            message: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
        Ok(s)
    }

    /// ASCII PBM (P1) image, one pixel per cell, 1 = set.
    pub fn to_pbm(&self) -> String {
        let mut out = format!("P1\n{} {}\n", self.n, self.n);
        for r in 0..self.n {
            let row: Vec<&str> = (0..self.n)
                .map(|c| if self.contains_at(r, c) { "1" } else { "0" })
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellSet(n={}, ", self.n)?;
        f.debug_list().entries(self.iter()).finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pattern())
    }
}

impl std::str::FromStr for CellSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_pattern(s)
    }
}

impl BitXorAssign<&CellSet> for CellSet {
    fn bitxor_assign(&mut self, rhs: &CellSet) {
        self.assert_same_grid(rhs);
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &CellSet {
            type Output = CellSet;

            fn $method(self, rhs: &CellSet) -> CellSet {
                self.assert_same_grid(rhs);
                CellSet {
                    n: self.n,
                    words: self.words.iter().zip(&rhs.words).map(|(a, b)| a $op b).collect(),
                }
            }
        }
    };
}

binop!(BitXor, bitxor, ^);
binop!(BitAnd, bitand, &);
binop!(BitOr, bitor, |);
