//! Nullity census over ranges of n, with the checks run against it: parity
//! and residue constraints on nullity-2 sizes, the `2·3^k - 1` family,
//! nullity-2 density, and tiling lower bounds.
//!
//! Records persist as CSV (`n,nullity`) or JSON lines, one record per line.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2poly::{self, FibonacciPolynomials};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: usize,
    pub nullity: usize,
}

/// Keep only `n ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Residue {
    pub modulus: usize,
    pub residue: usize,
}

impl Residue {
    /// The only class that can contain nullity-2 sizes, `n ≡ 5 (mod 12)`.
    /// Scans restricted to it assume that result rather than test it.
    pub const FAST_MODE: Residue = Residue {
        modulus: 12,
        residue: 5,
    };

    pub fn matches(&self, n: usize) -> bool {
        n % self.modulus == self.residue % self.modulus
    }
}

/// Records per parallel batch.
const BATCH: usize = 64;

pub fn scan_range(n_min: usize, n_max: usize, filter: Option<Residue>) -> Result<Vec<ScanRecord>> {
    let mut out = Vec::new();
    scan_range_with(n_min, n_max, filter, |r| out.push(*r))?;
    Ok(out)
}

/// Computes `d(n)` for every n in `[n_min, n_max]` passing `filter`, calling
/// `on_record` in increasing n.
///
/// Fibonacci polynomials are generated once in order; the GCDs run in
/// parallel batches. Output does not depend on the thread count.
pub fn scan_range_with(
    n_min: usize,
    n_max: usize,
    filter: Option<Residue>,
    on_record: impl FnMut(&ScanRecord),
) -> Result<()> {
    if let Some(f) = filter {
        if f.modulus == 0 {
            return Err(Error::InvalidParameter("residue modulus must be positive".into()));
        }
    }
    scan_selected(n_min, n_max, |n| filter.is_none_or(|r| r.matches(n)), on_record)
}

/// Like [`scan_range_with`], computing only the n accepted by `include`.
/// Used to resume a partially written census.
pub fn scan_selected(
    n_min: usize,
    n_max: usize,
    include: impl Fn(usize) -> bool,
    mut on_record: impl FnMut(&ScanRecord),
) -> Result<()> {
    if n_min == 0 || n_min > n_max {
        return Err(Error::InvalidRange {
            min: n_min,
            max: n_max,
        });
    }
    let mut batch = Vec::with_capacity(BATCH);
    let mut flush = |batch: &mut Vec<(usize, gf2poly::BinaryPolynomial)>| {
        let records: Vec<ScanRecord> = batch
            .par_iter()
            .map(|(n, f)| ScanRecord {
                n: *n,
                nullity: gf2poly::nullity_from_fib(f),
            })
            .collect();
        records.iter().for_each(&mut on_record);
        batch.clear();
    };
    // f_{n+1} belongs to the n×n grid.
    for (m, f) in FibonacciPolynomials::new().skip(n_min).take(n_max - n_min + 1) {
        let n = m - 1;
        if include(n) {
            batch.push((n, f));
            if batch.len() == BATCH {
                flush(&mut batch);
            }
        }
    }
    flush(&mut batch);
    Ok(())
}

pub fn with_nullity(records: &[ScanRecord], nullity: usize) -> Vec<usize> {
    records
        .iter()
        .filter(|r| r.nullity == nullity)
        .map(|r| r.n)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Congruence {
    /// n is odd
    Odd,
    /// n ≡ 5 (mod 6)
    FiveModSix,
    /// n ≡ 5 (mod 12)
    FiveModTwelve,
}

impl Congruence {
    pub const ALL: [Congruence; 3] = [Self::Odd, Self::FiveModSix, Self::FiveModTwelve];

    pub fn holds(&self, n: usize) -> bool {
        match self {
            Self::Odd => n % 2 == 1,
            Self::FiveModSix => n % 6 == 5,
            Self::FiveModTwelve => n % 12 == 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: usize,
    pub rule: Congruence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub nullity_two: usize,
    pub odd_nullities: Vec<usize>,
    pub violations: Vec<Violation>,
}

impl CongruenceReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.odd_nullities.is_empty()
    }
}

/// Every nullity-2 record must satisfy all three congruences. Odd nullities
/// are reported too, since square grids only ever have even nullity.
pub fn verify_congruences(records: &[ScanRecord]) -> CongruenceReport {
    let mut violations = Vec::new();
    let mut nullity_two = 0;
    for r in records.iter().filter(|r| r.nullity == 2) {
        nullity_two += 1;
        violations.extend(
            Congruence::ALL
                .iter()
                .filter(|c| !c.holds(r.n))
                .map(|&rule| Violation { n: r.n, rule }),
        );
    }
    CongruenceReport {
        nullity_two,
        odd_nullities: records
            .iter()
            .filter(|r| r.nullity % 2 == 1)
            .map(|r| r.n)
            .collect(),
        violations,
    }
}

/// Largest n the `2·3^k - 1` check will compute.
pub const CONJECTURE_N_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureEntry {
    pub k: u32,
    pub n: usize,
    pub nullity: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub entries: Vec<ConjectureEntry>,
}

impl ConjectureReport {
    pub fn failures(&self) -> Vec<&ConjectureEntry> {
        self.entries.iter().filter(|e| !e.holds).collect()
    }
}

/// Whether `d(2·3^k - 1) = 2` for each k in `1..=k_max`. A failure is a
/// finding to report, not an error.
pub fn check_conjecture_2_3k(k_max: u32) -> Result<ConjectureReport> {
    if k_max == 0 {
        return Err(Error::InvalidParameter("k_max must be at least 1".into()));
    }
    let ns: Vec<(u32, usize)> = (1..=k_max).map(|k| (k, 2 * 3usize.pow(k) - 1)).collect();
    if let Some(&(_, n)) = ns.last() {
        if n > CONJECTURE_N_LIMIT {
            return Err(Error::InvalidParameter(format!(
                "2*3^{k_max}-1 = {n} exceeds the limit {CONJECTURE_N_LIMIT}"
            )));
        }
    }
    let entries = ns
        .par_iter()
        .map(|&(k, n)| {
            let nullity = gf2poly::nullity(n);
            ConjectureEntry {
                k,
                n,
                nullity,
                holds: nullity == 2,
            }
        })
        .collect();
    Ok(ConjectureReport { entries })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub n_max: usize,
    pub nullity_two: usize,
    pub density: f64,
    /// Density of `n ≡ 5 (mod 12)`, the most nullity-2 sizes could occupy.
    pub ceiling: f64,
}

impl DensityReport {
    pub fn from_count(nullity_two: usize, n_max: usize) -> Self {
        Self {
            n_max,
            nullity_two,
            density: nullity_two as f64 / n_max as f64,
            ceiling: 1.0 / 12.0,
        }
    }
}

/// Nullity-2 density over records that cover exactly `1..=n_max`.
pub fn density_report(records: &[ScanRecord]) -> Result<DensityReport> {
    let contiguous = records.iter().enumerate().all(|(i, r)| r.n == i + 1);
    if records.is_empty() || !contiguous {
        return Err(Error::InvalidParameter(
            "density needs records for every n from 1".into(),
        ));
    }
    let count = records.iter().filter(|r| r.nullity == 2).count();
    Ok(DensityReport::from_count(count, records.len()))
}

/// `d(nk - 1) ≥ d(n - 1)` for one (n, k).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingBoundCheck {
    pub n: usize,
    pub k: usize,
    pub large: usize,
    pub small: usize,
    pub holds: bool,
}

/// Tiling lower bound against census nullities, for every `n ≥ 2`, `k ≥ 2`
/// with `nk - 1 ≤ limit`.
pub fn tiling_bound_checks(limit: usize) -> Vec<TilingBoundCheck> {
    let nullities: Vec<usize> = (0..=limit).map(gf2poly::nullity).collect();
    let mut out = Vec::new();
    for n in 2..=limit {
        for k in (2..).take_while(|k| n * k - 1 <= limit) {
            let (large, small) = (nullities[n * k - 1], nullities[n - 1]);
            out.push(TilingBoundCheck {
                n,
                k,
                large,
                small,
                holds: large >= small,
            });
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Csv,
    Jsonl,
}

impl RecordFormat {
    /// `.jsonl` selects JSON lines; anything else is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") => Self::Jsonl,
            _ => Self::Csv,
        }
    }

    fn line(&self, r: &ScanRecord) -> Result<String> {
        Ok(match self {
            Self::Csv => format!("{},{}", r.n, r.nullity),
            Self::Jsonl => serde_json::to_string(r)?,
        })
    }
}

const CSV_HEADER: &str = "n,nullity";

fn parse_line(line: &str, lineno: usize) -> Result<Option<ScanRecord>> {
    let line = line.trim();
    if line.is_empty() || line == CSV_HEADER {
        return Ok(None);
    }
    if line.starts_with('{') {
        return serde_json::from_str(line).map(Some).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        });
    }
    let bad = || Error::Parse {
        line: lineno,
        message: format!("expected `n,nullity`, found {line:?}"),
    };
    let (n, d) = line.split_once(',').ok_or_else(bad)?;
    Ok(Some(ScanRecord {
        n: n.parse().map_err(|_| bad())?,
        nullity: d.parse().map_err(|_| bad())?,
    }))
}

/// Reads records in either format; a later record for the same n wins.
pub fn load_records(path: &Path) -> Result<Vec<ScanRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let mut map = BTreeMap::new();
    for (i, line) in reader.lines().enumerate() {
        if let Some(r) = parse_line(&line?, i + 1)? {
            map.insert(r.n, r);
        }
    }
    Ok(map.into_values().collect())
}

/// Writes records sorted by n, replacing the file.
pub fn write_records(path: &Path, records: &[ScanRecord], format: RecordFormat) -> Result<()> {
    let mut sorted = records.to_vec();
    sorted.sort();
    sorted.dedup_by_key(|r| r.n);
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(File::create(&tmp)?);
        if format == RecordFormat::Csv {
            writeln!(w, "{CSV_HEADER}")?;
        }
        for r in &sorted {
            writeln!(w, "{}", format.line(r)?)?;
        }
        w.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

/// Append-only census file. Records already present are kept, so an
/// interrupted scan resumes where it stopped; [`CensusFile::finish`] rewrites
/// the file sorted.
pub struct CensusFile {
    path: std::path::PathBuf,
    format: RecordFormat,
    existing: BTreeMap<usize, ScanRecord>,
    writer: BufWriter<File>,
}

impl CensusFile {
    pub fn open(path: &Path, format: RecordFormat) -> Result<Self> {
        let existing: BTreeMap<usize, ScanRecord> = if path.exists() {
            load_records(path)?.into_iter().map(|r| (r.n, r)).collect()
        } else {
            BTreeMap::new()
        };
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let fresh = file.metadata()?.len() == 0;
        let mut writer = BufWriter::new(file);
        if fresh && format == RecordFormat::Csv {
            writeln!(writer, "{CSV_HEADER}")?;
        }
        Ok(Self {
            path: path.to_path_buf(),
            format,
            existing,
            writer,
        })
    }

    pub fn contains(&self, n: usize) -> bool {
        self.existing.contains_key(&n)
    }

    pub fn get(&self, n: usize) -> Option<&ScanRecord> {
        self.existing.get(&n)
    }

    pub fn append(&mut self, r: &ScanRecord) -> Result<()> {
        if self.existing.insert(r.n, *r).is_none() {
            writeln!(self.writer, "{}", self.format.line(r)?)?;
        }
        Ok(())
    }

    /// Flushes, rewrites the file sorted, and returns every record held.
    pub fn finish(mut self) -> Result<Vec<ScanRecord>> {
        self.writer.flush()?;
        let records: Vec<ScanRecord> = self.existing.into_values().collect();
        write_records(&self.path, &records, self.format)?;
        Ok(records)
    }
}
