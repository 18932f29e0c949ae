//! Command-line driver. [`run`] parses arguments and writes to the given
//! streams so the binary stays a one-liner and every command is testable.
//!
//! Exit codes: 0 success, 1 usage, internal or verification failure, 2 the
//! input configuration is unsolvable.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::builder::RangedU64ValueParser;
use clap::{Parser, Subcommand, ValueEnum};

use crate::covers::{self, tile_cover};
use crate::error::{Error, Result};
use crate::gf2poly;
use crate::gridmap::{self, CellSet};
use crate::mcp;
use crate::scan::{self, CensusFile, RecordFormat, Residue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNSOLVABLE: i32 = 2;

/// Largest side length accepted by commands that run full elimination.
pub const MAX_ELIMINATION_SIDE: usize = 128;

#[derive(Debug, Parser)]
#[command(name = "lightsout", version, about = "Lights Out kernels, solutions and Most Clicks certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

fn side() -> RangedU64ValueParser<usize> {
    RangedU64ValueParser::new().range(1..)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the nullity d(n) of the n×n grid
    Nullity {
        #[arg(value_parser = side())]
        n: usize,
    },
    /// Print a reduced basis of the kernel (even parity covers)
    Kernel {
        #[arg(value_parser = side())]
        n: usize,
        /// Emit ASCII PBM (P1) images instead of text patterns
        #[arg(long)]
        pbm: bool,
        /// Print every nonzero kernel element rather than the basis
        #[arg(long)]
        span: bool,
    },
    /// Solve a configuration given as a pattern file
    Solve {
        file: PathBuf,
        /// Return a minimum-click solution instead of the canonical one
        #[arg(long)]
        min: bool,
    },
    /// Most Clicks Problem: bound, exhaustive value or certificate
    Mcp {
        /// Grid side; for the bound and --certify it must be 6k-1
        #[arg(value_parser = side())]
        n: Option<usize>,
        /// Tiling parameter, n = 6k-1
        #[arg(long, value_parser = side())]
        k: Option<usize>,
        /// Exhaustive enumeration (small grids only)
        #[arg(long, conflicts_with = "certify")]
        brute: bool,
        /// Build and check a worst-case certificate
        #[arg(long)]
        certify: bool,
        /// Write the certificate JSON here instead of stdout
        #[arg(long, requires = "certify")]
        out: Option<PathBuf>,
        /// Also confirm the certificate by elimination-based minimum search
        #[arg(long, requires = "certify")]
        confirm: bool,
    },
    /// Re-check a certificate JSON file from its patterns alone
    CheckCert { file: PathBuf },
    /// Tile an even parity cover of the (n-1)×(n-1) grid k×k times
    Tile {
        file: PathBuf,
        #[arg(value_parser = side())]
        n: usize,
        #[arg(value_parser = side())]
        k: usize,
        #[arg(long)]
        pbm: bool,
    },
    /// Print the four regions of the (6k-1)×(6k-1) grid
    Regions {
        #[arg(value_parser = side())]
        k: usize,
        #[arg(long)]
        pbm: bool,
    },
    /// Nullity census for n = 1..=n_max
    Scan {
        #[arg(value_parser = side())]
        n_max: usize,
        /// Only n ≡ 5 (mod 12); assumes nullity-2 sizes lie in that class
        #[arg(long)]
        fast: bool,
        /// Append records to this file (resumable), then rewrite it sorted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record format; defaults to the output file extension
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Check d(2·3^k - 1) = 2 for k = 1..=k_max
    Conjecture {
        #[arg(long, default_value_t = 8, value_parser = RangedU64ValueParser::<u32>::new().range(1..))]
        k_max: u32,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if shown {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return if shown { EXIT_OK } else { EXIT_FAILURE };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Error::Unsolvable) => {
            let _ = writeln!(out, "unsolvable");
            EXIT_UNSOLVABLE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn check_side(n: usize) -> Result<()> {
    if n > MAX_ELIMINATION_SIDE {
        return Err(Error::InvalidParameter(format!(
            "side {n} exceeds the elimination limit {MAX_ELIMINATION_SIDE}"
        )));
    }
    Ok(())
}

fn read_pattern(path: &Path) -> Result<CellSet> {
    CellSet::parse_pattern(&fs::read_to_string(path)?)
}

fn write_sets(out: &mut dyn Write, sets: &[CellSet], pbm: bool) -> Result<()> {
    for (i, s) in sets.iter().enumerate() {
        if pbm {
            out.write_all(s.to_pbm().as_bytes())?;
        } else {
            if i > 0 {
                writeln!(out)?;
            }
            out.write_all(s.to_pattern().as_bytes())?;
        }
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Nullity { n } => {
            writeln!(out, "{}", gf2poly::nullity(n))?;
        }
        Command::Kernel { n, pbm, span } => {
            check_side(n)?;
            let kernel = gridmap::kernel_basis(n);
            if kernel.dim() == 0 {
                writeln!(out, "(empty kernel)")?;
            } else if span {
                write_sets(out, &kernel.nonzero_elements(), pbm)?;
            } else {
                write_sets(out, kernel.elements(), pbm)?;
            }
        }
        Command::Solve { file, min } => {
            let config = read_pattern(&file)?;
            check_side(config.n())?;
            let solution = if min {
                gridmap::min_clicks(&config)?.witness
            } else {
                gridmap::solve_particular(&config)?
            };
            writeln!(out, "clicks: {}", solution.len())?;
            out.write_all(solution.to_pattern().as_bytes())?;
        }
        Command::Mcp {
            n,
            k,
            brute,
            certify,
            out: path,
            confirm,
        } => return run_mcp(n, k, brute, certify, path, confirm, out),
        Command::CheckCert { file } => {
            let doc = mcp::CertificateDocument::from_json(&fs::read_to_string(&file)?)?;
            let checks = doc.recheck()?;
            writeln!(
                out,
                "nullity_is_2: {}\ncoset_sizes_equal: {}\nimage_matches: {}",
                checks.nullity_is_2, checks.coset_sizes_equal, checks.image_matches
            )?;
            let certified = checks.all() && doc.claimed_min == mcp::mcp_formula(doc.k);
            writeln!(out, "{}", if certified { "certified" } else { "not certified" })?;
            if checks != doc.checks {
                writeln!(err, "stored checks disagree with recomputed checks")?;
                return Ok(EXIT_FAILURE);
            }
        }
        Command::Tile { file, n, k, pbm } => {
            let q = read_pattern(&file)?;
            let tiled = tile_cover(&q, n, k)?;
            write_sets(out, &[tiled], pbm)?;
        }
        Command::Regions { k, pbm } => {
            let p = covers::region_partition(k)?;
            if pbm {
                write_sets(out, &p.regions, true)?;
            } else {
                out.write_all(p.to_label_grid().as_bytes())?;
                let s = p.sizes();
                writeln!(out, "sizes: {} {} {} {}", s.r1, s.r2, s.r3, s.r4)?;
            }
        }
        Command::Scan {
            n_max,
            fast,
            out: path,
            format,
        } => return run_scan(n_max, fast, path, format, out, err),
        Command::Conjecture { k_max } => {
            let report = scan::check_conjecture_2_3k(k_max)?;
            for e in &report.entries {
                writeln!(
                    out,
                    "k={} n={} d={} {}",
                    e.k,
                    e.n,
                    e.nullity,
                    if e.holds { "holds" } else { "FAILS" }
                )?;
            }
            for e in report.failures() {
                let msg = format!("FINDING: d(2*3^{}-1) = d({}) = {}, not 2", e.k, e.n, e.nullity);
                writeln!(out, "{msg}")?;
                writeln!(err, "{msg}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn run_mcp(
    n: Option<usize>,
    k: Option<usize>,
    brute: bool,
    certify: bool,
    path: Option<PathBuf>,
    confirm: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let n = match (n, k) {
        (Some(n), Some(k)) if n != 6 * k - 1 => {
            return Err(Error::InvalidParameter(format!("n = {n} does not match k = {k}")))
        }
        (Some(n), _) => n,
        (None, Some(k)) => 6 * k - 1,
        (None, None) => return Err(Error::InvalidParameter("give a side n or --k".into())),
    };
    if brute {
        let b = mcp::mcp_bruteforce(n)?;
        writeln!(out, "{}", b.mcp)?;
        writeln!(out, "worst configuration:")?;
        out.write_all(b.worst_config.to_pattern().as_bytes())?;
        return Ok(EXIT_OK);
    }
    let k = mcp::six_k_minus_one(n)?;
    let bound = mcp::mcp_formula(k);
    let nullity = gf2poly::nullity(n);
    let status = if nullity == 2 {
        "exact (nullity 2)".to_string()
    } else {
        format!("upper bound only (nullity {nullity})")
    };
    if !certify {
        writeln!(out, "{bound} {status}")?;
        return Ok(EXIT_OK);
    }
    let cert = mcp::worst_case_construct(k)?;
    let verdict = if cert.is_certified() {
        "certified".to_string()
    } else {
        status
    };
    writeln!(out, "{} {verdict}", cert.claimed_min)?;
    if confirm {
        check_side(n)?;
        writeln!(out, "min_clicks by elimination: {}", cert.min_clicks_by_elimination()?)?;
    }
    let json = cert.to_json()?;
    match path {
        Some(p) => {
            fs::write(&p, json + "\n")?;
            writeln!(out, "certificate: {}", p.display())?;
        }
        None => writeln!(out, "{json}")?,
    }
    Ok(EXIT_OK)
}

fn run_scan(
    n_max: usize,
    fast: bool,
    path: Option<PathBuf>,
    format: Option<Format>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let filter = fast.then_some(Residue::FAST_MODE);
    let wanted = |n: usize| filter.is_none_or(|r| r.matches(n));
    let mut progress = |n: usize| {
        if n % 1000 < 12 || n == n_max {
            let _ = writeln!(err, "scanned through n = {n}");
        }
    };
    let records = match path {
        Some(p) => {
            let format = match format {
                Some(Format::Csv) => RecordFormat::Csv,
                Some(Format::Jsonl) => RecordFormat::Jsonl,
                None => RecordFormat::from_path(&p),
            };
            let mut file = CensusFile::open(&p, format)?;
            let mut failure = None;
            let known: std::collections::HashSet<usize> =
                (1..=n_max).filter(|&n| file.contains(n)).collect();
            scan::scan_selected(1, n_max, |n| wanted(n) && !known.contains(&n), |r| {
                if failure.is_none() {
                    failure = file.append(r).err();
                }
                progress(r.n);
            })?;
            if let Some(e) = failure {
                return Err(e);
            }
            let all = file.finish()?;
            writeln!(out, "census written to {}", p.display())?;
            all.into_iter().filter(|r| r.n <= n_max && wanted(r.n)).collect()
        }
        None => {
            let mut recs = Vec::new();
            scan::scan_range_with(1, n_max, filter, |r| {
                recs.push(*r);
                progress(r.n);
            })?;
            recs
        }
    };

    let twos = scan::with_nullity(&records, 2);
    writeln!(
        out,
        "mode: {}",
        if fast {
            "fast (n = 5 mod 12 only; assumes the mod-12 restriction)"
        } else {
            "full"
        }
    )?;
    writeln!(out, "nullity-2 count: {}", twos.len())?;
    let list: Vec<String> = twos.iter().map(usize::to_string).collect();
    writeln!(out, "nullity-2 sizes: {}", list.join(", "))?;
    let density = if fast {
        scan::DensityReport::from_count(twos.len(), n_max)
    } else {
        scan::density_report(&records)?
    };
    writeln!(
        out,
        "nullity-2 density: {:.2}% (mod-12 ceiling {:.2}%)",
        100.0 * density.density,
        100.0 * density.ceiling
    )?;
    let report = scan::verify_congruences(&records);
    writeln!(out, "congruence violations: {}", report.violations.len())?;
    if !report.is_clean() {
        for v in &report.violations {
            writeln!(err, "VIOLATION: n = {} has nullity 2 but fails {:?}", v.n, v.rule)?;
        }
        for n in &report.odd_nullities {
            writeln!(err, "VIOLATION: n = {n} has odd nullity")?;
        }
        return Ok(EXIT_FAILURE);
    }
    Ok(EXIT_OK)
}
