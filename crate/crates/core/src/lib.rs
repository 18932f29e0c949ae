//! Lights Out on n×n grids.
//!
//! Clicking a cell toggles it and its edge neighbors. Over GF(2) this is a
//! linear map on cell sets, and everything here is built on that map:
//!
//! - [`gf2poly`]: GF(2)[x] arithmetic and the grid nullity from Fibonacci
//!   polynomial GCDs.
//! - [`gridmap`]: the click map, Gaussian elimination, kernels, solutions and
//!   minimum-click solutions.
//! - [`covers`]: even parity covers, the reflective tiling construction and
//!   the four-region partition of nullity-2 grids of side 6k-1.
//! - [`mcp`]: the Most Clicks Problem: closed form, ILP certificate, exhaustive
//!   oracle and constructive worst-case certificates.
//! - [`scan`]: nullity census over ranges of n, congruence and conjecture checks.
//! - [`cli`]: the command-line driver behind the `lightsout` binary.

pub mod cli;
pub mod covers;
pub mod error;
pub mod gf2poly;
pub mod gridmap;
pub mod mcp;
pub mod scan;
mod words;

pub use error::{Error, Result};
pub use gf2poly::{nullity, BinaryPolynomial};
pub use gridmap::{CellSet, GridSystem, KernelBasis, MinClicks};
