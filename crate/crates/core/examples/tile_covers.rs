// Reflective tiling: every cover of the (n-1)x(n-1) grid yields a cover of
// the (nk-1)x(nk-1) grid, so d(nk-1) >= d(n-1).
//
//     cargo run --example tile_covers

use lightsout::covers::{is_even_cover, tile_cover};
use lightsout::gridmap::{kernel_basis, KernelBasis};
use lightsout::nullity;

fn main() -> lightsout::Result<()> {
    let (n, k) = (5, 2);
    let small = kernel_basis(n - 1);
    let tiled = small
        .nonzero_elements()
        .iter()
        .map(|q| tile_cover(q, n, k))
        .collect::<lightsout::Result<Vec<_>>>()?;
    assert!(tiled.iter().all(is_even_cover));
    let span = KernelBasis::from_vectors(n * k - 1, tiled.clone());
    println!(
        "{} covers of the {}x{} grid tile to an independent set of dimension {} on the {}x{} grid (d = {})",
        tiled.len(),
        n - 1,
        n - 1,
        span.dim(),
        n * k - 1,
        n * k - 1,
        nullity(n * k - 1)
    );
    println!("\n{}", tiled[0]);
    Ok(())
}
