// Even parity covers (quiet patterns) of a grid, from Gaussian elimination,
// checked against the polynomial nullity.
//
//     cargo run --example kernel_patterns -- 17

use lightsout::gridmap::{apply_clicks, kernel_basis};
use lightsout::nullity;

fn main() -> lightsout::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let kernel = kernel_basis(n);
    assert_eq!(kernel.dim(), nullity(n));
    println!("{n}x{n} grid: nullity {}", kernel.dim());
    if kernel.dim() > 4 {
        println!("(showing the basis only)");
    }
    let shown = if kernel.dim() <= 4 { kernel.nonzero_elements() } else { kernel.elements().to_vec() };
    for q in shown {
        assert!(apply_clicks(&q).is_empty());
        println!("\n{q}");
    }
    Ok(())
}
