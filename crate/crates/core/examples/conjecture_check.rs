// Is d(2*3^k - 1) = 2? Reports each k; failures are findings.
//
//     cargo run --release --example conjecture_check -- 9

use lightsout::scan::check_conjecture_2_3k;

fn main() -> lightsout::Result<()> {
    let k_max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let report = check_conjecture_2_3k(k_max)?;
    for e in &report.entries {
        println!("k={:<2} n={:<6} d={} {}", e.k, e.n, e.nullity, if e.holds { "" } else { "<- FINDING" });
    }
    Ok(())
}
