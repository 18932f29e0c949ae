// Nullity census: which n give nullity 2, and do they obey the parity and
// residue constraints.
//
//     cargo run --release --example nullity_census -- 2000

use lightsout::scan::{density_report, scan_range, verify_congruences, with_nullity};

fn main() -> lightsout::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(500);
    let records = scan_range(1, n_max, None)?;
    let twos = with_nullity(&records, 2);
    println!("nullity-2 sizes up to {n_max}: {twos:?}");
    let density = density_report(&records)?;
    println!(
        "density {:.2}% against the mod-12 ceiling {:.2}%",
        100.0 * density.density,
        100.0 * density.ceiling
    );
    let report = verify_congruences(&records);
    println!("congruence violations: {}", report.violations.len());
    Ok(())
}
