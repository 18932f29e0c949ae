// Build worst-case certificates for the (6k-1)x(6k-1) grids and confirm them
// by elimination where that is cheap.
//
//     cargo run --release --example mcp_certificate

use lightsout::mcp::{ilp_optimum, mcp_formula, worst_case_construct, CertificateDocument};

fn main() -> lightsout::Result<()> {
    for k in 1..=4 {
        let ilp = ilp_optimum(k);
        let cert = worst_case_construct(k)?;
        let status = if cert.is_certified() {
            "certified".to_string()
        } else {
            format!("bound only, nullity {}", cert.nullity)
        };
        println!(
            "k={k} n={:>2}: ILP ({}, {}, {}) -> {} clicks [{status}]",
            cert.n,
            ilp.r1,
            ilp.r2,
            ilp.r3,
            mcp_formula(k)
        );
        if k <= 3 {
            println!("      min_clicks by elimination: {}", cert.min_clicks_by_elimination()?);
        }
    }
    let doc = CertificateDocument::from_json(&worst_case_construct(1)?.to_json()?)?;
    println!("\n5x5 certificate re-check: {:?}", doc.recheck()?);
    println!("worst configuration:\n{}", doc.worst_config);
    Ok(())
}
