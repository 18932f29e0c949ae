// Exact Most Clicks values by enumerating click space modulo the kernel.
//
//     cargo run --release --example mcp_bruteforce

use lightsout::mcp::mcp_bruteforce;

fn main() -> lightsout::Result<()> {
    for n in 1..=5 {
        let b = mcp_bruteforce(n)?;
        println!("MCP({n}) = {:>2} over {} cosets", b.mcp, b.cosets);
    }
    Ok(())
}
