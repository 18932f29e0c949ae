// The four regions of a nullity-2 grid of side 6k-1, labeled 1..4.
//
//     cargo run --example region_partition -- 3

use lightsout::covers::{region_partition, RegionSizes};

fn main() -> lightsout::Result<()> {
    let k: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1);
    let p = region_partition(k)?;
    print!("{}", p.to_label_grid());
    let sizes = p.sizes();
    assert_eq!(sizes, RegionSizes::expected(k));
    println!("sizes: {:?}", sizes.as_array());
    Ok(())
}
