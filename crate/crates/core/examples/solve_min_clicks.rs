// Solve a configuration, enumerate its whole solution coset and pick the
// smallest solution.
//
//     cargo run --example solve_min_clicks

use lightsout::gridmap::{all_solutions, is_solvable, min_clicks, CellSet};

fn main() -> lightsout::Result<()> {
    let lights = CellSet::parse_pattern("#####\n#####\n#####\n#####\n#####\n")?;
    println!("all lights on, 5x5; solvable: {}", is_solvable(&lights));
    for (i, x) in all_solutions(&lights)?.iter().enumerate() {
        println!("solution {i}: {} clicks", x.len());
    }
    let best = min_clicks(&lights)?;
    println!("\nminimum: {} clicks\n{}", best.count, best.witness);

    let single = CellSet::from_coords(5, [(0, 0)])?;
    match min_clicks(&single) {
        Err(lightsout::Error::Unsolvable) => println!("a single corner light is unsolvable"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
