// GF(2)[x] arithmetic behind the nullity formula: Fibonacci polynomials,
// substitution x -> x+1 and the GCD whose degree is d(n).
//
//     cargo run --example polynomial_gcd -- 17

use lightsout::gf2poly::{fib_poly, poly_gcd};

fn main() -> lightsout::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let f = fib_poly(n + 1)?;
    let g = f.compose_x_plus_1();
    let gcd = poly_gcd(&f, &g)?;
    println!("f_{}(x)   = {f}", n + 1);
    println!("f_{}(x+1) = {g}", n + 1);
    println!("gcd       = {gcd}");
    println!("d({n}) = {}", gcd.degree().unwrap_or(0));
    Ok(())
}
