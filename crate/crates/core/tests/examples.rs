//! Every example runs to completion with its default arguments.

macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main().expect("example runs");
            }
        }
    };
}

example!(polynomial_gcd);
example!(kernel_patterns);
example!(solve_min_clicks);
example!(tile_covers);
example!(region_partition);
example!(mcp_certificate);
example!(mcp_bruteforce);
example!(nullity_census);
example!(conjecture_check);
