//! Exact permutation-group computations: stabiliser-chain orders,
//! p-group tests, element orders, orbits.
//!
//! ```bash
//! cargo run --example permutation_groups
//! ```

use ybe::families;
use ybe::group::{self, PermGroup};

fn main() {
    for (name, s) in [
        ("theorem_main(2,1)", families::theorem_main(2, 1).unwrap()),
        ("theorem_main(3,1)", families::theorem_main(3, 1).unwrap()),
        ("remark31(2)", families::remark31(2).unwrap()),
        ("theorem42(7,3,1)", families::theorem42(7, 3, 1).unwrap()),
    ] {
        let g = PermGroup::from_generators(s.n(), s.sigma().to_vec()).unwrap();
        println!("{name}:");
        println!("  degree      {}", g.degree());
        println!("  order       {}", g.order());
        println!("  base        {:?}", g.base());
        println!("  transitive  {}", g.is_transitive().unwrap());
        for p in [2u64, 3, 7] {
            if group::is_p_group(g.order(), p).unwrap() {
                println!("  a {p}-group");
            }
        }
        let origin = s.sigma_row(0);
        println!("  order of sigma_0: {}", origin.element_order());
        println!();
    }

    // orbits drive the indecomposability test
    let s = families::cyclic_solution(6).unwrap();
    let orbit = group::orbit(s.sigma(), 0).unwrap();
    println!("orbit of 0 under the cyclic(6) rows: {orbit:?}");
}
