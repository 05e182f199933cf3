//! The left brace carried by the permutation group of a solution,
//! computed through the integer-lattice quotient, with its two
//! consistency checks: the lambda map must reproduce sigma on
//! generators, and the socle-lattice index must equal the group order.
//!
//! ```bash
//! cargo run --example structure_brace
//! ```

use ybe::families;
use ybe::structure::{build_permutation_brace, check_lambda_on_generators, socle_index_check};

fn main() {
    for (name, s) in [
        ("cyclic(4)", families::cyclic_solution(4).unwrap()),
        ("remark31(2)", families::remark31(2).unwrap()),
        ("theorem_main(2,1)", families::theorem_main(2, 1).unwrap()),
    ] {
        let pb = build_permutation_brace(&s).unwrap();
        println!("{name}:");
        println!("  brace order          {}", pb.brace.order());
        println!("  brace axioms         {}", pb.brace.verify_brace());
        println!(
            "  lambda on generators {}",
            check_lambda_on_generators(&s, &pb)
        );
        println!("  socle index check    {}", socle_index_check(&s, &pb));
        println!("  socle lattice basis:");
        for row in pb.lattice.basis() {
            println!("    {row:?}");
        }
        println!();
    }

    // the coset -> permutation sidecar pairs each brace element with
    // its image in the symmetric group
    let s = families::cyclic_solution(3).unwrap();
    let pb = build_permutation_brace(&s).unwrap();
    println!("cyclic(3) sidecar map:\n{}", pb.sidecar_json());
}
