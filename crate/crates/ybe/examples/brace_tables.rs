//! Finite left braces as explicit tables: axioms, the lambda map, the
//! socle, ideals, quotients and simplicity, shown on `Z/4` with the
//! multiplication `a o b = a + b + 2ab`.
//!
//! ```bash
//! cargo run --example brace_tables
//! ```

use ybe::{BraceSimplicity, FiniteBrace};

fn main() {
    let b = FiniteBrace::from_ops(4, |a, c| (a + c) % 4, |a, c| (a + c + 2 * a * c) % 4).unwrap();
    println!("brace axioms hold: {}", b.verify_brace());

    for a in 0..4 {
        let lam = b.lambda(a).unwrap();
        println!("lambda_{a} = {:?}", lam.images());
    }

    let socle = b.socle();
    println!("socle = {socle:?}");
    println!("socle is an ideal: {}", b.is_ideal(&socle));

    let quotient = b.quotient_brace(&socle).unwrap();
    println!(
        "B/soc(B) has order {} and verifies: {}",
        quotient.order(),
        quotient.verify_brace()
    );

    match b.is_simple_brace().unwrap() {
        BraceSimplicity::Simple => println!("B is simple"),
        BraceSimplicity::NotSimple(ideal) => println!("B is not simple; proper ideal {ideal:?}"),
        BraceSimplicity::NotComputed => println!("B too large for the exhaustive test"),
    }

    // left ideals that are not ideals: the Sylow subgroups of (B,+)
    let z6 = FiniteBrace::trivial_cyclic(6);
    println!(
        "Z/6 Sylow subgroup {{0,2,4}} is a left ideal: {}",
        z6.is_left_ideal(&[0, 2, 4])
    );

    println!("\nbrace JSON:\n{}", b.to_json_string());
}
