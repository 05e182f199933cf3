//! Congruences and epimorphic images: principal congruence closure,
//! quotient solutions, homomorphisms and fibre profiles, shown on the
//! 8-point solution that covers the cyclic solution on Z/2.
//!
//! ```bash
//! cargo run --example congruence_quotients
//! ```

use ybe::congruence::{is_simple, principal_congruence, quotient_by};
use ybe::families;
use ybe::solution::{fiber_profile, is_homomorphism, Partition};

fn main() {
    let s = families::theorem23(2, 2).unwrap();
    println!(
        "theorem23(2,2): |X| = {}, simple = {}",
        s.n(),
        is_simple(&s).unwrap()
    );

    // identify two points with equal middle coordinate and close up
    let labels = s.labels().unwrap();
    let x = labels.iter().position(|l| l == &[0, 0, 0]).unwrap();
    let y = labels.iter().position(|l| l == &[1, 0, 0]).unwrap();
    let part = principal_congruence(&s, x, y).unwrap();
    println!(
        "closing {:?} ~ {:?} gives {} blocks:",
        labels[x],
        labels[y],
        part.block_count()
    );
    for block in part.blocks() {
        let pretty: Vec<_> = block.iter().map(|&i| &labels[i]).collect();
        println!("  {pretty:?}");
    }

    // the quotient by that congruence is a valid solution again
    let quotient = quotient_by(&s, &part).unwrap();
    println!(
        "quotient: |Y| = {}, ybe = {}",
        quotient.n(),
        quotient.check_ybe()
    );

    // the middle coordinate is an epimorphism onto cyclic(2) with
    // equal fibres
    let target = families::cyclic_solution(2).unwrap();
    let f: Vec<usize> = labels.iter().map(|l| l[1] as usize).collect();
    println!(
        "f = middle coordinate is a homomorphism: {}",
        is_homomorphism(&f, &s, &target)
    );
    println!("fibre sizes: {:?}", fiber_profile(&f, &s, &target).unwrap());
    let kernel = Partition::from_block_ids(f.iter().map(|&v| v as u32).collect()).unwrap();
    let image = quotient_by(&s, &kernel).unwrap();
    println!(
        "quotient by ker(f) has sigma rows {:?} (the cyclic solution)",
        image
            .sigma()
            .iter()
            .map(|p| p.images().to_vec())
            .collect::<Vec<_>>()
    );
}
