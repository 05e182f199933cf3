//! Build one instance of every solution family and print its shape.
//!
//! ```bash
//! cargo run --example families_tour
//! ```

use ybe::families;
use ybe::solution::Solution;

fn describe(name: &str, s: &Solution) {
    println!(
        "{name:<22} |X| = {:>3}   ybe={} involutive={} nondegenerate={}",
        s.n(),
        s.check_ybe(),
        s.check_involutive(),
        s.check_nondegenerate(),
    );
    if let Some(labels) = s.labels() {
        let origin = &labels[0];
        let image = s.sigma_row(0).apply(0);
        println!(
            "{:<22} sigma_{origin:?}({origin:?}) = {:?}",
            "", labels[image]
        );
    }
}

fn main() {
    describe("cyclic(5)", &families::cyclic_solution(5).unwrap());
    describe("remark22(4,2,2)", &families::remark22(4, 2, 2).unwrap());
    describe("remark31(3)", &families::remark31(3).unwrap());
    describe("theorem23(2,3)", &families::theorem23(2, 3).unwrap());
    describe("theorem_main(2,1)", &families::theorem_main(2, 1).unwrap());
    describe("theorem_main(3,1)", &families::theorem_main(3, 1).unwrap());
    describe("theorem42(7,3,1)", &families::theorem42(7, 3, 1).unwrap());

    // solutions serialise to a canonical JSON document
    let s = families::theorem_main(2, 1).unwrap();
    println!("\ntheorem_main(2,1) as JSON:\n{}", s.to_json_string());
}
