//! Run the full verification pipeline over a few instances and print
//! their certificates: one simple solution, one indecomposable
//! irretractable solution that is not simple, and the cyclic solution.
//!
//! ```bash
//! cargo run --example simplicity_certificates
//! ```

use ybe::certificate::{run_checks, Check};
use ybe::families;

fn main() {
    let cases = [
        families::theorem_main(2, 1).unwrap(),
        families::theorem23(2, 2).unwrap(),
        families::cyclic_solution(4).unwrap(),
    ];
    for s in &cases {
        let outcome = run_checks(s, &Check::DEFAULT, 2);
        println!("{}", outcome.certificate.to_json_string());
        if !outcome.all_passed() {
            println!("  failed checks: {}", outcome.failures.join(", "));
        }
        println!();
    }

    // simplicity by hand: every principal congruence of a simple
    // solution collapses the point set to one block
    let s = families::theorem_main(2, 1).unwrap();
    let part = ybe::principal_congruence(&s, 0, 5).unwrap();
    println!(
        "principal congruence of theorem_main(2,1) identifying 0 and 5: {} block(s)",
        part.block_count()
    );
}
