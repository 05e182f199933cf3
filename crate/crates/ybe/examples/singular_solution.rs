//! The singular simple solution of cardinality 49: watch each piece of
//! the construction, then verify singularity.
//!
//! A solution is singular when some prime divides its permutation-group
//! order but not its cardinality. Here the group has order 3 * 7^6 on
//! 49 points, so 3 is a singular prime.
//!
//! ```bash
//! cargo run --example singular_solution
//! ```

use ybe::congruence::is_simple_par;
use ybe::families;
use ybe::group;

fn main() {
    let (p, q, n) = (7u64, 3u64, 1u32);

    let t = families::find_order_q_multiplier(p, n, q).unwrap();
    println!("multiplier of order {q} mod {p}^{n}: t = x{t}");

    let reps = families::orbit_reps_with_negation_pairing(p, n, t).unwrap();
    println!("orbit representatives (closed under negation): {reps:?}");

    let j = families::build_j_family_42(p, n, t, &reps).unwrap();
    println!("j-sequence over Z/{}: {:?}", j.modulus, j.values);

    for a in 1..j.modulus {
        let generator = families::compute_va(&j, t, a).unwrap();
        assert_eq!(generator, 1, "V_a must be the full group");
    }
    println!("V_a = Z/{} for every nonzero a", j.modulus);

    let s = families::theorem42(p, q, n).unwrap();
    println!("|X| = {}", s.n());
    println!("simple: {}", is_simple_par(&s, 4).unwrap());

    let order = group::group_order(s.sigma()).unwrap();
    let singular = families::is_singular_witness(&s, &order).unwrap();
    println!("group order {order}, singular primes {singular:?}");
}
