//! Exact integer helpers shared across the crate: primality, modular
//! powers, factorisation and mixed-radix point encodings.
//!
//! Everything here is deterministic trial-division arithmetic; group
//! orders handed in from outside are unbounded (`BigUint`), so the
//! factorisation routines work on those too, with an explicit bound on
//! the trial divisor instead of a silent give-up.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Largest trial divisor used when factoring unbounded integers.
const TRIAL_DIVISION_BOUND: u64 = 10_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending. `n = 0, 1` have none.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        out.push(p);
        while (*n).is_multiple_of(p) {
            *n /= p;
        }
    };
    if n.is_multiple_of(2) && n > 1 {
        push(2, &mut n);
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|dd| dd <= n) {
        if n.is_multiple_of(d) {
            push(d, &mut n);
        }
        d += 2;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct prime divisors of an unbounded integer, ascending.
///
/// Returns `None` when a composite cofactor survives trial division up
/// to the bound (`10^7`); callers must surface that explicitly rather
/// than report a partial factorisation.
pub fn distinct_prime_factors_big(n: &BigUint) -> Option<Vec<u64>> {
    if let Ok(small) = u64::try_from(n) {
        return Some(distinct_prime_factors(small));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let one = BigUint::one();
    fn divide_out(p: u64, rest: &mut BigUint, out: &mut Vec<u64>) {
        if (&*rest % p).is_zero() {
            out.push(p);
            while (&*rest % p).is_zero() {
                *rest /= p;
            }
        }
    }
    divide_out(2, &mut rest, &mut out);
    let mut d = 3u64;
    while rest > one && d <= TRIAL_DIVISION_BOUND {
        divide_out(d, &mut rest, &mut out);
        if let Ok(small) = u64::try_from(&rest) {
            out.extend(distinct_prime_factors(small));
            rest = one.clone();
        }
        d += 2;
    }
    if rest > one {
        // Whatever survived has no divisor below the bound; it is prime
        // iff it is below the bound squared.
        if rest < BigUint::from(TRIAL_DIVISION_BOUND) * BigUint::from(TRIAL_DIVISION_BOUND) {
            let p: u64 = rest.try_into().ok()?;
            out.push(p);
        } else {
            return None;
        }
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

/// Is `order` a power of the prime `p` (including `p^0 = 1`)?
pub fn is_prime_power_of(order: &BigUint, p: u64) -> bool {
    let mut rest = order.clone();
    let one = BigUint::one();
    if rest.is_zero() {
        return false;
    }
    while (&rest % p).is_zero() {
        rest /= p;
    }
    rest == one
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    assert!(modulus > 0);
    let m = modulus as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `u` modulo `m`, or `None` when `gcd(u, m) != 1`.
pub fn multiplicative_order(u: u64, m: u64) -> Option<u64> {
    if m == 0 || num_integer::gcd(u, m) != 1 {
        return None;
    }
    let u = u % m;
    let mut acc = u;
    let mut k = 1u64;
    while acc != 1 % m {
        acc = (acc as u128 * u as u128 % m as u128) as u64;
        k += 1;
    }
    Some(k)
}

/// `p^n` with overflow reported instead of wrapped.
pub fn checked_pow(p: u64, n: u32) -> Option<u64> {
    p.checked_pow(n)
}

/// Mixed-radix encoding with the leftmost coordinate most significant.
pub fn encode_mixed_radix(coords: &[u64], radices: &[u64]) -> usize {
    debug_assert_eq!(coords.len(), radices.len());
    let mut idx = 0u64;
    for (c, r) in coords.iter().zip(radices) {
        debug_assert!(c < r);
        idx = idx * r + c;
    }
    idx as usize
}

/// Inverse of [`encode_mixed_radix`].
pub fn decode_mixed_radix(mut idx: usize, radices: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; radices.len()];
    for (slot, r) in out.iter_mut().rev().zip(radices.iter().rev()) {
        *slot = (idx as u64) % r;
        idx /= *r as usize;
    }
    out
}
