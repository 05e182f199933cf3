//! Constructors for the built-in solution families.
//!
//! Every family lives on a finite product of cyclic groups. Points are
//! encoded mixed-radix with the leftmost coordinate most significant,
//! and the coordinate decoding is attached to the solution as labels so
//! certificates stay human-checkable.
//!
//! The two-coordinate families (`remark22`, `remark31`, `theorem42`)
//! share one shape: on `(Z/m)^2`, with a multiplier `t` and a sequence
//! `(j_a)` over `Z/m`,
//!
//! ```text
//! sigma_{(a1,a2)}(c1,c2) = (t*c1 + a2, t*(c2 - j_{t*c1 + a2 - a1}))
//! ```
//!
//! `remark22` and `remark31` use `t = 1` with different `j`; `theorem42`
//! uses a multiplier of odd prime order `q` and a `j`-sequence built
//! from orbit representatives paired under negation.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::perm::Perm;
use crate::solution::{Solution, SolutionError};

/// Families construct dense `n x n` sigma tables; this bound keeps them
/// at desk scale.
pub const MAX_CARDINALITY: u64 = 4096;

/// The known Fermat primes. For these, `p - 1` is a power of two, so no
/// odd prime order automorphism exists.
pub const FERMAT_PRIMES: [u64; 5] = [3, 5, 17, 257, 65537];

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("{0} is a Fermat prime; p - 1 has no odd prime divisor")]
    FermatPrime(u64),
    #[error("cardinality {cardinality} exceeds the table bound {MAX_CARDINALITY}")]
    CardinalityTooLarge { cardinality: u64 },
    #[error("parameter overflow computing p^n")]
    Overflow,
    #[error("no element of multiplicative order {q} modulo {p}^{n}")]
    NoOrderQElement { p: u64, n: u32, q: u64 },
    #[error(transparent)]
    Solution(#[from] SolutionError),
}

/// Family tag plus parameters, carried on solutions and certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<u64>,
    /// Chosen multiplier `t(1)` (theorem42 only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_mult: Option<u64>,
    /// Chosen orbit representatives (theorem42 only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub orbit_reps: Option<Vec<u64>>,
}

impl FamilyParams {
    fn new(name: &str) -> FamilyParams {
        FamilyParams {
            name: name.to_string(),
            m: None,
            m1: None,
            m2: None,
            n: None,
            p: None,
            q: None,
            t_mult: None,
            orbit_reps: None,
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (tag, value) in [
            ("m", self.m),
            ("m1", self.m1),
            ("m2", self.m2),
            ("n", self.n),
            ("p", self.p),
            ("q", self.q),
            ("t", self.t_mult),
        ] {
            if let Some(v) = value {
                parts.push(format!("{tag}={v}"));
            }
        }
        format!("{}({})", self.name, parts.join(","))
    }
}

/// How a `j`-sequence was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JConstruction {
    /// `j_0 = 1`, `j_a = m1 + 1` elsewhere.
    Remark22 { m1: u64 },
    /// `j_0 = 1`, `j_a = 0` elsewhere.
    Remark31,
    /// `j_0 = 1`, `j_{t^k(a_i)} = t^k(-1) + 1` over orbit representatives.
    Theorem42 { t_mult: u64, reps: Vec<u64> },
}

/// A sequence `(j_a)` over `Z/m` together with its construction tag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JFamily {
    pub modulus: u64,
    pub values: Vec<u64>,
    pub construction: JConstruction,
}

fn require_prime(p: u64) -> Result<(), FamilyError> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(FamilyError::NotPrime(p))
    }
}

fn check_cardinality(cardinality: u64) -> Result<usize, FamilyError> {
    if cardinality == 0 || cardinality > MAX_CARDINALITY {
        return Err(FamilyError::CardinalityTooLarge { cardinality });
    }
    Ok(cardinality as usize)
}

/// The cyclic solution on `Z/n`: `sigma_i(j) = j - 1`, i.e.
/// `r(i, j) = (j - 1, i + 1)`.
pub fn cyclic_solution(n: u64) -> Result<Solution, FamilyError> {
    if n < 1 {
        return Err(FamilyError::InvalidParams(
            "cyclic solution needs n >= 1".into(),
        ));
    }
    let size = check_cardinality(n)?;
    let row: Vec<u32> = (0..n).map(|j| ((j + n - 1) % n) as u32).collect();
    let rows = vec![row; size];
    let labels = (0..n).map(|i| vec![i]).collect();
    let mut params = FamilyParams::new("cyclic");
    params.n = Some(n);
    Ok(Solution::from_tables(rows)?
        .with_labels(labels)?
        .with_family(params))
}

/// Builds the shared two-coordinate shape on `(Z/m)^2`.
fn j_family_solution(m: u64, j: &[u64], t_mult: u64) -> Result<Solution, FamilyError> {
    debug_assert_eq!(j.len() as u64, m);
    let size = check_cardinality(m.checked_mul(m).ok_or(FamilyError::Overflow)?)?;
    let t = |v: u64| t_mult * v % m;
    let mut rows = Vec::with_capacity(size);
    for a1 in 0..m {
        for a2 in 0..m {
            let mut row = Vec::with_capacity(size);
            for c1 in 0..m {
                for c2 in 0..m {
                    let d1 = (t(c1) + a2) % m;
                    let sub = (d1 + m - a1) % m;
                    let d2 = t((c2 + m - j[sub as usize]) % m);
                    row.push((d1 * m + d2) as u32);
                }
            }
            rows.push(row);
        }
    }
    let labels = (0..m)
        .flat_map(|a1| (0..m).map(move |a2| vec![a1, a2]))
        .collect();
    Ok(Solution::from_tables(rows)?.with_labels(labels)?)
}

/// Indecomposable irretractable non-simple solution on `(Z/m)^2` for a
/// composite `m = m1 * m2`; the second-coordinate reduction mod `m1` is
/// an epimorphism onto the cyclic solution on `Z/m1`.
pub fn remark22(m: u64, m1: u64, m2: u64) -> Result<Solution, FamilyError> {
    if m1 <= 1 || m2 <= 1 {
        return Err(FamilyError::InvalidParams(
            "remark22 needs m1, m2 > 1".into(),
        ));
    }
    if m != m1 * m2 {
        return Err(FamilyError::InvalidParams(format!(
            "remark22 needs m = m1*m2, got {m} != {m1}*{m2}"
        )));
    }
    let mut j = vec![(m1 + 1) % m; m as usize];
    j[0] = 1;
    let mut params = FamilyParams::new("remark22");
    params.m = Some(m);
    params.m1 = Some(m1);
    params.m2 = Some(m2);
    Ok(j_family_solution(m, &j, 1)?.with_family(params))
}

/// Simple solution on `(Z/m)^2` for any `m > 1`.
pub fn remark31(m: u64) -> Result<Solution, FamilyError> {
    if m <= 1 {
        return Err(FamilyError::InvalidParams("remark31 needs m > 1".into()));
    }
    let mut j = vec![0u64; m as usize];
    j[0] = 1;
    let mut params = FamilyParams::new("remark31");
    params.m = Some(m);
    Ok(j_family_solution(m, &j, 1)?.with_family(params))
}

/// Indecomposable irretractable non-simple solution of cardinality
/// `m^2 n` on `Z/m x Z/n x Z/m`:
///
/// ```text
/// sigma_{(a,b,c)}(x,y,z) = (x - c, y - 1, z - [(a,b) == (x-c, y-1)])
/// ```
///
/// Projection to the middle coordinate is an epimorphism onto the
/// cyclic solution on `Z/n`.
pub fn theorem23(m: u64, n: u64) -> Result<Solution, FamilyError> {
    if m <= 1 || n <= 1 {
        return Err(FamilyError::InvalidParams(
            "theorem23 needs m, n > 1".into(),
        ));
    }
    let cardinality = m
        .checked_mul(m)
        .and_then(|v| v.checked_mul(n))
        .ok_or(FamilyError::Overflow)?;
    let size = check_cardinality(cardinality)?;
    let radices = [m, n, m];
    let mut rows = Vec::with_capacity(size);
    for idx in 0..size {
        let abc = arith::decode_mixed_radix(idx, &radices);
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        let mut row = Vec::with_capacity(size);
        for jdx in 0..size {
            let xyz = arith::decode_mixed_radix(jdx, &radices);
            let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
            let x2 = (x + m - c) % m;
            let y2 = (y + n - 1) % n;
            let delta = u64::from(a == x2 && b == y2);
            let z2 = (z + m - delta) % m;
            row.push(arith::encode_mixed_radix(&[x2, y2, z2], &radices) as u32);
        }
        rows.push(row);
    }
    let labels = (0..size)
        .map(|idx| arith::decode_mixed_radix(idx, &radices))
        .collect();
    let mut params = FamilyParams::new("theorem23");
    params.m = Some(m);
    params.n = Some(n);
    Ok(Solution::from_tables(rows)?
        .with_labels(labels)?
        .with_family(params))
}

/// The closed-form inverses of [`theorem23`], as a table:
/// `sigma^{-1}_{(a,b,c)}(x,y,z) = (x + c, y + 1, z + [(a,b) == (x,y)])`.
pub fn theorem23_closed_inverses(m: u64, n: u64) -> Result<Vec<Perm>, FamilyError> {
    if m <= 1 || n <= 1 {
        return Err(FamilyError::InvalidParams(
            "theorem23 needs m, n > 1".into(),
        ));
    }
    let size = check_cardinality(m * m * n)?;
    let radices = [m, n, m];
    let mut out = Vec::with_capacity(size);
    for idx in 0..size {
        let abc = arith::decode_mixed_radix(idx, &radices);
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        let images: Vec<u32> = (0..size)
            .map(|jdx| {
                let xyz = arith::decode_mixed_radix(jdx, &radices);
                let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
                let delta = u64::from(a == x && b == y);
                let coords = [(x + c) % m, (y + 1) % n, (z + delta) % m];
                arith::encode_mixed_radix(&coords, &radices) as u32
            })
            .collect();
        out.push(Perm::from_images(images).expect("closed form is a bijection"));
    }
    Ok(out)
}

/// Simple solution of cardinality `p^(2n+1)` on
/// `Z/p^n x Z/p x Z/p^n`, with `pi` the reduction mod `p`:
///
/// ```text
/// sigma_{(a,b,c)}(x,y,z) =
///     (x - c, y + pi(a - x), z - [a == x-c][b == y + pi(a - x)])
/// ```
pub fn theorem_main(p: u64, n: u32) -> Result<Solution, FamilyError> {
    require_prime(p)?;
    if n < 1 {
        return Err(FamilyError::InvalidParams(
            "theorem_main needs n >= 1".into(),
        ));
    }
    let modulus = arith::checked_pow(p, n).ok_or(FamilyError::Overflow)?;
    let cardinality = modulus
        .checked_mul(p)
        .and_then(|v| v.checked_mul(modulus))
        .ok_or(FamilyError::Overflow)?;
    let size = check_cardinality(cardinality)?;
    let radices = [modulus, p, modulus];
    let mut rows = Vec::with_capacity(size);
    for idx in 0..size {
        let abc = arith::decode_mixed_radix(idx, &radices);
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        let mut row = Vec::with_capacity(size);
        for jdx in 0..size {
            let xyz = arith::decode_mixed_radix(jdx, &radices);
            let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
            let x2 = (x + modulus - c) % modulus;
            let y2 = (y + (a + modulus - x) % modulus) % p;
            let delta = u64::from(a == x2 && b == y2);
            let z2 = (z + modulus - delta) % modulus;
            row.push(arith::encode_mixed_radix(&[x2, y2, z2], &radices) as u32);
        }
        rows.push(row);
    }
    let labels = (0..size)
        .map(|idx| arith::decode_mixed_radix(idx, &radices))
        .collect();
    let mut params = FamilyParams::new("theorem_main");
    params.p = Some(p);
    params.n = Some(n as u64);
    Ok(Solution::from_tables(rows)?
        .with_labels(labels)?
        .with_family(params))
}

/// The closed-form inverses of [`theorem_main`]:
/// `sigma^{-1}_{(a,b,c)}(x,y,z) = (x + c, y + pi(x + c - a), z + [a == x][b == y])`.
pub fn theorem_main_closed_inverses(p: u64, n: u32) -> Result<Vec<Perm>, FamilyError> {
    require_prime(p)?;
    let modulus = arith::checked_pow(p, n).ok_or(FamilyError::Overflow)?;
    let size = check_cardinality(modulus * p * modulus)?;
    let radices = [modulus, p, modulus];
    let mut out = Vec::with_capacity(size);
    for idx in 0..size {
        let abc = arith::decode_mixed_radix(idx, &radices);
        let (a, b, c) = (abc[0], abc[1], abc[2]);
        let images: Vec<u32> = (0..size)
            .map(|jdx| {
                let xyz = arith::decode_mixed_radix(jdx, &radices);
                let (x, y, z) = (xyz[0], xyz[1], xyz[2]);
                let x2 = (x + c) % modulus;
                let y2 = (y + (x2 + modulus - a) % modulus) % p;
                let delta = u64::from(a == x && b == y);
                let coords = [x2, y2, (z + delta) % modulus];
                arith::encode_mixed_radix(&coords, &radices) as u32
            })
            .collect();
        out.push(Perm::from_images(images).expect("closed form is a bijection"));
    }
    Ok(out)
}

/// Smallest `u` in `Z/p^n` of multiplicative order exactly `q`.
/// Multiplication by `u` is then an automorphism of `Z/p^n` of order `q`.
pub fn find_order_q_multiplier(p: u64, n: u32, q: u64) -> Result<u64, FamilyError> {
    require_prime(p)?;
    require_prime(q)?;
    if p.is_multiple_of(2) || q.is_multiple_of(2) || !(p - 1).is_multiple_of(q) {
        return Err(FamilyError::InvalidParams(format!(
            "need odd primes with q | p-1, got p={p}, q={q}"
        )));
    }
    let modulus = arith::checked_pow(p, n).ok_or(FamilyError::Overflow)?;
    // order divides the prime q, so u^q = 1 with u != 1 pins it exactly
    for u in 2..modulus {
        if u % p != 0 && arith::mod_pow(u, q, modulus) == 1 {
            return Ok(u);
        }
    }
    Err(FamilyError::NoOrderQElement { p, n, q })
}

/// One representative per nonzero orbit of multiplication by `t_mult`,
/// chosen so the representative set is closed under negation: scan
/// `1..p^n` ascending, take the smallest unclaimed element as its
/// orbit's representative and immediately assign `-rep` to the negated
/// orbit. The negated orbit is always distinct when the multiplier has
/// odd prime order and `p` is odd.
pub fn orbit_reps_with_negation_pairing(
    p: u64,
    n: u32,
    t_mult: u64,
) -> Result<Vec<u64>, FamilyError> {
    require_prime(p)?;
    if p.is_multiple_of(2) {
        return Err(FamilyError::InvalidParams(
            "negation pairing needs an odd prime p".into(),
        ));
    }
    let modulus = arith::checked_pow(p, n).ok_or(FamilyError::Overflow)?;
    check_cardinality(modulus)?;
    let order = arith::multiplicative_order(t_mult % modulus, modulus).ok_or_else(|| {
        FamilyError::InvalidParams(format!("{t_mult} is not a unit mod {modulus}"))
    })?;
    if order % 2 == 0 || !arith::is_prime(order) {
        return Err(FamilyError::InvalidParams(format!(
            "multiplier {t_mult} has order {order}, which is not an odd prime"
        )));
    }
    let orbit_of = |a: u64| -> Vec<u64> {
        let mut orbit = vec![a];
        let mut cur = t_mult * a % modulus;
        while cur != a {
            orbit.push(cur);
            cur = t_mult * cur % modulus;
        }
        orbit
    };
    let mut claimed = vec![false; modulus as usize];
    claimed[0] = true;
    let mut reps = Vec::new();
    for a in 1..modulus {
        if claimed[a as usize] {
            continue;
        }
        let orbit = orbit_of(a);
        let neg = modulus - a;
        assert!(
            !orbit.contains(&neg),
            "negation landed inside its own orbit; the multiplier order is not an odd prime"
        );
        for &v in &orbit {
            claimed[v as usize] = true;
        }
        reps.push(a);
        if !claimed[neg as usize] {
            for &v in &orbit_of(neg) {
                claimed[v as usize] = true;
            }
            reps.push(neg);
        }
    }
    Ok(reps)
}

/// The `j`-sequence over `Z/p^n` defined by `j_0 = 1` and
/// `j_{t^k(a_i)} = t^k(-1) + 1` over the chosen representatives. It
/// satisfies `j_{-a} = j_a` and `j_{t^s(a)} - j_0 = t^s(j_a - j_0)`.
pub fn build_j_family_42(
    p: u64,
    n: u32,
    t_mult: u64,
    reps: &[u64],
) -> Result<JFamily, FamilyError> {
    let modulus = arith::checked_pow(p, n).ok_or(FamilyError::Overflow)?;
    let mut values = vec![u64::MAX; modulus as usize];
    values[0] = 1;
    for &rep in reps {
        let mut point = rep;
        let mut t_pow = 1u64;
        loop {
            assert_eq!(
                values[point as usize],
                u64::MAX,
                "orbits of distinct representatives overlap"
            );
            values[point as usize] = (modulus - t_pow + 1) % modulus;
            point = t_mult * point % modulus;
            t_pow = t_mult * t_pow % modulus;
            if point == rep {
                break;
            }
        }
    }
    assert!(
        values.iter().all(|&v| v != u64::MAX),
        "representatives do not cover every orbit"
    );
    Ok(JFamily {
        modulus,
        values,
        construction: JConstruction::Theorem42 {
            t_mult,
            reps: reps.to_vec(),
        },
    })
}

/// Singular simple solution of cardinality `p^2n` on `(Z/p^n)^2`, for an
/// odd non-Fermat prime `p` and an odd prime `q` dividing `p - 1`.
pub fn theorem42(p: u64, q: u64, n: u32) -> Result<Solution, FamilyError> {
    require_prime(p)?;
    if p.is_multiple_of(2) {
        return Err(FamilyError::InvalidParams(
            "theorem42 needs an odd prime p".into(),
        ));
    }
    if FERMAT_PRIMES.contains(&p) {
        return Err(FamilyError::FermatPrime(p));
    }
    require_prime(q)?;
    if q.is_multiple_of(2) || !(p - 1).is_multiple_of(q) {
        return Err(FamilyError::InvalidParams(format!(
            "theorem42 needs an odd prime q | p-1, got q={q}"
        )));
    }
    if n < 1 {
        return Err(FamilyError::InvalidParams("theorem42 needs n >= 1".into()));
    }
    let t_mult = find_order_q_multiplier(p, n, q)?;
    let reps = orbit_reps_with_negation_pairing(p, n, t_mult)?;
    let j = build_j_family_42(p, n, t_mult, &reps)?;
    let mut params = FamilyParams::new("theorem42");
    params.p = Some(p);
    params.q = Some(q);
    params.n = Some(n as u64);
    params.t_mult = Some(t_mult);
    params.orbit_reps = Some(reps);
    Ok(j_family_solution(j.modulus, &j.values, t_mult)?.with_family(params))
}

/// The subgroup `V_a` of `Z/m` attached to a `j`-sequence and a nonzero
/// `a`: start from the differences `j_c - j_{c + t^z(a)}` and keep
/// adjoining `j_c - j_{c+v}` for `v` already in the subgroup, to a
/// fixpoint. Returned as the gcd generator `g`, so `g == 1` means the
/// full group.
pub fn compute_va(j: &JFamily, t_mult: u64, a: u64) -> Result<u64, FamilyError> {
    let m = j.modulus;
    if a == 0 || a >= m {
        return Err(FamilyError::InvalidParams(format!(
            "V_a needs 0 < a < {m}, got {a}"
        )));
    }
    let diff = |c: u64, step: u64| -> u64 {
        let lhs = j.values[c as usize];
        let rhs = j.values[((c + step) % m) as usize];
        (lhs + m - rhs) % m
    };
    let t_order = arith::multiplicative_order(t_mult % m, m)
        .ok_or_else(|| FamilyError::InvalidParams(format!("{t_mult} is not a unit mod {m}")))?;
    let mut g = m;
    let mut shifted = a;
    for _ in 0..t_order {
        for c in 0..m {
            g = num_integer::gcd(g, diff(c, shifted));
        }
        shifted = t_mult * shifted % m;
    }
    // the subgroup chain in Z/m is shorter than the number of divisors
    // of m, so this loop always reaches its fixpoint early
    for _ in 0..=j.values.len() {
        let mut next = g;
        if g > 0 {
            for c in 0..m {
                let mut v = 0;
                while v < m {
                    next = num_integer::gcd(next, diff(c, v));
                    v += g;
                }
            }
        }
        if next == g {
            break;
        }
        g = next;
    }
    Ok(g)
}

/// Primes dividing the permutation-group order but not the cardinality.
/// A nonempty result exhibits the solution (and its permutation-group
/// brace) as singular. Requires an indecomposable solution.
pub fn is_singular_witness(s: &Solution, group_order: &BigUint) -> Result<Vec<u64>, FamilyError> {
    if !s.is_indecomposable() {
        return Err(FamilyError::Solution(SolutionError::NotIndecomposable));
    }
    let order_primes = arith::distinct_prime_factors_big(group_order)
        .ok_or(FamilyError::Solution(SolutionError::FactorBound))?;
    let size_primes = arith::distinct_prime_factors(s.n() as u64);
    Ok(order_primes
        .into_iter()
        .filter(|p| !size_primes.contains(p))
        .collect())
}

/// Looks a point up by its coordinate label.
pub fn point_of_label(s: &Solution, label: &[u64]) -> Option<usize> {
    s.labels()?.iter().position(|l| l == label)
}
