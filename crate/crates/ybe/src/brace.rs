//! Finite left braces as dense addition and multiplication tables.
//!
//! A left brace is a set with an abelian group `(B, +)`, a group
//! `(B, o)` sharing the neutral element, and the compatibility law
//! `a o (b + c) + a = a o b + a o c`. The lambda map `lambda_a(b) =
//! -a + a o b` is then a homomorphism from `(B, o)` into the additive
//! automorphisms, and its kernel is the socle `{a | a o b = a + b}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::Perm;

/// Dense tables stop at this order.
pub const MAX_BRACE_ORDER: usize = 4096;

/// Exhaustive ideal search stops at this order.
pub const SIMPLICITY_BOUND: usize = 256;

pub const BRACE_SCHEMA: &str = "brace/1";

#[derive(Debug, Error)]
pub enum BraceError {
    #[error("brace tables must be square and non-empty")]
    BadShape,
    #[error("order {0} exceeds the dense-table bound {MAX_BRACE_ORDER}")]
    TooLarge(usize),
    #[error("table entry {value} out of range for order {n}")]
    EntryOutOfRange { value: u32, n: usize },
    #[error("no additive neutral element")]
    NoNeutral,
    #[error("lambda map of {a} is not an automorphism of the additive group; tables are corrupt")]
    LambdaNotAutomorphism { a: usize },
    #[error("the given subset is not an ideal")]
    NotAnIdeal,
    #[error("quotient tables failed the brace axioms; input tables are corrupt")]
    QuotientInvalid,
    #[error("element {0} has no inverse in the requested table")]
    NoInverse(usize),
    #[error("simplicity is undefined for the one-element brace")]
    TooSmallForSimplicity,
    #[error("unsupported schema {0:?} (expected {BRACE_SCHEMA:?})")]
    BadSchema(String),
    #[error("malformed brace JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Outcome of the exhaustive simplicity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraceSimplicity {
    Simple,
    /// A proper non-trivial ideal, sorted ascending.
    NotSimple(Vec<usize>),
    /// The order exceeds [`SIMPLICITY_BOUND`]; nothing was decided.
    NotComputed,
}

#[derive(Serialize, Deserialize)]
struct BraceJson {
    n: usize,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    schema: String,
}

/// A finite left brace as explicit operation tables.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteBrace {
    n: usize,
    add: Vec<Vec<u32>>,
    mul: Vec<Vec<u32>>,
    zero: usize,
}

impl FiniteBrace {
    /// Shape-checks the tables and locates the additive neutral
    /// element. Whether the tables satisfy the brace axioms is a
    /// separate question, answered by [`FiniteBrace::verify_brace`].
    pub fn from_tables(add: Vec<Vec<u32>>, mul: Vec<Vec<u32>>) -> Result<FiniteBrace, BraceError> {
        let n = add.len();
        if n == 0 || mul.len() != n {
            return Err(BraceError::BadShape);
        }
        if n > MAX_BRACE_ORDER {
            return Err(BraceError::TooLarge(n));
        }
        for table in [&add, &mul] {
            for row in table.iter() {
                if row.len() != n {
                    return Err(BraceError::BadShape);
                }
                for &v in row {
                    if v as usize >= n {
                        return Err(BraceError::EntryOutOfRange { value: v, n });
                    }
                }
            }
        }
        let zero = (0..n)
            .find(|&e| (0..n).all(|b| add[e][b] as usize == b))
            .ok_or(BraceError::NoNeutral)?;
        Ok(FiniteBrace { n, add, mul, zero })
    }

    /// The trivial brace on `Z/m`: both operations are addition mod `m`.
    pub fn trivial_cyclic(m: usize) -> FiniteBrace {
        let table: Vec<Vec<u32>> = (0..m)
            .map(|a| (0..m).map(|b| ((a + b) % m) as u32).collect())
            .collect();
        FiniteBrace {
            n: m,
            add: table.clone(),
            mul: table,
            zero: 0,
        }
    }

    /// Builds tables from two closures over `0..n`.
    pub fn from_ops(
        n: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteBrace, BraceError> {
        let build = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<u32>> {
            (0..n)
                .map(|a| (0..n).map(|b| op(a, b) as u32).collect())
                .collect()
        };
        FiniteBrace::from_tables(build(&add), build(&mul))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b] as usize
    }

    /// Additive inverse of `a`.
    pub fn neg(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.add(a, b) == self.zero)
            .expect("additive inverse exists")
    }

    /// Multiplicative inverse of `a`.
    pub fn inv(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.mul(a, b) == self.zero)
            .expect("multiplicative inverse exists")
    }

    fn is_group(&self, table: &[Vec<u32>], commutative: bool) -> bool {
        let e = self.zero;
        let op = |a: usize, b: usize| table[a][b] as usize;
        if (0..self.n).any(|b| op(e, b) != b || op(b, e) != b) {
            return false;
        }
        if (0..self.n).any(|a| (0..self.n).all(|b| op(a, b) != e)) {
            return false;
        }
        if commutative && (0..self.n).any(|a| (0..self.n).any(|b| op(a, b) != op(b, a))) {
            return false;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = op(a, b);
                for c in 0..self.n {
                    if op(ab, c) != op(a, op(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Full axiom check: `(B, +)` abelian, `(B, o)` a group, shared
    /// neutral element, and `a o (b + c) + a = a o b + a o c` on every
    /// triple.
    pub fn verify_brace(&self) -> bool {
        if !self.is_group(&self.add, true) || !self.is_group(&self.mul, false) {
            return false;
        }
        for a in 0..self.n {
            for b in 0..self.n {
                let ab = self.mul(a, b);
                for c in 0..self.n {
                    if self.add(self.mul(a, self.add(b, c)), a) != self.add(ab, self.mul(a, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `lambda_a: b -> -a + a o b`, verified to be an automorphism of
    /// the additive group.
    pub fn lambda(&self, a: usize) -> Result<Perm, BraceError> {
        let neg_a = self.neg(a);
        let images: Vec<u32> = (0..self.n)
            .map(|b| self.add(neg_a, self.mul(a, b)) as u32)
            .collect();
        let perm =
            Perm::from_images(images).map_err(|_| BraceError::LambdaNotAutomorphism { a })?;
        for b in 0..self.n {
            for c in 0..self.n {
                if perm.apply(self.add(b, c)) != self.add(perm.apply(b), perm.apply(c)) {
                    return Err(BraceError::LambdaNotAutomorphism { a });
                }
            }
        }
        Ok(perm)
    }

    /// `soc(B) = {a | a o b = a + b for all b}`, i.e. the kernel of the
    /// lambda map.
    pub fn socle(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.add(a, b)))
            .collect()
    }

    fn is_additive_subgroup(&self, in_set: &[bool]) -> bool {
        if !in_set[self.zero] {
            return false;
        }
        for a in 0..self.n {
            if !in_set[a] {
                continue;
            }
            if !in_set[self.neg(a)] {
                return false;
            }
            for b in 0..self.n {
                if in_set[b] && !in_set[self.add(a, b)] {
                    return false;
                }
            }
        }
        true
    }

    fn membership(&self, subset: &[usize]) -> Option<Vec<bool>> {
        let mut in_set = vec![false; self.n];
        for &s in subset {
            if s >= self.n || in_set[s] {
                return None;
            }
            in_set[s] = true;
        }
        Some(in_set)
    }

    /// A left ideal: an additive subgroup stable under every `lambda_a`.
    pub fn is_left_ideal(&self, subset: &[usize]) -> bool {
        let Some(in_set) = self.membership(subset) else {
            return false;
        };
        if !self.is_additive_subgroup(&in_set) {
            return false;
        }
        self.lambda_stable(&in_set)
    }

    fn lambda_stable(&self, in_set: &[bool]) -> bool {
        for a in 0..self.n {
            let neg_a = self.neg(a);
            for b in 0..self.n {
                if in_set[b] && !in_set[self.add(neg_a, self.mul(a, b))] {
                    return false;
                }
            }
        }
        true
    }

    /// An ideal: a lambda-stable normal subgroup of `(B, o)`. Such a
    /// subset is automatically an additive subgroup (via `a o b^{-1} =
    /// a - lambda_{a o b^{-1}}(b)` and its companion identity); that
    /// consequence is re-checked here rather than assumed.
    pub fn is_ideal(&self, subset: &[usize]) -> bool {
        let Some(in_set) = self.membership(subset) else {
            return false;
        };
        if !in_set[self.zero] {
            return false;
        }
        for a in 0..self.n {
            if !in_set[a] {
                continue;
            }
            if !in_set[self.inv(a)] {
                return false;
            }
            for b in 0..self.n {
                if in_set[b] && !in_set[self.mul(a, b)] {
                    return false;
                }
            }
        }
        // normality in the multiplicative group
        for g in 0..self.n {
            let g_inv = self.inv(g);
            for &s in subset {
                if !in_set[self.mul(self.mul(g, s), g_inv)] {
                    return false;
                }
            }
        }
        self.lambda_stable(&in_set) && self.is_additive_subgroup(&in_set)
    }

    /// The quotient brace `B / I` on the cosets of an ideal. The output
    /// is re-verified against the brace axioms.
    pub fn quotient_brace(&self, ideal: &[usize]) -> Result<FiniteBrace, BraceError> {
        if !self.is_ideal(ideal) {
            return Err(BraceError::NotAnIdeal);
        }
        let mut coset_of = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &i in ideal {
                coset_of[self.add(x, i)] = id;
            }
        }
        let k = reps.len();
        let add = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| coset_of[self.add(reps[a], reps[b])] as u32)
                    .collect()
            })
            .collect();
        let mul = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| coset_of[self.mul(reps[a], reps[b])] as u32)
                    .collect()
            })
            .collect();
        let quotient = FiniteBrace::from_tables(add, mul)?;
        if !quotient.verify_brace() {
            return Err(BraceError::QuotientInvalid);
        }
        Ok(quotient)
    }

    /// Smallest ideal containing `seed`: closure under multiplication,
    /// inverses, conjugation and the lambda maps. Stops early once more
    /// than half the brace is swallowed, since a proper subgroup has at
    /// most half the order.
    fn principal_ideal(&self, seed: usize) -> Vec<usize> {
        let mut in_set = vec![false; self.n];
        in_set[self.zero] = true;
        let mut members = vec![self.zero];
        let mut queue = vec![seed];
        if seed != self.zero {
            in_set[seed] = true;
            members.push(seed);
        }
        while let Some(x) = queue.pop() {
            if members.len() > self.n / 2 {
                return (0..self.n).collect();
            }
            let adjoin = |v: usize,
                          in_set: &mut Vec<bool>,
                          members: &mut Vec<usize>,
                          queue: &mut Vec<usize>| {
                if !in_set[v] {
                    in_set[v] = true;
                    members.push(v);
                    queue.push(v);
                }
            };
            adjoin(self.inv(x), &mut in_set, &mut members, &mut queue);
            let snapshot = members.clone();
            for &y in &snapshot {
                adjoin(self.mul(x, y), &mut in_set, &mut members, &mut queue);
                adjoin(self.mul(y, x), &mut in_set, &mut members, &mut queue);
            }
            for g in 0..self.n {
                adjoin(
                    self.mul(self.mul(g, x), self.inv(g)),
                    &mut in_set,
                    &mut members,
                    &mut queue,
                );
                adjoin(
                    self.add(self.neg(g), self.mul(g, x)),
                    &mut in_set,
                    &mut members,
                    &mut queue,
                );
            }
        }
        members.sort_unstable();
        members
    }

    /// Exhaustive simplicity test: the brace is simple iff the ideal
    /// generated by each nonzero element is everything. Orders above
    /// [`SIMPLICITY_BOUND`] report `NotComputed` instead of guessing.
    pub fn is_simple_brace(&self) -> Result<BraceSimplicity, BraceError> {
        if self.n <= 1 {
            return Err(BraceError::TooSmallForSimplicity);
        }
        if self.n > SIMPLICITY_BOUND {
            return Ok(BraceSimplicity::NotComputed);
        }
        for a in 0..self.n {
            if a == self.zero {
                continue;
            }
            let ideal = self.principal_ideal(a);
            if ideal.len() < self.n {
                debug_assert!(self.is_ideal(&ideal));
                return Ok(BraceSimplicity::NotSimple(ideal));
            }
        }
        Ok(BraceSimplicity::Simple)
    }

    pub fn to_json_string(&self) -> String {
        let data = BraceJson {
            n: self.n,
            add: self.add.clone(),
            mul: self.mul.clone(),
            schema: BRACE_SCHEMA.to_string(),
        };
        serde_json::to_string(&data).expect("brace serialisation cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<FiniteBrace, BraceError> {
        let data: BraceJson = serde_json::from_str(text)?;
        if data.schema != BRACE_SCHEMA {
            return Err(BraceError::BadSchema(data.schema));
        }
        FiniteBrace::from_tables(data.add, data.mul)
    }
}

impl std::fmt::Debug for FiniteBrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteBrace(order={})", self.n)
    }
}
