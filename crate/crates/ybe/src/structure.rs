//! The left-brace structure on the permutation group of a solution.
//!
//! The structure group of a solution `(X, r)` is, additively, the free
//! abelian group `Z^X`; multiplicatively it is generated by the basis
//! vectors with `(v, pi) o (w, tau) = (v + pi.w, pi tau)`, where `pi`
//! is the permutation attached to an element and `pi.w` permutes
//! coordinates. The attached permutation of the generator `x` is
//! `sigma_x`, and the kernel of the attachment map is the socle: a
//! finite-index sublattice `L` of `Z^X`. The permutation group
//! `G(X, r)` therefore inherits a brace structure on `Z^X / L`:
//! addition is vector addition mod `L`, multiplication is the law
//! above read on coset representatives.
//!
//! The build walks the multiplicative closure breadth-first from
//! `(0, id)` under the generators `(e_x, sigma_x)` and their inverses
//! `(-e_{sigma_x^{-1}(x)}, sigma_x^{-1})`. Whenever two reachable
//! states carry the same permutation, the difference of their vectors
//! lies in the socle lattice and is inserted into a Hermite-form basis;
//! any growth of the lattice restarts the walk, because previously
//! distinct states may now coincide. The walk ends when it closes with
//! no new lattice vector, at which point states biject with cosets and
//! with permutations, and the lattice index equals the group order.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use thiserror::Error;

use crate::brace::{BraceError, FiniteBrace};
use crate::group::PermGroup;
use crate::hnf::HnfLattice;
use crate::perm::Perm;
use crate::solution::Solution;

/// Above this group order the dense brace tables are not built.
pub const GROUP_ORDER_GUARD: u64 = 10_000;

pub const BRACE_MAP_SCHEMA: &str = "bracemap/1";

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("permutation group order {order} exceeds the table guard {GROUP_ORDER_GUARD}; brace not computed")]
    NotComputed { order: BigUint },
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// The socle of the structure group, as a full-rank integer lattice in
/// Hermite normal form. Its index in `Z^X` is the permutation group
/// order.
#[derive(Clone, Debug)]
pub struct SocleLattice {
    lattice: HnfLattice,
}

impl SocleLattice {
    pub fn basis(&self) -> &[Vec<BigInt>] {
        self.lattice.rows()
    }

    pub fn index(&self) -> BigUint {
        self.lattice.index().expect("socle lattice has full rank")
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.lattice.reduce(v)
    }
}

/// The permutation group of a solution with its brace structure, the
/// coset-to-permutation map, and the socle lattice behind it.
pub struct PermutationBrace {
    pub brace: FiniteBrace,
    /// Brace element -> permutation (the image under the attachment map).
    pub perms: Vec<Perm>,
    /// Brace element -> canonical coset representative in `Z^X`.
    pub reps: Vec<Vec<BigInt>>,
    pub lattice: SocleLattice,
    index_of_rep: HashMap<Vec<BigInt>, usize>,
}

impl PermutationBrace {
    /// Brace element of a canonical representative vector.
    pub fn element_of_vector(&self, v: &[BigInt]) -> Option<usize> {
        self.index_of_rep.get(&self.lattice.reduce(v)).copied()
    }

    /// Brace element of the coset of the generator `x`, i.e. of `sigma_x`.
    pub fn generator_element(&self, x: usize) -> usize {
        let mut e = vec![BigInt::from(0); self.lattice.lattice.dim()];
        e[x] = BigInt::from(1);
        self.element_of_vector(&e)
            .expect("generator cosets are states")
    }

    /// Sidecar JSON mapping brace elements to coset representatives and
    /// permutations, as two parallel arrays.
    pub fn sidecar_json(&self) -> String {
        #[derive(Serialize)]
        struct BraceMapJson<'a> {
            schema: &'a str,
            coset_rep: Vec<Vec<i64>>,
            perm: Vec<&'a [u32]>,
        }
        let coset_rep = self
            .reps
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| i64::try_from(x).expect("reduced entries are small"))
                    .collect()
            })
            .collect();
        let data = BraceMapJson {
            schema: BRACE_MAP_SCHEMA,
            coset_rep,
            perm: self.perms.iter().map(|p| p.images()).collect(),
        };
        serde_json::to_string(&data).expect("sidecar serialisation cannot fail")
    }
}

fn permute_vector(pi: &Perm, w: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); w.len()];
    for (y, value) in w.iter().enumerate() {
        out[pi.apply(y)] = value.clone();
    }
    out
}

fn vec_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vec_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Computes the brace carried by the permutation group of `s`.
///
/// The group order is computed first (independently, from a stabiliser
/// chain) and orders beyond [`GROUP_ORDER_GUARD`] are refused rather
/// than silently truncated.
pub fn build_permutation_brace(s: &Solution) -> Result<PermutationBrace, StructureError> {
    let n = s.n();
    let group = PermGroup::from_generators(n, s.sigma().to_vec()).expect("rows share the degree");
    let order = group.order().clone();
    if order > BigUint::from(GROUP_ORDER_GUARD) {
        return Err(StructureError::NotComputed { order });
    }
    let expected: usize = order.clone().try_into().expect("order below the guard");

    // generator steps: multiply on the right by (e_x, sigma_x), then by
    // the inverses (-e_{sigma_x^{-1}(x)}, sigma_x^{-1}), in ascending x
    let steps: Vec<(usize, i8, Perm)> = (0..n)
        .map(|x| (x, 1i8, s.sigma_row(x).clone()))
        .chain((0..n).map(|x| {
            let inverse = s.sigma_row(x).inverse();
            (inverse.apply(x), -1i8, inverse)
        }))
        .collect();

    let mut lattice = HnfLattice::new(n);
    let zero = vec![BigInt::from(0); n];
    let (reps, perms) = 'restart: loop {
        let mut seen: HashMap<Perm, usize> = HashMap::new();
        let mut reps: Vec<Vec<BigInt>> = Vec::new();
        let mut perms: Vec<Perm> = Vec::new();
        let identity = Perm::identity(n);
        seen.insert(identity.clone(), 0);
        reps.push(lattice.reduce(&zero));
        perms.push(identity);
        let mut cursor = 0usize;
        while cursor < reps.len() {
            let v = reps[cursor].clone();
            let pi = perms[cursor].clone();
            cursor += 1;
            for (point, sign, tau) in &steps {
                let mut w = v.clone();
                w[pi.apply(*point)] += *sign;
                let w = lattice.reduce(&w);
                let next_perm = pi.compose(tau).expect("equal degrees");
                match seen.get(&next_perm) {
                    Some(&known) => {
                        if reps[known] != w {
                            let grew = lattice.insert(vec_sub(&w, &reps[known]));
                            assert!(grew, "distinct representatives of one coset");
                            continue 'restart;
                        }
                    }
                    None => {
                        seen.insert(next_perm.clone(), reps.len());
                        reps.push(w);
                        perms.push(next_perm);
                    }
                }
            }
        }
        break (reps, perms);
    };

    assert_eq!(
        reps.len(),
        expected,
        "state count must equal the group order"
    );
    assert!(lattice.is_full_rank(), "socle lattice must have full rank");
    assert_eq!(
        lattice.index().expect("full rank"),
        order,
        "lattice index must equal the group order"
    );

    let index_of_rep: HashMap<Vec<BigInt>, usize> = reps
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, v)| (v, i))
        .collect();
    let lookup = |v: &[BigInt]| -> u32 {
        *index_of_rep
            .get(&lattice.reduce(v))
            .expect("every coset is a state") as u32
    };

    let k = reps.len();
    let mut add = vec![vec![0u32; k]; k];
    let mut mul = vec![vec![0u32; k]; k];
    for i in 0..k {
        for jj in 0..k {
            add[i][jj] = lookup(&vec_add(&reps[i], &reps[jj]));
            let product = vec_add(&reps[i], &permute_vector(&perms[i], &reps[jj]));
            let target = lookup(&product);
            mul[i][jj] = target;
            debug_assert_eq!(
                perms[target as usize],
                perms[i].compose(&perms[jj]).expect("equal degrees"),
                "multiplication table must match permutation composition"
            );
        }
    }
    let brace = FiniteBrace::from_tables(add, mul)?;
    Ok(PermutationBrace {
        brace,
        perms,
        reps,
        lattice: SocleLattice { lattice },
        index_of_rep,
    })
}

/// On generators the brace lambda map must reproduce the solution:
/// applying the lambda of the coset of `sigma_x` to the coset of
/// `sigma_y` must give the coset of `sigma_{sigma_x(y)}`.
pub fn check_lambda_on_generators(s: &Solution, pb: &PermutationBrace) -> bool {
    let gens: Vec<usize> = (0..s.n()).map(|x| pb.generator_element(x)).collect();
    for x in 0..s.n() {
        let Ok(lam) = pb.brace.lambda(gens[x]) else {
            return false;
        };
        for y in 0..s.n() {
            if lam.apply(gens[y]) != gens[s.sigma_row(x).apply(y)] {
                return false;
            }
        }
    }
    true
}

/// The socle-lattice index must equal the permutation group order as
/// computed independently from the stabiliser chain.
pub fn socle_index_check(s: &Solution, pb: &PermutationBrace) -> bool {
    let group =
        PermGroup::from_generators(s.n(), s.sigma().to_vec()).expect("rows share the degree");
    pb.lattice.index() == *group.order()
}
