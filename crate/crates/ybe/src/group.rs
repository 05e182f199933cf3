//! Permutation groups: orbits, stabiliser chains and exact orders.
//!
//! Orders are computed from a base and strong generating set and are
//! unbounded integers. Whenever the resulting order is at most `10^5`
//! the group is additionally enumerated by breadth-first closure and
//! the two counts must agree; construction panics on disagreement, so a
//! [`PermGroup`] never carries an unchecked order at that scale.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::One;

use crate::arith;
use crate::perm::{Perm, PermError};

/// Above this order the breadth-first cross-check is skipped.
pub const BFS_CROSS_CHECK_BOUND: u64 = 100_000;

fn common_degree(gens: &[Perm]) -> Result<Option<usize>, PermError> {
    let mut degree = None;
    for g in gens {
        match degree {
            None => degree = Some(g.degree()),
            Some(d) if d != g.degree() => {
                return Err(PermError::DegreeMismatch {
                    left: d,
                    right: g.degree(),
                })
            }
            _ => {}
        }
    }
    Ok(degree)
}

/// Smallest subset of `{0..degree-1}` containing `point` and closed
/// under every generator and every generator inverse.
pub fn orbit(gens: &[Perm], point: usize) -> Result<BTreeSet<usize>, PermError> {
    let degree = common_degree(gens)?;
    if let Some(d) = degree {
        if point >= d {
            return Err(PermError::PointOutOfRange { point, degree: d });
        }
    }
    let mut seen = BTreeSet::new();
    seen.insert(point);
    let mut queue = VecDeque::from([point]);
    let inverses: Vec<Perm> = gens.iter().map(Perm::inverse).collect();
    while let Some(p) = queue.pop_front() {
        for g in gens.iter().chain(&inverses) {
            let q = g.apply(p);
            if seen.insert(q) {
                queue.push_back(q);
            }
        }
    }
    Ok(seen)
}

/// All orbits on `{0..degree-1}`, each sorted, ordered by smallest element.
pub fn orbits(gens: &[Perm], degree: usize) -> Result<Vec<Vec<usize>>, PermError> {
    let mut assigned = vec![false; degree];
    let mut out = Vec::new();
    for p in 0..degree {
        if assigned[p] {
            continue;
        }
        let orb = orbit(gens, p)?;
        for &q in &orb {
            assigned[q] = true;
        }
        out.push(orb.into_iter().collect());
    }
    Ok(out)
}

/// Exact order of the group generated by `gens`; the empty set
/// generates the trivial group.
pub fn group_order(gens: &[Perm]) -> Result<BigUint, PermError> {
    match common_degree(gens)? {
        None => Ok(BigUint::one()),
        Some(d) => Ok(PermGroup::from_generators(d, gens.to_vec())?
            .order()
            .clone()),
    }
}

/// `true` iff `order = p^k` for some `k >= 0`; `p` must be prime.
pub fn is_p_group(order: &BigUint, p: u64) -> Result<bool, PermError> {
    if !arith::is_prime(p) {
        return Err(PermError::NotPrime(p));
    }
    Ok(arith::is_prime_power_of(order, p))
}

/// Number of distinct elements generated, by breadth-first closure.
/// Returns `None` as soon as the count would exceed `cap`.
pub fn bfs_closure_count(degree: usize, gens: &[Perm], cap: usize) -> Option<usize> {
    let mut seen: HashSet<Perm> = HashSet::new();
    let id = Perm::identity(degree);
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p).expect("equal degrees");
            if !seen.contains(&q) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(q.clone());
                queue.push_back(q);
            }
        }
    }
    Some(seen.len())
}

/// One level of the stabiliser chain: a base point together with the
/// transversal of its orbit under the generators fixing all earlier
/// base points. `transversal[p]` maps the base point to `p`.
struct ChainLevel {
    base_point: usize,
    transversal: BTreeMap<usize, Perm>,
}

/// A finite permutation group with a base and strong generating set.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong_gens: Vec<Perm>,
    levels: Vec<ChainLevel>,
    order: BigUint,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<PermGroup, PermError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            strong_gens: Vec::new(),
            levels: Vec::new(),
            order: BigUint::one(),
        };
        for g in generators {
            if !g.is_identity() && !group.strong_gens.contains(&g) {
                group.ensure_base_point_for(&g);
                group.strong_gens.push(g);
            }
        }
        group.schreier_sims();
        group.order = group
            .levels
            .iter()
            .map(|l| BigUint::from(l.transversal.len()))
            .product();
        group.cross_check_order();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Membership test by sifting through the stabiliser chain.
    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.sift(0, p.clone()).is_identity()
    }

    /// `true` iff the group acts transitively on `{0..degree-1}`.
    pub fn is_transitive(&self) -> Result<bool, PermError> {
        if self.degree == 0 {
            return Ok(true);
        }
        Ok(orbit(&self.generators, 0)?.len() == self.degree)
    }

    fn ensure_base_point_for(&mut self, g: &Perm) {
        if self
            .levels
            .iter()
            .all(|l| g.apply(l.base_point) == l.base_point)
        {
            if let Some(p) = g.first_moved_point() {
                self.levels.push(ChainLevel {
                    base_point: p,
                    transversal: BTreeMap::new(),
                });
            }
        }
    }

    fn level_gens(&self, level: usize) -> Vec<Perm> {
        self.strong_gens
            .iter()
            .filter(|g| {
                self.levels[..level]
                    .iter()
                    .all(|l| g.apply(l.base_point) == l.base_point)
            })
            .cloned()
            .collect()
    }

    /// Reduce `p` against levels `from..`, returning the residue.
    fn sift(&self, from: usize, p: Perm) -> Perm {
        let mut cur = p;
        for level in &self.levels[from..] {
            let image = cur.apply(level.base_point);
            match level.transversal.get(&image) {
                None => return cur,
                Some(u) => cur = u.inverse().compose(&cur).expect("equal degrees"),
            }
        }
        cur
    }

    fn recompute_transversal(&mut self, level: usize) {
        let gens = self.level_gens(level);
        let base = self.levels[level].base_point;
        let mut transversal = BTreeMap::new();
        transversal.insert(base, Perm::identity(self.degree));
        let mut queue = VecDeque::from([base]);
        while let Some(point) = queue.pop_front() {
            let rep = transversal[&point].clone();
            for g in &gens {
                let image = g.apply(point);
                if let std::collections::btree_map::Entry::Vacant(e) = transversal.entry(image) {
                    e.insert(g.compose(&rep).expect("equal degrees"));
                    queue.push_back(image);
                }
            }
        }
        self.levels[level].transversal = transversal;
    }

    /// First Schreier generator at `level` whose sift residue is not the
    /// identity, if any.
    fn find_failing_schreier_generator(&self, level: usize) -> Option<Perm> {
        let gens = self.level_gens(level);
        let transversal = &self.levels[level].transversal;
        for rep in transversal.values() {
            for g in &gens {
                let moved = g.compose(rep).expect("equal degrees");
                let image = moved.apply(self.levels[level].base_point);
                let back = transversal[&image].inverse();
                let schreier = back.compose(&moved).expect("equal degrees");
                if schreier.is_identity() {
                    continue;
                }
                let residue = self.sift(level + 1, schreier);
                if !residue.is_identity() {
                    return Some(residue);
                }
            }
        }
        None
    }

    /// Deterministic Schreier-Sims fixpoint: every level's Schreier
    /// generators must sift to the identity through the deeper levels.
    fn schreier_sims(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut level = self.levels.len() as isize - 1;
        while level >= 0 {
            self.recompute_transversal(level as usize);
            match self.find_failing_schreier_generator(level as usize) {
                None => level -= 1,
                Some(residue) => {
                    let fixed_prefix = self
                        .levels
                        .iter()
                        .take_while(|l| residue.apply(l.base_point) == l.base_point)
                        .count();
                    if fixed_prefix == self.levels.len() {
                        let p = residue
                            .first_moved_point()
                            .expect("residue is not the identity");
                        self.levels.push(ChainLevel {
                            base_point: p,
                            transversal: BTreeMap::new(),
                        });
                    }
                    self.strong_gens.push(residue);
                    // Deeper transversals may grow; re-verify downwards
                    // from the level the new generator lives at.
                    level = fixed_prefix as isize;
                }
            }
        }
    }

    fn cross_check_order(&self) {
        if self.order > BigUint::from(BFS_CROSS_CHECK_BOUND) {
            return;
        }
        let expected: u64 = (&self.order).try_into().expect("order below the bfs bound");
        let counted = bfs_closure_count(self.degree, &self.generators, expected as usize + 1)
            .expect("bfs closure exceeded the chain order");
        assert_eq!(
            BigUint::from(counted),
            self.order,
            "stabiliser-chain order disagrees with breadth-first closure"
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: Vec<u32>) -> Perm {
        Perm::from_images(images).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let transposition = vec![p(vec![1, 0, 2])];
        assert_eq!(orbit(&transposition, 0).unwrap(), BTreeSet::from([0, 1]));
        assert_eq!(orbit(&[], 2).unwrap(), BTreeSet::from([2]));
        let three_cycle = vec![p(vec![1, 2, 0])];
        assert_eq!(orbit(&three_cycle, 1).unwrap(), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn orbits_partition_the_degree() {
        let gens = vec![p(vec![1, 0, 2, 3, 4]), p(vec![0, 1, 3, 4, 2])];
        let parts = orbits(&gens, 5).unwrap();
        let total: usize = parts.iter().map(Vec::len).sum();
        assert_eq!(total, 5);
        assert_eq!(parts, vec![vec![0, 1], vec![2, 3, 4]]);
    }

    #[test]
    fn order_examples() {
        assert_eq!(
            group_order(&[p(vec![1, 2, 0])]).unwrap(),
            BigUint::from(3u32)
        );
        assert_eq!(group_order(&[]).unwrap(), BigUint::one());
        // full symmetric group on 4 points
        let gens = vec![p(vec![1, 0, 2, 3]), p(vec![1, 2, 3, 0])];
        assert_eq!(group_order(&gens).unwrap(), BigUint::from(24u32));
    }

    #[test]
    fn bfs_oracle_agrees_on_a_family_group() {
        // the sigma rows of theorem_main(2,1) generate a group of
        // order 32 = 2^5 on 8 points, counted two independent ways
        let s = crate::families::theorem_main(2, 1).unwrap();
        let counted = bfs_closure_count(8, s.sigma(), 1_000_000).unwrap();
        assert_eq!(counted, 32);
        let order = group_order(s.sigma()).unwrap();
        assert_eq!(order, BigUint::from(32u32));
        assert!(is_p_group(&order, 2).unwrap());
    }

    #[test]
    fn order_of_a_larger_group() {
        // S6 from a transposition and a 6-cycle: 720, checked against BFS
        // closure inside the constructor.
        let gens = vec![p(vec![1, 0, 2, 3, 4, 5]), p(vec![1, 2, 3, 4, 5, 0])];
        let g = PermGroup::from_generators(6, gens).unwrap();
        assert_eq!(g.order(), &BigUint::from(720u32));
    }

    #[test]
    fn membership_and_generators() {
        let gens = vec![p(vec![1, 2, 0, 3]), p(vec![0, 1, 3, 2])];
        let g = PermGroup::from_generators(4, gens.clone()).unwrap();
        for gen in &gens {
            assert!(g.contains(gen));
        }
        assert!(g.contains(&Perm::identity(4)));
        // an odd permutation outside the group generated above?
        // The group here is <(012),(23)> = S4 actually; test a smaller one.
        let c3 = PermGroup::from_generators(4, vec![p(vec![1, 2, 0, 3])]).unwrap();
        assert_eq!(c3.order(), &BigUint::from(3u32));
        assert!(!c3.contains(&p(vec![0, 1, 3, 2])));
    }

    #[test]
    fn element_order_divides_group_order() {
        let alpha = p(vec![1, 2, 3, 0, 5, 4]);
        let g = PermGroup::from_generators(6, vec![alpha.clone()]).unwrap();
        let elt: u64 = (&alpha.element_order()).try_into().unwrap();
        let grp: u64 = g.order().try_into().unwrap();
        assert_eq!(grp % elt, 0);
    }

    #[test]
    fn p_group_detection() {
        assert!(is_p_group(&BigUint::from(8u32), 2).unwrap());
        assert!(!is_p_group(&BigUint::from(24u32), 2).unwrap());
        assert!(is_p_group(&BigUint::one(), 7).unwrap());
        assert_eq!(
            is_p_group(&BigUint::from(8u32), 4).unwrap_err(),
            PermError::NotPrime(4)
        );
    }

    mod random_generators {
        use super::*;
        use proptest::prelude::*;

        fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
            Just((0..n as u32).collect::<Vec<u32>>())
                .prop_shuffle()
                .prop_map(|v| Perm::from_images(v).unwrap())
        }

        proptest! {
            // the constructor re-counts every group of order <= 10^5 by
            // breadth-first closure, so this exercises the chain against
            // the oracle on arbitrary generator sets
            #[test]
            fn chain_order_matches_bfs_on_random_groups(
                gens in proptest::collection::vec(perm_strategy(6), 0..3)
            ) {
                let group = PermGroup::from_generators(6, gens.clone()).unwrap();
                for gen in &gens {
                    prop_assert!(group.contains(gen));
                }
            }
        }
    }
}
