//! Finite involutive set-theoretic solutions and their basic predicates.
//!
//! A solution is a finite set `X = {0..n-1}` with `r(x, y) =
//! (sigma_x(y), gamma_y(x))` where every `sigma_x` is a bijection and
//! `gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x)`. Only the sigma table is
//! stored; the gamma table is derived. For finite `X`, the map `r` is
//! an involutive non-degenerate solution of the Yang-Baxter equation
//! iff `sigma_x sigma_{sigma_x^{-1}(y)} = sigma_y sigma_{sigma_y^{-1}(x)}`
//! holds for all pairs, which is what [`Solution::check_ybe`] tests.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;
use crate::families::FamilyParams;
use crate::perm::{Perm, PermError};

pub const SOLUTION_SCHEMA: &str = "ybe/1";

#[derive(Debug, Error)]
pub enum SolutionError {
    #[error("a solution needs at least one point")]
    Empty,
    #[error("sigma row {row}: {source}")]
    InvalidRow { row: usize, source: PermError },
    #[error("sigma table has {rows} rows for cardinality {n}")]
    RowCountMismatch { rows: usize, n: usize },
    #[error("derived gamma row {y} is not a bijection; the solution is degenerate")]
    Degenerate { y: usize },
    #[error("point {point} out of range for cardinality {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("labels must decode every point: got {got}, expected {expected}")]
    BadLabels { got: usize, expected: usize },
    #[error("quotient row is ill-defined; the partition is not a congruence")]
    NotACongruence,
    #[error("quotient solution failed validity checks; input tables are corrupt")]
    QuotientInvalid,
    #[error("simplicity is undefined for cardinality {0} (needs n > 1)")]
    TooSmallForSimplicity(usize),
    #[error("map is not surjective onto the codomain")]
    NotSurjective,
    #[error("map is not a homomorphism of solutions")]
    NotAHomomorphism,
    #[error("operation requires an indecomposable solution")]
    NotIndecomposable,
    #[error("unsupported schema {0:?} (expected {SOLUTION_SCHEMA:?})")]
    BadSchema(String),
    #[error("malformed solution JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group order has a prime factor beyond the trial-division bound")]
    FactorBound,
}

/// A finite involutive solution, stored as its sigma table.
#[derive(Clone, PartialEq, Eq)]
pub struct Solution {
    n: usize,
    sigma: Vec<Perm>,
    labels: Option<Vec<Vec<u64>>>,
    family: Option<FamilyParams>,
}

#[derive(Serialize, Deserialize)]
struct SolutionJson {
    schema: String,
    n: usize,
    sigma: Vec<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    labels: Option<Vec<Vec<u64>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    family: Option<FamilyParams>,
}

impl Solution {
    /// Builds a solution from raw image tables, validating that every
    /// row is a permutation of `0..n`.
    pub fn from_tables(rows: Vec<Vec<u32>>) -> Result<Solution, SolutionError> {
        if rows.is_empty() {
            return Err(SolutionError::Empty);
        }
        let n = rows.len();
        let mut sigma = Vec::with_capacity(n);
        for (row, images) in rows.into_iter().enumerate() {
            if images.len() != n {
                return Err(SolutionError::RowCountMismatch {
                    rows: images.len(),
                    n,
                });
            }
            sigma.push(
                Perm::from_images(images)
                    .map_err(|source| SolutionError::InvalidRow { row, source })?,
            );
        }
        Ok(Solution {
            n,
            sigma,
            labels: None,
            family: None,
        })
    }

    pub fn from_rows(sigma: Vec<Perm>) -> Result<Solution, SolutionError> {
        Self::from_tables(sigma.into_iter().map(|p| p.images().to_vec()).collect())
    }

    /// The solution with every `sigma_x` the identity, so `r(x, y) = (y, x)`.
    pub fn trivial(n: usize) -> Solution {
        assert!(n >= 1, "a solution needs at least one point");
        Solution {
            n,
            sigma: (0..n).map(|_| Perm::identity(n)).collect(),
            labels: None,
            family: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<Vec<u64>>) -> Result<Solution, SolutionError> {
        if labels.len() != self.n {
            return Err(SolutionError::BadLabels {
                got: labels.len(),
                expected: self.n,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_family(mut self, family: FamilyParams) -> Solution {
        self.family = Some(family);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &[Perm] {
        &self.sigma
    }

    pub fn sigma_row(&self, x: usize) -> &Perm {
        &self.sigma[x]
    }

    pub fn labels(&self) -> Option<&[Vec<u64>]> {
        self.labels.as_deref()
    }

    pub fn family(&self) -> Option<&FamilyParams> {
        self.family.as_ref()
    }

    pub fn sigma_inverses(&self) -> Vec<Perm> {
        self.sigma.iter().map(Perm::inverse).collect()
    }

    /// The derived gamma table: `gamma_y(x) = sigma^{-1}_{sigma_x(y)}(x)`.
    /// A non-bijective row signals non-degeneracy failure.
    pub fn derive_gamma(&self) -> Result<Vec<Perm>, SolutionError> {
        let inv = self.sigma_inverses();
        let mut gamma = Vec::with_capacity(self.n);
        for y in 0..self.n {
            let images: Vec<u32> = (0..self.n)
                .map(|x| inv[self.sigma[x].apply(y)].apply(x) as u32)
                .collect();
            gamma.push(Perm::from_images(images).map_err(|_| SolutionError::Degenerate { y })?);
        }
        Ok(gamma)
    }

    /// Right non-degeneracy: every derived gamma row is a bijection.
    /// (Left non-degeneracy is structural: sigma rows are `Perm`s.)
    pub fn check_nondegenerate(&self) -> bool {
        self.derive_gamma().is_ok()
    }

    /// `r(x, y) = (sigma_x(y), sigma^{-1}_{sigma_x(y)}(x))`.
    pub fn eval_r(&self, x: usize, y: usize) -> Result<(usize, usize), SolutionError> {
        for point in [x, y] {
            if point >= self.n {
                return Err(SolutionError::PointOutOfRange { point, n: self.n });
            }
        }
        let u = self.sigma[x].apply(y);
        let v = self.sigma[u].inverse().apply(x);
        Ok((u, v))
    }

    /// The finite-set criterion for being a solution of the YBE:
    /// `sigma_x sigma_{sigma_x^{-1}(y)} = sigma_y sigma_{sigma_y^{-1}(x)}`
    /// for all pairs.
    pub fn check_ybe(&self) -> bool {
        let inv = self.sigma_inverses();
        for x in 0..self.n {
            for y in x + 1..self.n {
                let xs = &self.sigma[inv[x].apply(y)];
                let ys = &self.sigma[inv[y].apply(x)];
                for i in 0..self.n {
                    if self.sigma[x].apply(xs.apply(i)) != self.sigma[y].apply(ys.apply(i)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `r^2 = id`, checked pointwise on the raw tables.
    pub fn check_involutive(&self) -> bool {
        let inv = self.sigma_inverses();
        let r = |x: usize, y: usize| {
            let u = self.sigma[x].apply(y);
            (u, inv[u].apply(x))
        };
        for x in 0..self.n {
            for y in 0..self.n {
                let (u, v) = r(x, y);
                if r(u, v) != (x, y) {
                    return false;
                }
            }
        }
        true
    }

    /// Transitivity of the group generated by the sigma rows.
    pub fn is_indecomposable(&self) -> bool {
        crate::group::orbit(&self.sigma, 0)
            .expect("rows share the degree")
            .len()
            == self.n
    }

    /// All sigma rows pairwise distinct.
    pub fn is_irretractable(&self) -> bool {
        let mut rows: Vec<&Perm> = self.sigma.iter().collect();
        rows.sort();
        rows.windows(2).all(|w| w[0] != w[1])
    }

    /// The retract: quotient by `x ~ y` iff `sigma_x = sigma_y`, with
    /// the induced solution. Well-definedness of the induced rows is
    /// verified, not assumed.
    pub fn retract(&self) -> Result<(Solution, Partition), SolutionError> {
        let mut class_of: Vec<u32> = Vec::with_capacity(self.n);
        let mut reps: Vec<usize> = Vec::new();
        for (x, row) in self.sigma.iter().enumerate() {
            match reps.iter().position(|&r| &self.sigma[r] == row) {
                Some(c) => class_of.push(c as u32),
                None => {
                    class_of.push(reps.len() as u32);
                    reps.push(x);
                }
            }
        }
        let k = reps.len();
        let partition = Partition::from_block_ids(class_of.clone())?;
        let mut rows = Vec::with_capacity(k);
        for &rep in &reps {
            let images: Vec<u32> = reps
                .iter()
                .map(|&c| class_of[self.sigma[rep].apply(c)])
                .collect();
            rows.push(images);
        }
        // well-definedness: the induced image may not depend on the
        // chosen member of either class
        for x in 0..self.n {
            for y in 0..self.n {
                let got = class_of[self.sigma[x].apply(y)];
                if got != rows[class_of[x] as usize][class_of[y] as usize] {
                    return Err(SolutionError::NotACongruence);
                }
            }
        }
        let quotient = Solution::from_tables(rows).map_err(|_| SolutionError::NotACongruence)?;
        Ok((quotient, partition))
    }

    /// Least `k` with `|Ret^k(X, r)| = 1`, or `None` when the retract
    /// tower stabilises at more than one point. A one-point solution
    /// has level `0`.
    pub fn multipermutation_level(&self) -> Result<Option<u32>, SolutionError> {
        if self.n == 1 {
            return Ok(Some(0));
        }
        let mut current = self.clone();
        let mut level = 0u32;
        loop {
            let (next, _) = current.retract()?;
            level += 1;
            if next.n == 1 {
                return Ok(Some(level));
            }
            if next.n == current.n {
                return Ok(None);
            }
            current = next;
        }
    }

    /// Consequences of simplicity, re-checked as a bug detector: a
    /// simple solution is indecomposable when `|X| > 2` and
    /// irretractable when `|X|` is not prime. Call only on solutions
    /// already verified simple; `false` is never an expected outcome.
    pub fn check_simplicity_corollaries(&self) -> bool {
        let indec_ok = self.n <= 2 || self.is_indecomposable();
        let irret_ok = arith::is_prime(self.n as u64) || self.is_irretractable();
        indec_ok && irret_ok
    }

    pub fn to_json_string(&self) -> String {
        let data = SolutionJson {
            schema: SOLUTION_SCHEMA.to_string(),
            n: self.n,
            sigma: self.sigma.iter().map(|p| p.images().to_vec()).collect(),
            labels: self.labels.clone(),
            family: self.family.clone(),
        };
        serde_json::to_string(&data).expect("solution serialisation cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Solution, SolutionError> {
        let data: SolutionJson = serde_json::from_str(text)?;
        if data.schema != SOLUTION_SCHEMA {
            return Err(SolutionError::BadSchema(data.schema));
        }
        if data.sigma.len() != data.n {
            return Err(SolutionError::RowCountMismatch {
                rows: data.sigma.len(),
                n: data.n,
            });
        }
        let mut solution = Solution::from_tables(data.sigma)?;
        if let Some(labels) = data.labels {
            solution = solution.with_labels(labels)?;
        }
        if let Some(family) = data.family {
            solution = solution.with_family(family);
        }
        Ok(solution)
    }
}

impl std::fmt::Debug for Solution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Solution(n={}", self.n)?;
        if let Some(fam) = &self.family {
            write!(f, ", family={}", fam.describe())?;
        }
        write!(f, ")")
    }
}

/// An equivalence relation on the point set, as a block-index table.
/// Blocks are numbered `0..block_count` in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    block_id: Vec<u32>,
    block_count: usize,
}

impl Partition {
    /// Canonicalises arbitrary block indices into first-occurrence order.
    pub fn from_block_ids(raw: Vec<u32>) -> Result<Partition, SolutionError> {
        if raw.is_empty() {
            return Err(SolutionError::Empty);
        }
        let mut rename: Vec<Option<u32>> = vec![None; raw.len()];
        let mut next = 0u32;
        let mut block_id = Vec::with_capacity(raw.len());
        for &b in &raw {
            let slot = rename
                .get_mut(b as usize)
                .ok_or(SolutionError::PointOutOfRange {
                    point: b as usize,
                    n: raw.len(),
                })?;
            let id = *slot.get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            block_id.push(id);
        }
        Ok(Partition {
            block_id,
            block_count: next as usize,
        })
    }

    pub fn discrete(n: usize) -> Partition {
        Partition {
            block_id: (0..n as u32).collect(),
            block_count: n,
        }
    }

    pub fn full(n: usize) -> Partition {
        Partition {
            block_id: vec![0; n],
            block_count: 1,
        }
    }

    pub fn n(&self) -> usize {
        self.block_id.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, point: usize) -> usize {
        self.block_id[point] as usize
    }

    pub fn is_discrete(&self) -> bool {
        self.block_count == self.block_id.len()
    }

    pub fn is_full(&self) -> bool {
        self.block_count == 1
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count];
        for (point, &b) in self.block_id.iter().enumerate() {
            out[b as usize].push(point);
        }
        out
    }

    /// `self` refines `other`: every block of `self` lies inside a
    /// block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.n(), other.n());
        let mut image: Vec<Option<usize>> = vec![None; self.block_count];
        for point in 0..self.n() {
            let mine = self.block_of(point);
            let theirs = other.block_of(point);
            match image[mine] {
                None => image[mine] = Some(theirs),
                Some(seen) if seen != theirs => return false,
                _ => {}
            }
        }
        true
    }
}

/// `f` is a homomorphism of solutions iff `f(sigma_x(y)) =
/// sigma'_{f(x)}(f(y))` for all pairs (the matching gamma condition is
/// implied by involutivity).
pub fn is_homomorphism(f: &[usize], s: &Solution, t: &Solution) -> bool {
    assert_eq!(f.len(), s.n(), "f must be total on the domain");
    assert!(f.iter().all(|&v| v < t.n()), "f must map into the codomain");
    for x in 0..s.n() {
        for y in 0..s.n() {
            if f[s.sigma_row(x).apply(y)] != t.sigma_row(f[x]).apply(f[y]) {
                return false;
            }
        }
    }
    true
}

/// Fibre sizes of a surjective homomorphism, indexed by codomain point.
/// For an indecomposable domain all fibres must be equal; that equality
/// is asserted because its failure would mean corrupt tables.
pub fn fiber_profile(f: &[usize], s: &Solution, t: &Solution) -> Result<Vec<usize>, SolutionError> {
    if !is_homomorphism(f, s, t) {
        return Err(SolutionError::NotAHomomorphism);
    }
    let mut sizes = vec![0usize; t.n()];
    for &y in f {
        sizes[y] += 1;
    }
    if sizes.contains(&0) {
        return Err(SolutionError::NotSurjective);
    }
    if s.is_indecomposable() {
        assert!(
            sizes.windows(2).all(|w| w[0] == w[1]),
            "fibres of a homomorphism from an indecomposable solution must be equal"
        );
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn gamma_of_trivial_is_identity() {
        let s = Solution::trivial(4);
        let gamma = s.derive_gamma().unwrap();
        assert!(gamma.iter().all(Perm::is_identity));
    }

    #[test]
    fn gamma_of_cyclic_is_plus_one() {
        let s = families::cyclic_solution(3).unwrap();
        let gamma = s.derive_gamma().unwrap();
        for row in &gamma {
            for x in 0..3 {
                assert_eq!(row.apply(x), (x + 1) % 3);
            }
        }
    }

    #[test]
    fn ybe_holds_for_cyclic_and_fails_for_a_broken_table() {
        assert!(families::cyclic_solution(5).unwrap().check_ybe());
        // sigma_0 = id, sigma_1 = (01): x=0, y=1 gives (01) vs id
        let broken = Solution::from_tables(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(!broken.check_ybe());
    }

    #[test]
    fn involutivity_examples() {
        assert!(Solution::trivial(3).check_involutive());
        assert!(families::cyclic_solution(6).unwrap().check_involutive());
    }

    #[test]
    fn eval_r_on_trivial_swaps() {
        let s = Solution::trivial(3);
        assert_eq!(s.eval_r(1, 2).unwrap(), (2, 1));
        assert!(matches!(
            s.eval_r(0, 3),
            Err(SolutionError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn eval_r_on_cyclic_z4() {
        let s = families::cyclic_solution(4).unwrap();
        assert_eq!(s.eval_r(0, 0).unwrap(), (3, 1));
    }

    #[test]
    fn eval_r_on_theorem_main() {
        // sigma_{(0,1,0)} fixes the origin, and the second component of
        // r swaps back to (0,1,0)
        let s = families::theorem_main(2, 1).unwrap();
        let x = families::point_of_label(&s, &[0, 1, 0]).unwrap();
        let origin = families::point_of_label(&s, &[0, 0, 0]).unwrap();
        assert_eq!(s.eval_r(x, origin).unwrap(), (origin, x));
    }

    #[test]
    fn trivial_solution_is_decomposable_on_two_points() {
        assert!(!Solution::trivial(2).is_indecomposable());
        assert!(families::cyclic_solution(4).unwrap().is_indecomposable());
    }

    #[test]
    fn retract_collapses_cyclic_to_a_point() {
        let s = families::cyclic_solution(5).unwrap();
        let (q, part) = s.retract().unwrap();
        assert_eq!(q.n(), 1);
        assert!(part.is_full());
        let t = Solution::trivial(4);
        let (qt, _) = t.retract().unwrap();
        assert_eq!(qt.n(), 1);
    }

    #[test]
    fn irretractability_examples() {
        assert!(!families::cyclic_solution(4).unwrap().is_irretractable());
        assert!(Solution::trivial(1).is_irretractable());
    }

    #[test]
    fn multipermutation_levels() {
        assert_eq!(
            families::cyclic_solution(4)
                .unwrap()
                .multipermutation_level()
                .unwrap(),
            Some(1)
        );
        assert_eq!(
            Solution::trivial(1).multipermutation_level().unwrap(),
            Some(0)
        );
        assert_eq!(
            Solution::trivial(5).multipermutation_level().unwrap(),
            Some(1)
        );
    }

    #[test]
    fn homomorphism_basics() {
        let s = families::cyclic_solution(4).unwrap();
        let identity: Vec<usize> = (0..4).collect();
        assert!(is_homomorphism(&identity, &s, &s));
        let point = Solution::trivial(1);
        assert!(is_homomorphism(&[0, 0, 0, 0], &s, &point));
    }

    #[test]
    fn fiber_profile_identity_and_constant() {
        let s = families::cyclic_solution(4).unwrap();
        let identity: Vec<usize> = (0..4).collect();
        assert_eq!(fiber_profile(&identity, &s, &s).unwrap(), vec![1, 1, 1, 1]);
        let point = Solution::trivial(1);
        assert_eq!(fiber_profile(&[0, 0, 0, 0], &s, &point).unwrap(), vec![4]);
    }

    #[test]
    fn partition_canonicalisation_and_refinement() {
        let p = Partition::from_block_ids(vec![2, 2, 0, 1]).unwrap();
        assert_eq!(p.block_of(0), 0);
        assert_eq!(p.block_of(2), 1);
        assert_eq!(p.block_count(), 3);
        assert!(Partition::discrete(4).refines(&p));
        assert!(p.refines(&Partition::full(4)));
        assert!(!Partition::full(4).refines(&Partition::discrete(4)));
    }

    #[test]
    fn json_roundtrip_is_byte_identical() {
        let s = families::cyclic_solution(3).unwrap();
        let text = s.to_json_string();
        let back = Solution::from_json_str(&text).unwrap();
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn json_rejects_wrong_schema() {
        let bad = r#"{"schema":"ybe/2","n":1,"sigma":[[0]]}"#;
        assert!(matches!(
            Solution::from_json_str(bad),
            Err(SolutionError::BadSchema(_))
        ));
    }
}
