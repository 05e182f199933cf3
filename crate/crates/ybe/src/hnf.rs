//! Integer row lattices kept in Hermite normal form.
//!
//! A lattice is stored as echelon basis rows with strictly increasing
//! pivot columns, positive pivots, and the entries above each pivot
//! reduced into `[0, pivot)`. That normal form makes coset
//! representatives unique, which is what the structure-brace build
//! keys its tables on. Entries are unbounded integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
}

fn pivot_column(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|v| !v.is_zero())
}

impl HnfLattice {
    pub fn new(dim: usize) -> HnfLattice {
        HnfLattice {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Adjoins `v` to the lattice. Returns `true` when the lattice grew.
    pub fn insert(&mut self, v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.dim);
        if self.contains(&v) {
            return false;
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.push(v);
        self.rows = hermite_normal_form(rows, self.dim);
        true
    }

    /// Membership: `v` reduces to zero against the echelon rows.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for row in &self.rows {
            let col = pivot_column(row).expect("stored rows are nonzero");
            if w[col].is_zero() {
                continue;
            }
            let (q, r) = w[col].div_rem(&row[col]);
            if !r.is_zero() {
                return false;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi -= &q * ri;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Canonical coset representative of `v` modulo the lattice: at
    /// every pivot column the representative lies in `[0, pivot)`.
    /// Vectors in the same coset reduce to the same representative.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for row in &self.rows {
            let col = pivot_column(row).expect("stored rows are nonzero");
            let q = w[col].div_floor(&row[col]);
            if q.is_zero() {
                continue;
            }
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi -= &q * ri;
            }
        }
        w
    }

    /// Index of the lattice in `Z^dim`: the pivot product, defined only
    /// at full rank.
    pub fn index(&self) -> Option<BigUint> {
        if !self.is_full_rank() {
            return None;
        }
        let mut det = BigInt::from(1);
        for row in &self.rows {
            let col = pivot_column(row).expect("stored rows are nonzero");
            det *= &row[col];
        }
        Some(det.magnitude().clone())
    }
}

/// Row-style Hermite normal form by integer elimination: per column,
/// gcd the candidate rows down to one pivot, then reduce the entries
/// above it into `[0, pivot)`.
fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, dim: usize) -> Vec<Vec<BigInt>> {
    let mut next = 0usize;
    for col in 0..dim {
        loop {
            let candidate = rows[next..]
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by_key(|(_, r)| r[col].abs())
                .map(|(i, _)| next + i);
            let Some(pivot_row) = candidate else { break };
            rows.swap(next, pivot_row);
            if rows[next][col].is_negative() {
                for v in rows[next].iter_mut() {
                    *v = -&*v;
                }
            }
            let mut finished = true;
            for k in next + 1..rows.len() {
                if rows[k][col].is_zero() {
                    continue;
                }
                let q = rows[k][col].div_floor(&rows[next][col]);
                if !q.is_zero() {
                    let pivot = rows[next].clone();
                    for (v, p) in rows[k].iter_mut().zip(&pivot) {
                        *v -= &q * p;
                    }
                }
                if !rows[k][col].is_zero() {
                    finished = false;
                }
            }
            if finished {
                // normalise the entries above the pivot
                let pivot = rows[next].clone();
                for row in rows.iter_mut().take(next) {
                    let q = row[col].div_floor(&pivot[col]);
                    if !q.is_zero() {
                        for (v, p) in row.iter_mut().zip(&pivot) {
                            *v -= &q * p;
                        }
                    }
                }
                next += 1;
                break;
            }
        }
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn insert_and_index() {
        let mut lat = HnfLattice::new(2);
        assert!(lat.insert(vec_of(&[2, 0])));
        assert!(lat.insert(vec_of(&[0, 3])));
        assert!(!lat.insert(vec_of(&[2, 3])));
        assert_eq!(lat.index(), Some(6u32.into()));
    }

    #[test]
    fn gcd_collapses_rows() {
        let mut lat = HnfLattice::new(1);
        lat.insert(vec_of(&[6]));
        lat.insert(vec_of(&[10]));
        assert_eq!(lat.index(), Some(2u32.into()));
        assert!(lat.contains(&vec_of(&[4])));
        assert!(!lat.contains(&vec_of(&[3])));
    }

    #[test]
    fn reduce_is_canonical_on_cosets() {
        let mut lat = HnfLattice::new(2);
        lat.insert(vec_of(&[2, 1]));
        lat.insert(vec_of(&[0, 5]));
        for a in -6i64..6 {
            for b in -6i64..6 {
                let v = vec_of(&[a, b]);
                let red = lat.reduce(&v);
                // same coset
                let diff: Vec<BigInt> = v.iter().zip(&red).map(|(x, y)| x - y).collect();
                assert!(lat.contains(&diff));
                // idempotent
                assert_eq!(lat.reduce(&red), red);
                // shifting by a lattice vector does not change the result
                let shifted: Vec<BigInt> = v
                    .iter()
                    .zip(lat.rows()[0].iter())
                    .map(|(x, r)| x + r * BigInt::from(3))
                    .collect();
                assert_eq!(lat.reduce(&shifted), red);
            }
        }
        // coset count equals the index
        let mut seen = std::collections::HashSet::new();
        for a in 0..10i64 {
            for b in 0..10 {
                seen.insert(lat.reduce(&vec_of(&[a, b])));
            }
        }
        let index: u64 = lat.index().unwrap().try_into().unwrap();
        assert_eq!(seen.len() as u64, index);
    }

    #[test]
    fn partial_rank_reduce() {
        let mut lat = HnfLattice::new(3);
        lat.insert(vec_of(&[0, 2, 4]));
        assert!(!lat.is_full_rank());
        assert_eq!(lat.index(), None);
        let red = lat.reduce(&vec_of(&[5, 7, 1]));
        assert_eq!(red, vec_of(&[5, 1, -11]));
    }
}
