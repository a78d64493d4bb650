//! Matroids given by an explicit basis family.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("a matroid needs at least one basis")]
    NoBases,
    #[error("ground set of size {0} is too large")]
    GroundSetTooLarge(usize),
    #[error("basis {0} is not a subset of the ground set")]
    OutOfRange(ElementSet),
    #[error("bases {0} and {1} have different sizes")]
    UnequalSizes(ElementSet, ElementSet),
    #[error("basis exchange fails for {b1}, {b2} at element {x}")]
    ExchangeViolation {
        b1: ElementSet,
        b2: ElementSet,
        x: usize,
    },
}

/// Ground sets below this size get the exchange axiom checked on construction.
pub const VERIFY_BELOW: usize = 9;

#[derive(Debug, Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Builds a matroid, verifying the exchange axiom when `n < VERIFY_BELOW`.
    pub fn from_bases(n: usize, bases: Vec<ElementSet>) -> Result<Self, MatroidError> {
        Self::from_bases_with(n, bases, n < VERIFY_BELOW)
    }

    pub fn from_bases_with(n: usize, bases: Vec<ElementSet>, verify: bool) -> Result<Self, MatroidError> {
        if n >= MAX_ELEMENTS {
            return Err(MatroidError::GroundSetTooLarge(n));
        }
        let ground = ElementSet::full(n);
        let bases: Vec<ElementSet> = bases
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let first = *bases.first().ok_or(MatroidError::NoBases)?;
        for &b in &bases {
            if !b.is_subset(ground) {
                return Err(MatroidError::OutOfRange(b));
            }
            if b.len() != first.len() {
                return Err(MatroidError::UnequalSizes(first, b));
            }
        }
        let index = bases.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let m = Matroid {
            n,
            rank: first.len(),
            bases,
            index,
        };
        if verify {
            m.check_exchange()?;
        }
        Ok(m)
    }

    /// The free matroid: `E` is the only basis.
    pub fn free(n: usize) -> Self {
        Self::from_bases_with(n, vec![ElementSet::full(n)], false).expect("valid")
    }

    /// For all bases `B1, B2` and `x ∈ B1∖B2` some `y ∈ B2∖B1` makes
    /// `B1 - x + y` a basis.
    pub fn check_exchange(&self) -> Result<(), MatroidError> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for x in b1.difference(b2).iter() {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|y| self.is_basis(b1.without(x).with(y)));
                    if !ok {
                        return Err(MatroidError::ExchangeViolation { b1, b2, x });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn basis_index(&self, b: ElementSet) -> Option<usize> {
        self.index.get(&b).copied()
    }

    pub fn is_basis(&self, b: ElementSet) -> bool {
        self.index.contains_key(&b)
    }

    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(s).len())
            .max()
            .unwrap_or(0)
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.bases.iter().any(|b| s.is_subset(*b))
    }

    /// Minimal dependent sets, by size then lexicographically.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = ElementSet::all_subsets(self.n)
            .filter(|&s| !self.is_independent(s) && s.iter().all(|e| self.is_independent(s.without(e))))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// The unique circuit inside `B ∪ {v}`; it contains `v`.
    pub fn fundamental_circuit(&self, b: ElementSet, v: usize) -> ElementSet {
        debug_assert!(self.is_basis(b) && !b.contains(v));
        b.iter()
            .filter(|&u| self.is_basis(b.without(u).with(v)))
            .collect::<ElementSet>()
            .with(v)
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        (0..self.n)
            .filter(|&e| s.contains(e) || self.rank_of(s.with(e)) == r)
            .collect()
    }

    /// Closed sets of rank `r - 1`, lexicographically ordered.
    pub fn hyperplanes(&self) -> Vec<ElementSet> {
        if self.rank == 0 {
            return Vec::new();
        }
        let mut out: Vec<ElementSet> = ElementSet::all_subsets(self.n)
            .filter(|&s| self.rank_of(s) == self.rank - 1 && self.closure(s) == s)
            .collect();
        out.sort();
        out
    }

    /// Bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let bases = self.bases.iter().map(|b| b.complement(self.n)).collect();
        Matroid::from_bases_with(self.n, bases, false).expect("dual of a matroid")
    }

    /// `M ∖ G` on the reindexed ground set `E ∖ G`.
    pub fn delete(&self, g: ElementSet) -> Matroid {
        let keep = g.complement(self.n);
        let r = self.rank_of(keep);
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(keep).len() == r)
            .map(|b| compress(b.intersection(keep), keep))
            .collect();
        Matroid::from_bases_with(keep.len(), bases, false).expect("deletion of a matroid")
    }

    /// `M / F` on the reindexed ground set `E ∖ F`.
    pub fn contract(&self, f: ElementSet) -> Matroid {
        let rf = self.rank_of(f);
        let keep = f.complement(self.n);
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(f).len() == rf)
            .map(|b| compress(b.difference(f), keep))
            .collect();
        Matroid::from_bases_with(keep.len(), bases, false).expect("contraction of a matroid")
    }
}

/// Renumbers the elements of `s ⊆ keep` to consecutive indices of `keep`.
pub fn compress(s: ElementSet, keep: ElementSet) -> ElementSet {
    keep.iter()
        .enumerate()
        .filter(|&(_, e)| s.contains(e))
        .map(|(k, _)| k)
        .collect()
}

/// Inverse of [`compress`].
pub fn expand(s: ElementSet, keep: ElementSet) -> ElementSet {
    keep.iter()
        .enumerate()
        .filter(|&(k, _)| s.contains(k))
        .map(|(_, e)| e)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> ElementSet {
        ElementSet::from_labels(labels).unwrap()
    }

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_bases(n, ElementSet::subsets_of_size(n, r)).unwrap()
    }

    #[test]
    fn rejects_non_matroids() {
        // {1,2} and {3,4} alone violate exchange
        let err = Matroid::from_bases(4, vec![set(&[1, 2]), set(&[3, 4])]).unwrap_err();
        assert!(matches!(err, MatroidError::ExchangeViolation { .. }));
        assert_eq!(Matroid::from_bases(3, vec![]).unwrap_err(), MatroidError::NoBases);
        assert!(matches!(
            Matroid::from_bases(3, vec![set(&[1]), set(&[1, 2])]),
            Err(MatroidError::UnequalSizes(..))
        ));
        // skipping verification is allowed
        assert!(Matroid::from_bases_with(4, vec![set(&[1, 2]), set(&[3, 4])], false).is_ok());
    }

    #[test]
    fn uniform_matroid_queries() {
        let m = uniform(2, 4);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.circuits().len(), 4);
        assert!(m.circuits().iter().all(|c| c.len() == 3));
        assert_eq!(m.hyperplanes().len(), 4);
        assert_eq!(m.fundamental_circuit(set(&[1, 2]), 2), set(&[1, 2, 3]));
        assert_eq!(m.dual(), uniform(2, 4));
    }

    #[test]
    fn hyperplane_edge_cases() {
        let parallel = Matroid::from_bases(2, vec![set(&[1]), set(&[2])]).unwrap();
        assert_eq!(parallel.hyperplanes(), vec![ElementSet::EMPTY]);
        let free = Matroid::free(2);
        assert_eq!(free.hyperplanes(), vec![set(&[1]), set(&[2])]);
    }

    #[test]
    fn minors_of_a_loop_and_coloop() {
        // element 1 is a coloop, element 3 a loop
        let m = Matroid::from_bases(3, vec![set(&[1, 2])]).unwrap();
        assert_eq!(m.delete(set(&[1])).bases(), &[set(&[1])]);
        assert_eq!(m.contract(set(&[1])).bases(), &[set(&[1])]);
        assert_eq!(m.delete(set(&[3])).bases(), &[set(&[1, 2])]);
        assert_eq!(m.contract(set(&[3])).bases(), &[set(&[1, 2])]);
    }

    #[test]
    fn rank_is_a_matroid_rank_function() {
        let m = Matroid::from_bases(
            5,
            ElementSet::subsets_of_size(5, 3)
                .into_iter()
                .filter(|b| *b != set(&[1, 2, 3]) && *b != set(&[3, 4, 5]))
                .collect(),
        )
        .unwrap();
        for a in ElementSet::all_subsets(5) {
            assert!(m.rank_of(a) <= a.len());
            for b in ElementSet::all_subsets(5) {
                if a.is_subset(b) {
                    assert!(m.rank_of(a) <= m.rank_of(b));
                }
                assert!(
                    m.rank_of(a.union(b)) + m.rank_of(a.intersection(b)) <= m.rank_of(a) + m.rank_of(b)
                );
            }
        }
    }

    #[test]
    fn compress_expand() {
        let keep = set(&[2, 4, 5]);
        let s = set(&[4, 5]);
        assert_eq!(compress(s, keep), set(&[2, 3]));
        assert_eq!(expand(compress(s, keep), keep), s);
    }
}
