//! The algebraic matroid of a prime ideal, read off elimination ideals:
//! `S` is independent iff `I ∩ K[x_S] = 0`, and a minimal dependent `C` has a
//! principal elimination ideal generated by its circuit polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use thiserror::Error;

use crate::ffpoly::{FfpolyError, Polynomial};
use crate::groebner::{self, GroebnerError, Ideal, MonomialOrder};
use crate::matroid::{Matroid, MatroidError};
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgmatError {
    #[error("the ideal is the unit ideal")]
    UnitIdeal,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("circuit polynomial for {circuit} only involves {support}")]
    SupportMismatch {
        circuit: ElementSet,
        support: ElementSet,
    },
}

pub type Result<T> = std::result::Result<T, AlgmatError>;

/// A circuit together with its monic circuit polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitRecord {
    pub support: ElementSet,
    pub polynomial: Polynomial,
}

/// Persistent storage for elimination results, keyed by the kept set.
/// Implementations must be safe to call from several threads at once.
pub trait EliminationStore: Send + Sync {
    fn load(&self, keep: ElementSet) -> Option<Vec<String>>;
    fn save(&self, keep: ElementSet, generators: &[String]);
}

/// Independence oracle for one ideal, memoizing every elimination it performs.
pub struct AlgebraicMatroid {
    ideal: Ideal,
    memo: Mutex<HashMap<ElementSet, Arc<Vec<Polynomial>>>>,
    store: Option<Box<dyn EliminationStore>>,
    sweep: OnceLock<Sweep>,
}

/// Result of the bottom-up subset sweep.
#[derive(Debug, Clone)]
struct Sweep {
    bases: Vec<ElementSet>,
    circuits: Vec<ElementSet>,
}

impl AlgebraicMatroid {
    pub fn new(ideal: Ideal) -> Result<Self> {
        // Start eliminations from a reduced basis; it is much smaller than
        // typical raw input and shared by every elimination below.
        let n = ideal.ring().nvars();
        let gb = ideal.groebner_basis(&MonomialOrder::graded_lex(n))?;
        if gb.len() == 1 && gb[0].is_constant() {
            return Err(AlgmatError::UnitIdeal);
        }
        let ideal = Ideal::new(ideal.ring(), gb)?;
        Ok(AlgebraicMatroid {
            ideal,
            memo: Mutex::new(HashMap::new()),
            store: None,
            sweep: OnceLock::new(),
        })
    }

    pub fn with_store(mut self, store: Box<dyn EliminationStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn n(&self) -> usize {
        self.ideal.ring().nvars()
    }

    /// Reduced Gröbner basis of `I ∩ K[x_keep]`.
    pub fn elimination(&self, keep: ElementSet) -> Arc<Vec<Polynomial>> {
        if let Some(hit) = self.memo.lock().unwrap().get(&keep) {
            return hit.clone();
        }
        let gens = self
            .load(keep)
            .unwrap_or_else(|| {
                let gens = groebner::eliminate(&self.ideal, keep);
                if let Some(store) = &self.store {
                    let text: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                    store.save(keep, &text);
                }
                gens
            });
        let gens = Arc::new(gens);
        // deterministic values, so a racing insert is harmless
        self.memo.lock().unwrap().insert(keep, gens.clone());
        gens
    }

    fn load(&self, keep: ElementSet) -> Option<Vec<Polynomial>> {
        let text = self.store.as_ref()?.load(keep)?;
        text.iter()
            .map(|t| Polynomial::parse(t, self.ideal.ring()))
            .collect::<std::result::Result<Vec<_>, FfpolyError>>()
            .ok()
    }

    pub fn independent(&self, s: ElementSet) -> bool {
        s.is_empty() || self.elimination(s).is_empty()
    }

    /// Greedy maximum independent subset size.
    pub fn rank(&self, s: ElementSet) -> usize {
        s.iter()
            .fold(ElementSet::EMPTY, |acc, e| {
                if self.independent(acc.with(e)) {
                    acc.with(e)
                } else {
                    acc
                }
            })
            .len()
    }

    /// Walks subsets level by level, only testing sets whose every
    /// one-smaller subset is independent. Those that turn out dependent are
    /// exactly the circuits.
    fn sweep(&self) -> &Sweep {
        self.sweep.get_or_init(|| {
            let n = self.n();
            let mut level = vec![ElementSet::EMPTY];
            let mut circuits = Vec::new();
            for k in 1..=n {
                let previous: std::collections::HashSet<ElementSet> = level.iter().copied().collect();
                let candidates: Vec<ElementSet> = ElementSet::subsets_of_size(n, k)
                    .into_iter()
                    .filter(|s| s.iter().all(|e| previous.contains(&s.without(e))))
                    .collect();
                let verdicts: Vec<bool> = candidates.par_iter().map(|&s| self.independent(s)).collect();
                let mut next = Vec::new();
                for (s, ok) in candidates.into_iter().zip(verdicts) {
                    if ok {
                        next.push(s);
                    } else {
                        circuits.push(s);
                    }
                }
                if next.is_empty() {
                    break;
                }
                level = next;
            }
            Sweep {
                bases: level,
                circuits,
            }
        })
    }

    /// All circuits with their circuit polynomials, by size then lexicographically.
    pub fn circuits(&self) -> Result<Vec<CircuitRecord>> {
        self.sweep()
            .circuits
            .iter()
            .map(|&c| {
                let polynomial = groebner::principal_generator(&self.elimination(c))?;
                let support = polynomial.support();
                if support != c {
                    return Err(AlgmatError::SupportMismatch {
                        circuit: c,
                        support,
                    });
                }
                Ok(CircuitRecord {
                    support: c,
                    polynomial,
                })
            })
            .collect()
    }

    /// The maximal independent sets as a matroid (exchange axiom verified at
    /// small `n`).
    pub fn bases(&self) -> Result<Matroid> {
        Ok(Matroid::from_bases(self.n(), self.sweep().bases.clone())?)
    }
}

pub fn independent(ideal: &Ideal, s: ElementSet) -> bool {
    s.is_empty() || groebner::eliminate(ideal, s).is_empty()
}

pub fn rank(ideal: &Ideal, s: ElementSet) -> Result<usize> {
    Ok(AlgebraicMatroid::new(ideal.clone())?.rank(s))
}

pub fn circuits(ideal: &Ideal) -> Result<Vec<CircuitRecord>> {
    AlgebraicMatroid::new(ideal.clone())?.circuits()
}

pub fn bases(ideal: &Ideal) -> Result<Matroid> {
    AlgebraicMatroid::new(ideal.clone())?.bases()
}

/// The record of the unique circuit inside `B ∪ {v}`.
pub fn fundamental_circuit<'a>(
    m: &Matroid,
    circuits: &'a [CircuitRecord],
    b: ElementSet,
    v: usize,
) -> Option<&'a CircuitRecord> {
    let c = m.fundamental_circuit(b, v);
    circuits.iter().find(|r| r.support == c)
}

pub fn hyperplanes(m: &Matroid) -> Vec<ElementSet> {
    m.hyperplanes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffpoly::PolyRing;

    fn set(labels: &[usize]) -> ElementSet {
        ElementSet::from_labels(labels).unwrap()
    }

    fn ideal(p: u64, n: usize, gens: &[&str]) -> Ideal {
        let ring = PolyRing::with_indexed_vars(p, n).unwrap();
        let gens = gens.iter().map(|g| Polynomial::parse(g, &ring).unwrap()).collect();
        Ideal::new(&ring, gens).unwrap()
    }

    #[test]
    fn parabola() {
        let i = ideal(2, 2, &["x1 - x2^2"]);
        assert!(independent(&i, set(&[1])));
        assert!(!independent(&i, set(&[1, 2])));
        let recs = circuits(&i).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].support, set(&[1, 2]));
        assert_eq!(recs[0].polynomial.to_string(), "x2^2 + x1");
        assert_eq!(bases(&i).unwrap().bases(), &[set(&[1]), set(&[2])]);
    }

    #[test]
    fn free_ideal() {
        let ring = PolyRing::with_indexed_vars(3, 3).unwrap();
        let i = Ideal::zero(&ring);
        assert!(circuits(&i).unwrap().is_empty());
        assert_eq!(bases(&i).unwrap().bases(), &[set(&[1, 2, 3])]);
        assert_eq!(rank(&i, ElementSet::EMPTY).unwrap(), 0);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let i = ideal(2, 2, &["x1*x2 - 1", "x1^2"]);
        assert_eq!(circuits(&i).unwrap_err(), AlgmatError::UnitIdeal);
    }

    #[test]
    fn line_through_origin() {
        let i = ideal(5, 3, &["x2 - x1", "x3 - x1"]);
        let m = bases(&i).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.bases().len(), 3);
        let recs = circuits(&i).unwrap();
        let supports: Vec<ElementSet> = recs.iter().map(|r| r.support).collect();
        assert_eq!(supports, vec![set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
        let rec = fundamental_circuit(&m, &recs, set(&[1]), 2).unwrap();
        assert_eq!(rec.support, set(&[1, 3]));
    }

    #[test]
    fn non_prime_input_surfaces() {
        // x1*x2 = 0 has two components; {1,2} is dependent but the rank-1
        // bases {1} and {2} come from different components
        let i = ideal(3, 2, &["x1*x2"]);
        let recs = circuits(&i).unwrap();
        assert_eq!(recs[0].polynomial.to_string(), "x1*x2");
    }

    struct CountingStore(Mutex<HashMap<ElementSet, Vec<String>>>);

    impl EliminationStore for CountingStore {
        fn load(&self, keep: ElementSet) -> Option<Vec<String>> {
            self.0.lock().unwrap().get(&keep).cloned()
        }
        fn save(&self, keep: ElementSet, generators: &[String]) {
            self.0.lock().unwrap().insert(keep, generators.to_vec());
        }
    }

    #[test]
    fn store_round_trips() {
        let shared = Arc::new(CountingStore(Mutex::new(HashMap::new())));
        struct Handle(Arc<CountingStore>);
        impl EliminationStore for Handle {
            fn load(&self, keep: ElementSet) -> Option<Vec<String>> {
                self.0.load(keep)
            }
            fn save(&self, keep: ElementSet, generators: &[String]) {
                self.0.save(keep, generators)
            }
        }
        let i = ideal(2, 3, &["x1*x2 - x3"]);
        let first = AlgebraicMatroid::new(i.clone()).unwrap().with_store(Box::new(Handle(shared.clone())));
        let recs = first.circuits().unwrap();
        assert!(!shared.0.lock().unwrap().is_empty());
        let second = AlgebraicMatroid::new(i).unwrap().with_store(Box::new(Handle(shared)));
        assert_eq!(second.circuits().unwrap(), recs);
    }
}
