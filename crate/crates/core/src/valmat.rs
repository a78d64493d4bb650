//! Valuated matroids: valuations on bases, valuated circuits and cocircuits,
//! duality, minors, and executable checks of the valuated-circuit axioms.
//!
//! Sign convention is min-plus. Valuated circuits are stored in canonical
//! form (least finite entry 0), which picks one representative per class
//! `𝒞 + ℤ·𝟙`. Valuations are stored normalized so that the least value is 0.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::algmat::CircuitRecord;
use crate::extint::ExtInt;
use crate::ffpoly::{CircuitVector, FfpolyError};
use crate::matroid::{compress, Matroid, MatroidError};
use crate::report::Report;
use crate::set::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValmatError {
    #[error("{values} values supplied for {bases} bases")]
    ValueCount { bases: usize, values: usize },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Poly(#[from] FfpolyError),
    #[error("no valuated circuit with support {0}")]
    MissingCircuit(ElementSet),
    #[error("exchange relation is inconsistent at basis {basis} (values {first} and {second})")]
    InconsistentValuation {
        basis: ElementSet,
        first: i64,
        second: i64,
    },
    #[error("seed {0} is not a basis")]
    SeedNotBasis(ElementSet),
    #[error("delete set {delete} and contract set {contract} overlap")]
    OverlappingMinor {
        delete: ElementSet,
        contract: ElementSet,
    },
    #[error("minor set {0} is outside the ground set")]
    OutOfRange(ElementSet),
}

pub type Result<T> = std::result::Result<T, ValmatError>;

/// A function from the bases of a matroid to `ℤ`, shifted so its minimum is 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    matroid: Matroid,
    values: Vec<i64>,
}

impl Valuation {
    /// `values[k]` belongs to `matroid.bases()[k]`. The result is normalized.
    pub fn new(matroid: Matroid, values: Vec<i64>) -> Result<Self> {
        if values.len() != matroid.bases().len() {
            return Err(ValmatError::ValueCount {
                bases: matroid.bases().len(),
                values: values.len(),
            });
        }
        let min = values.iter().copied().min().unwrap_or(0);
        let values = values.into_iter().map(|v| v - min).collect();
        Ok(Valuation { matroid, values })
    }

    pub fn from_pairs(n: usize, pairs: Vec<(ElementSet, i64)>) -> Result<Self> {
        Self::from_pairs_with(n, pairs, true)
    }

    pub(crate) fn from_pairs_with(n: usize, pairs: Vec<(ElementSet, i64)>, verify: bool) -> Result<Self> {
        let lookup: HashMap<ElementSet, i64> = pairs.iter().copied().collect();
        let matroid = Matroid::from_bases_with(n, pairs.into_iter().map(|(b, _)| b).collect(), verify && n < crate::matroid::VERIFY_BELOW)?;
        let values = matroid.bases().iter().map(|b| lookup[b]).collect();
        Self::new(matroid, values)
    }

    /// The valuation that is 0 on every basis.
    pub fn trivial(matroid: Matroid) -> Self {
        let values = vec![0; matroid.bases().len()];
        Valuation { matroid, values }
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    pub fn rank(&self) -> usize {
        self.matroid.rank()
    }

    pub fn value(&self, b: ElementSet) -> Option<i64> {
        self.matroid.basis_index(b).map(|k| self.values[k])
    }

    /// `ν(B)`, or `∞` when `B` is not a basis.
    pub fn value_ext(&self, b: ElementSet) -> ExtInt {
        self.value(b).map(ExtInt::Fin).unwrap_or(ExtInt::Inf)
    }

    /// `(basis, value)` pairs in lexicographic basis order.
    pub fn iter(&self) -> impl Iterator<Item = (ElementSet, i64)> + '_ {
        self.matroid.bases().iter().copied().zip(self.values.iter().copied())
    }

    /// Copy with `ν(b)` replaced; used to build corrupted inputs for checks.
    pub fn with_value(&self, b: ElementSet, value: i64) -> Option<Valuation> {
        let k = self.matroid.basis_index(b)?;
        let mut values = self.values.clone();
        values[k] = value;
        Valuation::new(self.matroid.clone(), values).ok()
    }
}

/// One canonical valuated circuit per circuit record, sorted by support.
pub fn valuated_circuits(records: &[CircuitRecord]) -> Result<Vec<CircuitVector>> {
    let mut out: Vec<CircuitVector> = records
        .iter()
        .map(|r| r.polynomial.circuit_vector().map(|c| c.canonical()))
        .collect::<std::result::Result<_, _>>()?;
    out.sort();
    Ok(out)
}

/// Where exchange propagation starts. The final normalization makes the
/// choice immaterial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedBasis {
    #[default]
    Lex,
    Given(ElementSet),
}

/// Recovers the valuation from valuated circuits by propagating
/// `ν(B - u + v) = ν(B) + 𝒞_u - 𝒞_v` over the basis-exchange graph, then
/// checking the relation on every edge.
pub fn valuation_from_circuits(m: &Matroid, vcircuits: &[CircuitVector], seed: SeedBasis) -> Result<Valuation> {
    let by_support: HashMap<ElementSet, &CircuitVector> =
        vcircuits.iter().map(|c| (c.support(), c)).collect();
    let seed = match seed {
        SeedBasis::Lex => m.bases()[0],
        SeedBasis::Given(b) => b,
    };
    let seed_idx = m.basis_index(seed).ok_or(ValmatError::SeedNotBasis(seed))?;

    let ground = m.ground();
    let lookup = |b: ElementSet, v: usize| -> Result<&CircuitVector> {
        let c = m.fundamental_circuit(b, v);
        by_support
            .get(&c)
            .copied()
            .ok_or(ValmatError::MissingCircuit(c))
    };
    let step = |nu_b: i64, c: &CircuitVector, u: usize, v: usize| -> i64 {
        let cu = c.get(u).finite().expect("u in support");
        let cv = c.get(v).finite().expect("v in support");
        nu_b + cu - cv
    };

    let mut values: Vec<Option<i64>> = vec![None; m.bases().len()];
    values[seed_idx] = Some(0);
    let mut queue = VecDeque::from([seed_idx]);
    while let Some(k) = queue.pop_front() {
        let b = m.bases()[k];
        let nu_b = values[k].expect("queued bases carry values");
        for v in ground.difference(b).iter() {
            let c = lookup(b, v)?;
            for u in c.support().without(v).iter() {
                let k2 = m.basis_index(b.without(u).with(v)).expect("exchange is a basis");
                if values[k2].is_none() {
                    values[k2] = Some(step(nu_b, c, u, v));
                    queue.push_back(k2);
                }
            }
        }
    }
    let values: Vec<i64> = values
        .into_iter()
        .map(|v| v.expect("basis graph is connected"))
        .collect();

    for (k, &b) in m.bases().iter().enumerate() {
        for v in ground.difference(b).iter() {
            let c = lookup(b, v)?;
            for u in c.support().without(v).iter() {
                let b2 = b.without(u).with(v);
                let k2 = m.basis_index(b2).expect("exchange is a basis");
                let predicted = step(values[k], c, u, v);
                if predicted != values[k2] {
                    return Err(ValmatError::InconsistentValuation {
                        basis: b2,
                        first: values[k2],
                        second: predicted,
                    });
                }
            }
        }
    }
    Valuation::new(m.clone(), values)
}

/// The valuated circuit supported on the fundamental circuit of `(B, v)`:
/// entry `v` is 0 and entry `u ∈ B` is `ν(B - u + v) - ν(B)`.
pub fn fundamental_valuated_circuit(nu: &Valuation, b: ElementSet, v: usize) -> CircuitVector {
    let nu_b = nu.value(b).expect("B is a basis");
    let mut entries = vec![ExtInt::Inf; nu.n()];
    entries[v] = ExtInt::Fin(0);
    for u in b.iter() {
        entries[u] = match nu.value(b.without(u).with(v)) {
            Some(x) => ExtInt::Fin(x - nu_b),
            None => ExtInt::Inf,
        };
    }
    CircuitVector::new(entries).expect("entry v is finite").canonical()
}

/// Every fundamental valuated circuit of `ν`, deduplicated and sorted.
pub fn circuits_of_valuation(nu: &Valuation) -> Vec<CircuitVector> {
    let ground = nu.matroid().ground();
    let mut out = BTreeSet::new();
    for &b in nu.matroid().bases() {
        for v in ground.difference(b).iter() {
            out.insert(fundamental_valuated_circuit(nu, b, v));
        }
    }
    out.into_iter().collect()
}

/// `ν*(B*) = ν(E ∖ B*)` on the dual matroid.
pub fn dual(nu: &Valuation) -> Valuation {
    let n = nu.n();
    let pairs = nu.iter().map(|(b, x)| (b.complement(n), x)).collect();
    Valuation::from_pairs_with(n, pairs, false).expect("dual of a valuation")
}

/// Valuated circuits of the dual.
pub fn cocircuits(nu: &Valuation) -> Vec<CircuitVector> {
    circuits_of_valuation(&dual(nu))
}

/// Valuated deletion `ν ∖ G`, reindexed to `E ∖ G`. Values are read off
/// `ν(B' ∪ J)` for the lexicographically first admissible `J ⊆ G`.
pub fn delete(nu: &Valuation, g: ElementSet) -> Result<Valuation> {
    let n = nu.n();
    if !g.is_subset(nu.matroid().ground()) {
        return Err(ValmatError::OutOfRange(g));
    }
    let keep = g.complement(n);
    let m = nu.matroid();
    let r = m.rank_of(keep);
    let j = m
        .bases()
        .iter()
        .filter(|b| b.intersection(keep).len() == r)
        .map(|b| b.intersection(g))
        .min()
        .expect("some basis meets E∖G maximally");
    let pairs = nu
        .iter()
        .filter(|(b, _)| b.intersection(g) == j)
        .map(|(b, x)| (compress(b.difference(g), keep), x))
        .collect();
    Valuation::from_pairs_with(keep.len(), pairs, false)
}

/// Valuated contraction `ν / F`, reindexed to `E ∖ F`. Values are
/// `ν(B' ∪ F₀)` for the lexicographically first basis `F₀` of `F`.
pub fn contract(nu: &Valuation, f: ElementSet) -> Result<Valuation> {
    let n = nu.n();
    if !f.is_subset(nu.matroid().ground()) {
        return Err(ValmatError::OutOfRange(f));
    }
    let m = nu.matroid();
    let f0 = f.iter().fold(ElementSet::EMPTY, |acc, e| {
        if m.is_independent(acc.with(e)) {
            acc.with(e)
        } else {
            acc
        }
    });
    let keep = f.complement(n);
    let pairs = nu
        .iter()
        .filter(|(b, _)| b.intersection(f) == f0)
        .map(|(b, x)| (compress(b.difference(f), keep), x))
        .collect();
    Valuation::from_pairs_with(keep.len(), pairs, false)
}

/// `ν ∖ G / F` on the ground set `E ∖ (F ∪ G)`, renumbered in increasing order
/// (see [`minor_ground`]).
pub fn minor(nu: &Valuation, g: ElementSet, f: ElementSet) -> Result<Valuation> {
    if !g.is_disjoint(f) {
        return Err(ValmatError::OverlappingMinor {
            delete: g,
            contract: f,
        });
    }
    let deleted = delete(nu, g)?;
    let keep = g.complement(nu.n());
    contract(&deleted, compress(f, keep))
}

/// Elements of `E` that survive in `ν ∖ G / F`, in the order the minor numbers them.
pub fn minor_ground(n: usize, g: ElementSet, f: ElementSet) -> ElementSet {
    g.union(f).complement(n)
}

/// Checks the four valuated-circuit axioms on a family of canonical vectors
/// against the underlying matroid `m`.
pub fn check_circuit_axioms(vcircuits: &[CircuitVector], m: &Matroid) -> Report {
    let mut report = Report::new("valuated circuit axioms");
    let supports: Vec<ElementSet> = vcircuits.iter().map(|c| c.support()).collect();

    // (1) supports form the circuits of a matroid, namely of m
    for (k, &c1) in supports.iter().enumerate() {
        report.check(!c1.is_empty(), || format!("(1) empty support at index {k}"));
        for &c2 in &supports {
            if c1 != c2 {
                report.check(!c1.is_subset(c2), || format!("(1) support {c1} inside {c2}"));
                for e in c1.intersection(c2).iter() {
                    let target = c1.union(c2).without(e);
                    report.check(supports.iter().any(|c3| c3.is_subset(target)), || {
                        format!("(1) no circuit inside ({c1} ∪ {c2}) - {}", e + 1)
                    });
                }
            }
        }
    }
    let expected: BTreeSet<ElementSet> = m.circuits().into_iter().collect();
    let found: BTreeSet<ElementSet> = supports.iter().copied().collect();
    report.check(expected == found, || {
        format!(
            "(1) supports differ from the matroid's circuits: missing {:?}, extra {:?}",
            expected.difference(&found).collect::<Vec<_>>(),
            found.difference(&expected).collect::<Vec<_>>()
        )
    });

    // (2) and (3): exactly one canonical representative per support
    for (k, c) in vcircuits.iter().enumerate() {
        report.check(c.is_canonical(), || format!("(2) {c} is not canonical"));
        report.check(!supports[..k].contains(&supports[k]), || {
            format!("(3) two representatives on support {}", supports[k])
        });
    }

    // (4) local circuit elimination
    for c in vcircuits {
        for c2 in vcircuits {
            let (s1, s2) = (c.support(), c2.support());
            if s1 == s2 {
                continue;
            }
            let union = s1.union(s2);
            if m.rank_of(union) + 2 != union.len() {
                continue;
            }
            for u in s1.intersection(s2).iter() {
                // align c2 so that c2_u = c_u
                let lambda = c.get(u).finite().unwrap() - c2.get(u).finite().unwrap();
                let c2 = c2.shift(lambda);
                for v in s1.difference(s2).iter() {
                    let cv = c.get(v);
                    let ok = vcircuits.iter().any(|c3| {
                        let s3 = c3.support();
                        if s3.contains(u) || !s3.contains(v) {
                            return false;
                        }
                        let mu = cv.finite().unwrap() - c3.get(v).finite().unwrap();
                        let c3 = c3.shift(mu);
                        (0..c.len()).all(|i| c3.get(i) >= c.get(i).min(c2.get(i)))
                    });
                    report.check(ok, || {
                        format!("(4) no elimination of {} from {c} and {c2} keeping {}", u + 1, v + 1)
                    });
                }
            }
        }
    }
    report
}

/// `ν(B) + 𝒞_u = ν(B - u + v) + 𝒞_v` for every basis `B`, `v ∉ B`, `u ∈ B`,
/// and every valuated circuit supported in `B ∪ {v}`; `∞` on one side iff on both.
pub fn check_exchange_relation(nu: &Valuation, vcircuits: &[CircuitVector]) -> Report {
    let mut report = Report::new("basis/circuit exchange relation");
    let ground = nu.matroid().ground();
    for (b, nu_b) in nu.iter() {
        for v in ground.difference(b).iter() {
            let span = b.with(v);
            let covering: Vec<&CircuitVector> =
                vcircuits.iter().filter(|c| c.support().is_subset(span)).collect();
            report.check(!covering.is_empty(), || {
                format!("no valuated circuit inside {b} + {}", v + 1)
            });
            for c in covering {
                for u in b.iter() {
                    let lhs = ExtInt::Fin(nu_b) + c.get(u);
                    let rhs = nu.value_ext(b.without(u).with(v)) + c.get(v);
                    report.check(lhs == rhs, || {
                        format!("B={b} u={} v={}: {lhs} != {rhs} for {c}", u + 1, v + 1)
                    });
                }
            }
        }
    }
    report
}

/// For each circuit/cocircuit pair with overlapping supports, the minimum of
/// `𝒞_i + 𝒟_i` is attained at least twice.
pub fn check_orthogonality(circuits: &[CircuitVector], cocircuits: &[CircuitVector]) -> Report {
    let mut report = Report::new("tropical orthogonality");
    for c in circuits {
        for d in cocircuits {
            if c.support().is_disjoint(d.support()) {
                continue;
            }
            let sums: Vec<ExtInt> = (0..c.len()).map(|i| c.get(i) + d.get(i)).collect();
            let min = *sums.iter().min().unwrap();
            let hits = sums.iter().filter(|&&s| s == min).count();
            report.check(min.is_finite() && hits >= 2, || {
                format!("min of {c} + {d} attained {hits} time(s)")
            });
        }
    }
    report
}

/// Cocircuit supports are exactly the hyperplane complements.
pub fn check_cocircuit_supports(nu: &Valuation, cocircuits: &[CircuitVector]) -> Report {
    let mut report = Report::new("cocircuit supports are hyperplane complements");
    let n = nu.n();
    let expected: BTreeSet<ElementSet> = nu
        .matroid()
        .hyperplanes()
        .into_iter()
        .map(|h| h.complement(n))
        .collect();
    let found: BTreeSet<ElementSet> = cocircuits.iter().map(|d| d.support()).collect();
    report.check(expected == found && found.len() == cocircuits.len(), || {
        format!("hyperplane complements {expected:?} vs cocircuit supports {found:?}")
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> ElementSet {
        ElementSet::from_labels(labels).unwrap()
    }

    fn cv(v: &[Option<i64>]) -> CircuitVector {
        CircuitVector::new(v.iter().map(|e| e.map(ExtInt::Fin).unwrap_or(ExtInt::Inf)).collect()).unwrap()
    }

    /// ν on U(1,2) from <x1 - x2^2>, p = 2: ν({1}) = 1, ν({2}) = 0.
    fn parabola() -> Valuation {
        Valuation::from_pairs(2, vec![(set(&[1]), 1), (set(&[2]), 0)]).unwrap()
    }

    #[test]
    fn normalizes_to_min_zero() {
        let nu = Valuation::from_pairs(2, vec![(set(&[1]), 5), (set(&[2]), 4)]).unwrap();
        assert_eq!(nu, parabola());
    }

    #[test]
    fn parabola_from_circuit() {
        let m = parabola().matroid().clone();
        let nu = valuation_from_circuits(&m, &[cv(&[Some(0), Some(1)])], SeedBasis::Lex).unwrap();
        assert_eq!(nu.value(set(&[2])), Some(0));
        assert_eq!(nu.value(set(&[1])), Some(1));
        let seeded =
            valuation_from_circuits(&m, &[cv(&[Some(0), Some(1)])], SeedBasis::Given(set(&[2]))).unwrap();
        assert_eq!(seeded, nu);
        assert_eq!(
            valuation_from_circuits(&m, &[cv(&[Some(0), Some(1)])], SeedBasis::Given(set(&[1, 2]))),
            Err(ValmatError::SeedNotBasis(set(&[1, 2])))
        );
    }

    #[test]
    fn parabola_fundamental_circuit_and_cocircuit() {
        let nu = parabola();
        // must agree with the circuit vector of x1 - x2^2
        assert_eq!(fundamental_valuated_circuit(&nu, set(&[2]), 0), cv(&[Some(0), Some(1)]));
        assert_eq!(cocircuits(&nu), vec![cv(&[Some(1), Some(0)])]);
    }

    #[test]
    fn free_matroid_valuation() {
        let m = Matroid::free(3);
        let nu = valuation_from_circuits(&m, &[], SeedBasis::Lex).unwrap();
        assert_eq!(nu.iter().collect::<Vec<_>>(), vec![(set(&[1, 2, 3]), 0)]);
        let d = dual(&nu);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(ElementSet::EMPTY, 0)]);
        assert!(cocircuits(&nu).iter().all(|c| c.support().len() == 1));
    }

    #[test]
    fn missing_and_inconsistent_circuits() {
        let m = Matroid::from_bases(3, ElementSet::subsets_of_size(3, 2)).unwrap();
        assert_eq!(
            valuation_from_circuits(&m, &[], SeedBasis::Lex),
            Err(ValmatError::MissingCircuit(set(&[1, 2, 3])))
        );
        // uniform U(2,3) has one circuit; any vector on it is consistent
        let ok = valuation_from_circuits(&m, &[cv(&[Some(0), Some(2), Some(1)])], SeedBasis::Lex).unwrap();
        assert_eq!(ok.value(set(&[2, 3])), Some(0));
        assert_eq!(ok.value(set(&[1, 3])), Some(2));
        assert_eq!(ok.value(set(&[1, 2])), Some(1));
    }

    #[test]
    fn minor_rejects_overlap() {
        let nu = parabola();
        assert!(matches!(
            minor(&nu, set(&[1]), set(&[1])),
            Err(ValmatError::OverlappingMinor { .. })
        ));
        assert!(matches!(minor(&nu, set(&[3]), ElementSet::EMPTY), Err(ValmatError::OutOfRange(_))));
    }

    #[test]
    fn minor_to_empty_ground_set() {
        let nu = parabola();
        let empty = minor(&nu, set(&[1]), set(&[2])).unwrap();
        assert_eq!(empty.n(), 0);
        assert_eq!(empty.iter().collect::<Vec<_>>(), vec![(ElementSet::EMPTY, 0)]);
    }

    #[test]
    fn single_circuit_family_passes() {
        let m = parabola().matroid().clone();
        let report = check_circuit_axioms(&[cv(&[Some(0), Some(1)])], &m);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn duplicate_and_uncanonical_representatives_fail() {
        let m = parabola().matroid().clone();
        let report = check_circuit_axioms(&[cv(&[Some(0), Some(1)]), cv(&[Some(1), Some(2)])], &m);
        assert!(!report.passed());
        assert!(report.violations.iter().any(|v| v.starts_with("(2)")));
        assert!(report.violations.iter().any(|v| v.starts_with("(3)")));
    }
}
