//! End-to-end computations on a problem description: either an ideal (the
//! Gröbner path) or an integer matrix (the determinant path).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algmat::{AlgebraicMatroid, AlgmatError, EliminationStore};
use crate::ffpoly::{is_prime, CircuitVector, FfpolyError, PolyRing, Polynomial};
use crate::groebner::{GroebnerError, Ideal};
use crate::matroid::MatroidError;
use crate::toric::{self, IntMatrix, ToricError};
use crate::valmat::{self, SeedBasis, Valuation, ValmatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix declares {declared_rows}x{declared_cols} but has {rows} rows of {cols} entries")]
    ShapeMismatch {
        declared_rows: usize,
        declared_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("generator {index}: {source}")]
    Generator { index: usize, source: FfpolyError },
    #[error(transparent)]
    Poly(#[from] FfpolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Algmat(#[from] AlgmatError),
    #[error(transparent)]
    Valmat(#[from] ValmatError),
    #[error(transparent)]
    Toric(#[from] ToricError),
}

impl PipelineError {
    /// True for failures that indicate inconsistent mathematics (for example a
    /// non-prime ideal), as opposed to malformed input.
    pub fn is_inconsistency(&self) -> bool {
        match self {
            PipelineError::Groebner(GroebnerError::NotPrincipal { .. }) => true,
            PipelineError::Algmat(e) => !matches!(e, AlgmatError::UnitIdeal),
            PipelineError::Valmat(e) => matches!(
                e,
                ValmatError::InconsistentValuation { .. }
                    | ValmatError::MissingCircuit(_)
                    | ValmatError::Matroid(MatroidError::ExchangeViolation { .. })
            ),
            PipelineError::Toric(ToricError::Valmat(_)) => true,
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, PipelineError>;

/// A problem as read from an input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProblemInput {
    Ideal {
        p: u64,
        vars: Vec<String>,
        generators: Vec<String>,
    },
    Matrix {
        p: u64,
        rows: usize,
        cols: usize,
        entries: Vec<Vec<i64>>,
    },
}

/// A validated problem.
#[derive(Debug, Clone)]
pub enum Problem {
    Ideal { p: u64, ideal: Ideal },
    Matrix { p: u64, matrix: IntMatrix },
}

impl ProblemInput {
    pub fn p(&self) -> u64 {
        match self {
            ProblemInput::Ideal { p, .. } | ProblemInput::Matrix { p, .. } => *p,
        }
    }

    pub fn prepare(&self) -> Result<Problem> {
        let p = self.p();
        if !is_prime(p) {
            return Err(PipelineError::NotPrime(p));
        }
        match self {
            ProblemInput::Ideal { vars, generators, .. } => {
                let ring = PolyRing::new(p, vars.clone())?;
                let gens = generators
                    .iter()
                    .enumerate()
                    .map(|(index, g)| {
                        Polynomial::parse(g, &ring).map_err(|source| PipelineError::Generator { index, source })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Problem::Ideal {
                    p,
                    ideal: Ideal::new(&ring, gens)?,
                })
            }
            ProblemInput::Matrix {
                rows,
                cols,
                entries,
                ..
            } => {
                let actual_cols = entries.first().map_or(0, |r| r.len());
                if entries.len() != *rows || entries.iter().any(|r| r.len() != *cols) {
                    return Err(PipelineError::ShapeMismatch {
                        declared_rows: *rows,
                        declared_cols: *cols,
                        rows: entries.len(),
                        cols: actual_cols,
                    });
                }
                Ok(Problem::Matrix {
                    p,
                    matrix: IntMatrix::from_i64(entries)?,
                })
            }
        }
    }
}

/// A valuation together with its canonical valuated circuits, sorted, and
/// a circuit polynomial for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub p: u64,
    pub valuation: Valuation,
    pub circuits: Vec<CircuitVector>,
    pub polynomials: Vec<Polynomial>,
}

fn sorted_pairs(mut pairs: Vec<(CircuitVector, Polynomial)>) -> (Vec<CircuitVector>, Vec<Polynomial>) {
    pairs.sort_by(|a, b| a.0.cmp(&b.0));
    pairs.into_iter().unzip()
}

#[derive(Default)]
pub struct Options {
    pub seed: SeedBasis,
    pub store: Option<Box<dyn EliminationStore>>,
}

impl Problem {
    pub fn p(&self) -> u64 {
        match self {
            Problem::Ideal { p, .. } | Problem::Matrix { p, .. } => *p,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Problem::Ideal { ideal, .. } => ideal.ring().nvars(),
            Problem::Matrix { matrix, .. } => matrix.ncols(),
        }
    }

    /// Ideals go through elimination, matrices through determinants.
    pub fn solve(&self, options: Options) -> Result<Solution> {
        match self {
            Problem::Ideal { p, ideal } => groebner_path(ideal, *p, options),
            Problem::Matrix { p, matrix } => matrix_path(matrix, *p),
        }
    }
}

/// Circuits, valuated circuits and the valuation from an ideal.
pub fn groebner_path(ideal: &Ideal, p: u64, options: Options) -> Result<Solution> {
    let mut oracle = AlgebraicMatroid::new(ideal.clone())?;
    if let Some(store) = options.store {
        oracle = oracle.with_store(store);
    }
    let records = oracle.circuits()?;
    let matroid = oracle.bases()?;
    let pairs = records
        .into_iter()
        .map(|r| Ok((r.polynomial.circuit_vector()?.canonical(), r.polynomial)))
        .collect::<Result<Vec<_>>>()?;
    let (circuits, polynomials) = sorted_pairs(pairs);
    let valuation = valmat::valuation_from_circuits(&matroid, &circuits, options.seed)?;
    Ok(Solution {
        p,
        valuation,
        circuits,
        polynomials,
    })
}

/// Determinant valuation and entry-wise valuations of kernel circuits.
pub fn matrix_path(matrix: &IntMatrix, p: u64) -> Result<Solution> {
    let valuation = toric::linear_valuated_matroid(matrix, p)?;
    let ring = PolyRing::with_indexed_vars(p, matrix.ncols())?;
    let pairs = toric::integer_kernel_circuits(matrix)
        .iter()
        .map(|u| Ok((toric::toric_valuated_circuit(u, p), toric::binomial(&ring, &u.u)?)))
        .collect::<Result<Vec<_>>>()?;
    let (circuits, polynomials) = sorted_pairs(pairs);
    Ok(Solution {
        p,
        valuation,
        circuits,
        polynomials,
    })
}

/// Outcome of running both paths on one matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub valuations_equal: bool,
    pub circuits_equal: bool,
    pub differences: Vec<String>,
}

impl CrossCheck {
    pub fn agrees(&self) -> bool {
        self.valuations_equal && self.circuits_equal
    }
}

/// Compares the determinant path with the Gröbner path on the toric ideal.
pub fn cross_check(matrix: &IntMatrix, p: u64) -> Result<CrossCheck> {
    let linear = matrix_path(matrix, p)?;
    let ideal = toric::toric_ideal(matrix, p)?;
    let algebraic = groebner_path(&ideal, p, Options::default())?;
    Ok(compare(&linear, &algebraic))
}

pub fn compare(linear: &Solution, algebraic: &Solution) -> CrossCheck {
    let mut differences = Vec::new();
    let (a, b) = (&linear.valuation, &algebraic.valuation);
    for (basis, x) in a.iter() {
        match b.value(basis) {
            Some(y) if y == x => {}
            Some(y) => differences.push(format!("basis {basis}: determinant path {x}, Gröbner path {y}")),
            None => differences.push(format!("basis {basis} missing from Gröbner path")),
        }
    }
    for (basis, _) in b.iter() {
        if a.value(basis).is_none() {
            differences.push(format!("basis {basis} missing from determinant path"));
        }
    }
    let valuations_equal = differences.is_empty();
    for c in &linear.circuits {
        if !algebraic.circuits.contains(c) {
            differences.push(format!("circuit {c} only on determinant path"));
        }
    }
    for c in &algebraic.circuits {
        if !linear.circuits.contains(c) {
            differences.push(format!("circuit {c} only on Gröbner path"));
        }
    }
    let circuits_equal = linear.circuits == algebraic.circuits;
    CrossCheck {
        valuations_equal,
        circuits_equal,
        differences,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_json_shapes() {
        let ideal: ProblemInput = serde_json::from_str(
            r#"{"kind":"ideal","p":2,"vars":["x1","x2"],"generators":["x1 - x2^2"]}"#,
        )
        .unwrap();
        assert!(matches!(ideal.prepare().unwrap(), Problem::Ideal { p: 2, .. }));
        let matrix: ProblemInput =
            serde_json::from_str(r#"{"kind":"matrix","p":3,"rows":1,"cols":2,"entries":[[1,1]]}"#).unwrap();
        assert!(matches!(matrix.prepare().unwrap(), Problem::Matrix { p: 3, .. }));
        assert!(serde_json::from_str::<ProblemInput>(r#"{"kind":"other","p":2}"#).is_err());
    }

    #[test]
    fn input_validation() {
        let bad_p = ProblemInput::Matrix {
            p: 4,
            rows: 1,
            cols: 1,
            entries: vec![vec![1]],
        };
        assert_eq!(bad_p.prepare().unwrap_err(), PipelineError::NotPrime(4));
        let bad_shape = ProblemInput::Matrix {
            p: 2,
            rows: 2,
            cols: 1,
            entries: vec![vec![1]],
        };
        assert!(matches!(bad_shape.prepare(), Err(PipelineError::ShapeMismatch { .. })));
        let bad_gen = ProblemInput::Ideal {
            p: 2,
            vars: vec!["x".into()],
            generators: vec!["x + y".into()],
        };
        assert!(matches!(bad_gen.prepare(), Err(PipelineError::Generator { index: 0, .. })));
    }

    #[test]
    fn identity_cross_check() {
        let a = IntMatrix::from_i64(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let report = cross_check(&a, 2).unwrap();
        assert!(report.agrees(), "{:?}", report.differences);
    }

    #[test]
    fn non_prime_ideal_is_an_inconsistency() {
        let input = ProblemInput::Ideal {
            p: 3,
            vars: vec!["x1".into(), "x2".into()],
            // the diagonal with an embedded point at the origin
            generators: vec!["x1^2 - x1*x2".into(), "x1*x2 - x2^2".into()],
        };
        let err = input.prepare().unwrap().solve(Options::default()).unwrap_err();
        assert!(err.is_inconsistency(), "{err}");
    }
}
