//! Integer matrices as a second input mode: the column matroid valued by
//! `val_p` of maximal minors, kernel circuits, and the prime toric ideal of
//! the monomial map given by the columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::extint::ExtInt;
use crate::ffpoly::{CircuitVector, FfpolyError, Monomial, PolyRing, Polynomial};
use crate::groebner::{self, GroebnerError, Ideal};
use crate::set::ElementSet;
use crate::valmat::{Valuation, ValmatError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("a matrix needs at least one row and one column")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("column set has {got} elements but the rank is {rank}")]
    WrongSize { got: usize, rank: usize },
    #[error("column index outside the matrix")]
    OutOfRange,
    #[error("exponent {0} does not fit a machine word")]
    ExponentTooLarge(BigInt),
    #[error(transparent)]
    Poly(#[from] FfpolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Valmat(#[from] ValmatError),
}

pub type Result<T> = std::result::Result<T, ToricError>;

/// Dense `d × n` matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<BigInt>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.is_empty() || ncols == 0 {
            return Err(ToricError::Empty);
        }
        if ncols >= crate::set::MAX_ELEMENTS {
            return Err(ToricError::OutOfRange);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(ToricError::Ragged {
                    row,
                    len: r.len(),
                    expected: ncols,
                });
            }
        }
        Ok(IntMatrix { rows, ncols })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn select(&self, rows: &[usize], cols: ElementSet) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|&i| cols.iter().map(|j| self.rows[i][j].clone()).collect())
            .collect()
    }

    fn all_rows(&self) -> Vec<usize> {
        (0..self.nrows()).collect()
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self.select(&self.all_rows(), ElementSet::full(self.ncols)))
    }

    /// Rank of the columns in `cols`.
    pub fn column_rank(&self, cols: ElementSet) -> usize {
        bareiss_rank(self.select(&self.all_rows(), cols))
    }

    /// Lexicographically first set of rows spanning the row space of the
    /// columns `cols`.
    pub fn row_basis(&self, cols: ElementSet) -> Vec<usize> {
        let mut chosen = Vec::new();
        for i in 0..self.nrows() {
            chosen.push(i);
            if bareiss_rank(self.select(&chosen, cols)) < chosen.len() {
                chosen.pop();
            }
        }
        chosen
    }
}

/// Determinant of a square matrix by fraction-free elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for i in 0..k {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                let v = (&m[r][c] * &m[i][i] - &m[r][i] * &m[i][c]) / &prev;
                m[r][c] = v;
            }
        }
        prev = m[i][i].clone();
    }
    let det = if k == 0 { BigInt::one() } else { m[k - 1][k - 1].clone() };
    if negate {
        -det
    } else {
        det
    }
}

fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for j in c + 1..ncols {
                let v = (&m[r][j] * &m[rank][c] - &m[r][c] * &m[rank][j]) / &prev;
                m[r][j] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    rank
}

/// `val_p(|k|)`, or `∞` for zero.
pub fn big_valuation(k: &BigInt, p: u64) -> ExtInt {
    if k.is_zero() {
        return ExtInt::Inf;
    }
    let p = BigInt::from(p);
    let mut k = k.abs();
    let mut v = 0;
    loop {
        let (q, r) = k.div_rem(&p);
        if !r.is_zero() {
            return ExtInt::Fin(v);
        }
        k = q;
        v += 1;
    }
}

/// A primitive kernel vector with inclusion-minimal support, first nonzero
/// entry positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCircuit {
    pub u: Vec<BigInt>,
    pub support: ElementSet,
}

impl KernelCircuit {
    fn primitive(mut u: Vec<BigInt>) -> Self {
        let g = u.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() {
            for x in u.iter_mut() {
                *x /= &g;
            }
        }
        if u.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in u.iter_mut() {
                *x = -&*x;
            }
        }
        let support = (0..u.len()).filter(|&i| !u[i].is_zero()).collect();
        KernelCircuit { u, support }
    }
}

/// One primitive kernel vector per circuit of the column matroid, by support
/// size then lexicographically.
pub fn integer_kernel_circuits(a: &IntMatrix) -> Vec<KernelCircuit> {
    let n = a.ncols();
    let mut out = Vec::new();
    for k in 1..=(a.rank() + 1).min(n) {
        let found: Vec<KernelCircuit> = ElementSet::subsets_of_size(n, k)
            .into_par_iter()
            .filter(|&c| a.column_rank(c) == k - 1 && c.iter().all(|e| a.column_rank(c.without(e)) == k - 1))
            .map(|c| circuit_vector_on(a, c))
            .collect();
        out.extend(found);
    }
    out
}

/// Kernel vector on a circuit `C`: signed maximal minors of a row basis of
/// `A_C`, i.e. the generalized cross product.
fn circuit_vector_on(a: &IntMatrix, c: ElementSet) -> KernelCircuit {
    let rows = a.row_basis(c);
    let m = a.select(&rows, c);
    let mut u = vec![BigInt::zero(); a.ncols()];
    for (k, j) in c.iter().enumerate() {
        let minor: Vec<Vec<BigInt>> = m
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, x)| x.clone()).collect())
            .collect();
        let det = bareiss_det(minor);
        u[j] = if k % 2 == 0 { det } else { -det };
    }
    KernelCircuit::primitive(u)
}

/// Entry-wise `val_p` of the kernel vector, canonicalized.
pub fn toric_valuated_circuit(u: &KernelCircuit, p: u64) -> CircuitVector {
    let entries = u.u.iter().map(|x| big_valuation(x, p)).collect();
    CircuitVector::new(entries).expect("circuits are nonzero").canonical()
}

/// `X^{u+} - X^{u-}` in `ring`.
pub fn binomial(ring: &std::sync::Arc<PolyRing>, u: &[BigInt]) -> Result<Polynomial> {
    let mut plus = vec![0u32; u.len()];
    let mut minus = vec![0u32; u.len()];
    for (i, x) in u.iter().enumerate() {
        let e = x.abs().to_u32().ok_or_else(|| ToricError::ExponentTooLarge(x.clone()))?;
        if x.is_positive() {
            plus[i] = e;
        } else {
            minus[i] = e;
        }
    }
    Ok(Polynomial::from_terms(
        ring,
        [(Monomial::new(plus), 1), (Monomial::new(minus), -1)],
    ))
}

/// A basis of the lattice `ker_ℤ A`, by unimodular column operations on `[A; I]`.
pub fn kernel_lattice_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (d, n) = (a.nrows(), a.ncols());
    // cols[j] = (column j of A, column j of I)
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c: Vec<BigInt> = (0..d).map(|i| a.entry(i, j).clone()).collect();
            c.extend((0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut start = 0;
    for row in 0..d {
        // Euclid on row `row` across columns start.. until one nonzero remains
        loop {
            let nonzero: Vec<usize> = (start..n).filter(|&j| !cols[j][row].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&j) = nonzero.first() {
                    cols.swap(start, j);
                    start += 1;
                }
                break;
            }
            let pivot = *nonzero
                .iter()
                .min_by_key(|&&j| cols[j][row].abs())
                .expect("nonempty");
            for &j in &nonzero {
                if j != pivot {
                    let q = cols[j][row].div_floor(&cols[pivot][row]);
                    let (pc, jc) = if pivot < j {
                        let (lo, hi) = cols.split_at_mut(j);
                        (&lo[pivot], &mut hi[0])
                    } else {
                        let (lo, hi) = cols.split_at_mut(pivot);
                        (&hi[0], &mut lo[j])
                    };
                    for (x, y) in jc.iter_mut().zip(pc.iter()) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
    cols[start..].iter().map(|c| c[d..].to_vec()).collect()
}

/// The prime toric ideal of `A` over `F_p`: lattice binomials saturated at
/// `x1⋯xn`.
pub fn toric_ideal(a: &IntMatrix, p: u64) -> Result<Ideal> {
    let n = a.ncols();
    let ring = PolyRing::with_indexed_vars(p, n)?;
    let gens = kernel_lattice_basis(a)
        .iter()
        .map(|u| binomial(&ring, u))
        .collect::<Result<Vec<_>>>()?;
    let lattice = Ideal::new(&ring, gens)?;
    Ok(groebner::saturate(&lattice, &Monomial::new(vec![1; n]))?)
}

/// `val_p` of the maximal minor on columns `b` and a fixed row basis of `A`.
pub fn determinant_valuation(a: &IntMatrix, b: ElementSet, p: u64) -> Result<ExtInt> {
    let rank = a.rank();
    if b.len() != rank {
        return Err(ToricError::WrongSize { got: b.len(), rank });
    }
    if !b.is_subset(ElementSet::full(a.ncols())) {
        return Err(ToricError::OutOfRange);
    }
    let rows = a.row_basis(ElementSet::full(a.ncols()));
    Ok(big_valuation(&bareiss_det(a.select(&rows, b)), p))
}

/// Column bases of `A` valued by [`determinant_valuation`], normalized.
pub fn linear_valuated_matroid(a: &IntMatrix, p: u64) -> Result<Valuation> {
    let n = a.ncols();
    let rank = a.rank();
    let rows = a.row_basis(ElementSet::full(n));
    let pairs: Vec<(ElementSet, i64)> = ElementSet::subsets_of_size(n, rank)
        .into_par_iter()
        .filter_map(|b| {
            big_valuation(&bareiss_det(a.select(&rows, b)), p)
                .finite()
                .map(|v| (b, v))
        })
        .collect();
    Ok(Valuation::from_pairs(n, pairs)?)
}
