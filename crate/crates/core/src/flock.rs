//! Matroid flocks from a valuation: the slice `M_α` collects the bases that
//! maximize `e_B·α - ν(B)`, and `g(α)` is that maximum.

use rayon::prelude::*;

use crate::matroid::{Matroid, MatroidError, VERIFY_BELOW};
use crate::report::Report;
use crate::set::ElementSet;
use crate::valmat::Valuation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlockSlice {
    pub alpha: Vec<i64>,
    pub matroid: Matroid,
    pub g_value: i64,
}

fn score(b: ElementSet, nu_b: i64, alpha: &[i64]) -> i64 {
    b.iter().map(|i| alpha[i]).sum::<i64>() - nu_b
}

/// `max { e_B·α - ν(B) }` over all bases.
pub fn g(nu: &Valuation, alpha: &[i64]) -> i64 {
    assert_eq!(alpha.len(), nu.n(), "alpha has the wrong length");
    nu.iter().map(|(b, x)| score(b, x, alpha)).max().expect("at least one basis")
}

fn argmax(nu: &Valuation, alpha: &[i64]) -> (i64, Vec<ElementSet>) {
    let top = g(nu, alpha);
    let bases = nu
        .iter()
        .filter(|&(b, x)| score(b, x, alpha) == top)
        .map(|(b, _)| b)
        .collect();
    (top, bases)
}

/// The slice at `alpha`; its basis family is checked to be a matroid.
pub fn flock_slice(nu: &Valuation, alpha: &[i64]) -> Result<FlockSlice, MatroidError> {
    let (g_value, bases) = argmax(nu, alpha);
    Ok(FlockSlice {
        alpha: alpha.to_vec(),
        matroid: Matroid::from_bases_with(nu.n(), bases, nu.n() < VERIFY_BELOW)?,
        g_value,
    })
}

/// All integer points of `[lo, hi]^n`, last coordinate varying fastest.
pub fn box_points(n: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1).max(0) as u64;
    let total = if width == 0 { 0 } else { width.pow(n as u32) };
    (0..total).map(move |mut k| {
        let mut alpha = vec![lo; n];
        for a in alpha.iter_mut().rev() {
            *a += (k % width) as i64;
            k /= width;
        }
        alpha
    })
}

/// Largest `R ≤ rank` with `(2R+1)^n · n · |bases| ≤ 10⁶`.
pub fn default_box_radius(nu: &Valuation) -> i64 {
    const BUDGET: f64 = 1e6;
    let per_point = (nu.n() * nu.matroid().bases().len()).max(1) as f64;
    let mut r = nu.rank() as i64;
    while r > 0 && ((2 * r + 1) as f64).powi(nu.n() as i32) * per_point > BUDGET {
        r -= 1;
    }
    r
}

/// Verifies `M_α / i = M_{α+e_i} ∖ i` for every `i`, `M_α = M_{α+𝟙}` with
/// `g(α+𝟙) = g(α) + r`, and that each slice satisfies basis exchange.
pub fn check_flock_axioms<I>(nu: &Valuation, alphas: I) -> Report
where
    I: IntoIterator<Item = Vec<i64>>,
{
    let alphas: Vec<Vec<i64>> = alphas.into_iter().collect();
    let parts: Vec<Report> = alphas.par_iter().map(|alpha| check_at(nu, alpha)).collect();
    let mut report = Report::new("flock axioms");
    for part in parts {
        report.merge(part);
    }
    report
}

fn check_at(nu: &Valuation, alpha: &[i64]) -> Report {
    let mut report = Report::new("flock axioms");
    let n = nu.n();
    let slice = |a: &[i64]| {
        let (g, bases) = argmax(nu, a);
        (g, Matroid::from_bases_with(n, bases, false).expect("equal-size bases"))
    };
    let (g0, m0) = slice(alpha);
    report.check(m0.check_exchange().is_ok(), || format!("slice at {alpha:?} is not a matroid"));

    let shifted: Vec<i64> = alpha.iter().map(|a| a + 1).collect();
    let (g1, m1) = slice(&shifted);
    report.check(m0 == m1, || format!("M_α != M_(α+1) at α={alpha:?}"));
    report.check(g1 == g0 + nu.rank() as i64, || {
        format!("g(α+1) = {g1} but g(α) + r = {} at α={alpha:?}", g0 + nu.rank() as i64)
    });

    for i in 0..n {
        let mut raised = alpha.to_vec();
        raised[i] += 1;
        let (_, mi) = slice(&raised);
        let lhs = m0.contract(ElementSet::singleton(i));
        let rhs = mi.delete(ElementSet::singleton(i));
        report.check(lhs == rhs, || {
            format!("M_α/{} != M_(α+e_{})\\{} at α={alpha:?}", i + 1, i + 1, i + 1)
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> ElementSet {
        ElementSet::from_labels(labels).unwrap()
    }

    #[test]
    fn box_enumeration() {
        let pts: Vec<Vec<i64>> = box_points(2, -1, 0).collect();
        assert_eq!(pts, vec![vec![-1, -1], vec![-1, 0], vec![0, -1], vec![0, 0]]);
        assert_eq!(box_points(3, 0, -1).count(), 0);
        assert_eq!(box_points(0, 0, 1).collect::<Vec<_>>(), vec![Vec::<i64>::new()]);
    }

    #[test]
    fn single_basis_slice_is_constant() {
        let nu = Valuation::trivial(Matroid::free(2));
        for alpha in box_points(2, -2, 2) {
            let s = flock_slice(&nu, &alpha).unwrap();
            assert_eq!(s.matroid.bases(), &[set(&[1, 2])]);
            assert_eq!(s.g_value, alpha.iter().sum::<i64>());
        }
    }

    #[test]
    fn trivial_one_element_passes() {
        let nu = Valuation::trivial(Matroid::free(1));
        let report = check_flock_axioms(&nu, box_points(1, -1, 1));
        assert!(report.passed(), "{report}");
        assert_eq!(default_box_radius(&nu), 1);
    }

    #[test]
    fn parabola_flock() {
        let nu = Valuation::from_pairs(2, vec![(set(&[1]), 1), (set(&[2]), 0)]).unwrap();
        assert_eq!(g(&nu, &[0, 0]), 0);
        assert_eq!(flock_slice(&nu, &[0, 0]).unwrap().matroid.bases(), &[set(&[2])]);
        assert_eq!(flock_slice(&nu, &[1, 0]).unwrap().matroid.bases(), &[set(&[1]), set(&[2])]);
        assert!(check_flock_axioms(&nu, box_points(2, -2, 2)).passed());
    }
}
