#![allow(dead_code)]

use lindstrom::ffpoly::PolyRing;
use lindstrom::ffpoly::Polynomial;
use lindstrom::groebner::Ideal;
use lindstrom::set::ElementSet;
use lindstrom::toric::IntMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const NONFANO: [[i64; 7]; 3] = [
    [1, 0, 0, 1, 1, 0, 1],
    [0, 1, 0, 1, 0, 1, 1],
    [0, 0, 1, 0, 1, 1, 1],
];

pub fn nonfano() -> IntMatrix {
    IntMatrix::from_i64(&NONFANO.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn set(labels: &[usize]) -> ElementSet {
    ElementSet::from_labels(labels).unwrap()
}

pub fn ideal(p: u64, n: usize, gens: &[&str]) -> Ideal {
    let ring = PolyRing::with_indexed_vars(p, n).unwrap();
    let gens = gens.iter().map(|g| Polynomial::parse(g, &ring).unwrap()).collect();
    Ideal::new(&ring, gens).unwrap()
}

/// A random matrix instance: shape, entries in [0,3], and p.
#[derive(Debug, Clone)]
pub struct Instance {
    pub matrix: IntMatrix,
    pub p: u64,
    pub label: String,
}

/// Seeded instances with d ≤ 3, n ≤ 6, entries in [0,3], p ∈ {2,3}, rank ≥ 1.
pub fn random_instances(count: usize, seed: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(2..=6);
        let rows: Vec<Vec<i64>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(0..=3)).collect()).collect();
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let matrix = IntMatrix::from_i64(&rows).unwrap();
        if matrix.rank() == 0 {
            continue;
        }
        let label = format!("#{} p={p} A={rows:?}", out.len());
        out.push(Instance { matrix, p, label });
    }
    out
}
