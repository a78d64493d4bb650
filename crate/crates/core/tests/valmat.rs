mod common;

use common::{ideal, nonfano, random_instances, set};
use lindstrom::algmat;
use lindstrom::extint::ExtInt;
use lindstrom::ffpoly::CircuitVector;
use lindstrom::pipeline::{groebner_path, matrix_path, Options};
use lindstrom::set::ElementSet;
use lindstrom::toric::toric_ideal;
use lindstrom::valmat::{
    check_circuit_axioms, check_exchange_relation, circuits_of_valuation, cocircuits, contract, delete, dual,
    fundamental_valuated_circuit, minor, valuated_circuits, valuation_from_circuits, SeedBasis, ValmatError,
    Valuation,
};
use proptest::prelude::*;

fn nonfano_nu() -> Valuation {
    matrix_path(&nonfano(), 2).unwrap().valuation
}


#[test]
fn valuated_circuit_examples() {
    let records = algmat::circuits(&toric_ideal(&nonfano(), 2).unwrap()).unwrap();
    let vcs = valuated_circuits(&records).unwrap();
    let on = |s: ElementSet| vcs.iter().find(|c| c.support() == s).unwrap().to_string();
    assert_eq!(on(set(&[1, 2, 4])), "(0, 0, ∞, 0, ∞, ∞, ∞)");
    assert_eq!(on(set(&[1, 4, 5, 6])), "(1, ∞, ∞, 0, 0, 0, ∞)");
    let parabola = algmat::circuits(&ideal(2, 2, &["x1 - x2^2"])).unwrap();
    assert_eq!(valuated_circuits(&parabola).unwrap()[0].to_string(), "(0, 1)");
}

#[test]
fn valuation_examples() {
    let sol = groebner_path(&ideal(2, 2, &["x1 - x2^2"]), 2, Options::default()).unwrap();
    assert_eq!(sol.valuation.value(set(&[2])), Some(0));
    assert_eq!(sol.valuation.value(set(&[1])), Some(1));
}

#[test]
fn seed_choice_is_immaterial() {
    let nu = nonfano_nu();
    let circuits = circuits_of_valuation(&nu);
    for &b in nu.matroid().bases() {
        let again = valuation_from_circuits(nu.matroid(), &circuits, SeedBasis::Given(b)).unwrap();
        assert_eq!(again, nu);
    }
}

#[test]
fn fundamental_circuits_match_groebner_circuits() {
    let sol = groebner_path(&toric_ideal(&nonfano(), 2).unwrap(), 2, Options::default()).unwrap();
    assert_eq!(circuits_of_valuation(&sol.valuation), sol.circuits);
    let c = fundamental_valuated_circuit(&sol.valuation, set(&[3, 5, 6]), 3);
    assert_eq!(c.support(), set(&[3, 4, 5, 6]));
    assert_eq!(c.get(2).finite().unwrap() - c.get(3).finite().unwrap(), 1);
}

#[test]
fn dual_examples() {
    let nu = nonfano_nu();
    let d = dual(&nu);
    assert_eq!(d.value(set(&[1, 2, 3, 7])), Some(1));
    assert!(d.iter().filter(|&(b, _)| b != set(&[1, 2, 3, 7])).all(|(_, x)| x == 0));
    assert_eq!(dual(&d), nu);
}

#[test]
fn cocircuit_examples() {
    let cocirc = cocircuits(&nonfano_nu());
    let inf = ExtInt::Inf;
    let z = ExtInt::Fin(0);
    let h347 = CircuitVector::new(vec![z, z, inf, inf, z, z, inf]).unwrap();
    assert!(cocirc.contains(&h347));
    assert!(cocirc.iter().any(|d| d.support() == set(&[3, 5, 6, 7])));
    let parabola = Valuation::from_pairs(2, vec![(set(&[1]), 1), (set(&[2]), 0)]).unwrap();
    assert_eq!(cocircuits(&parabola).len(), 1);
    assert_eq!(cocircuits(&parabola)[0].to_string(), "(1, 0)");
}

#[test]
fn minor_examples() {
    let nu = nonfano_nu();
    assert_eq!(minor(&nu, ElementSet::EMPTY, ElementSet::EMPTY).unwrap(), nu);
    let d7 = minor(&nu, set(&[7]), ElementSet::EMPTY).unwrap();
    assert_eq!(d7.n(), 6);
    for (b, x) in d7.iter() {
        assert_eq!(x, i64::from(b == set(&[4, 5, 6])), "{b}");
    }
    let c1 = minor(&nu, ElementSet::EMPTY, set(&[1])).unwrap();
    assert_eq!(c1.rank(), 2);
    assert!(c1.iter().all(|(_, x)| x == 0));
}

#[test]
fn minors_commute_and_stay_valuated() {
    let nu = nonfano_nu();
    let n = 7;
    for g in ElementSet::all_subsets(n).filter(|s| s.len() <= 2) {
        for f in ElementSet::all_subsets(n).filter(|s| s.len() <= 2 && s.is_disjoint(g)) {
            let direct = minor(&nu, g, f).unwrap();
            let keep = g.complement(n);
            let staged = contract(&delete(&nu, g).unwrap(), lindstrom::matroid::compress(f, keep)).unwrap();
            assert_eq!(direct, staged, "G={g} F={f}");
            let m = direct.matroid();
            assert_eq!(m, &nu.matroid().delete(g).contract(lindstrom::matroid::compress(f, keep)));
            if m.n() > 0 {
                let circuits = circuits_of_valuation(&direct);
                let report = check_circuit_axioms(&circuits, m);
                assert!(report.passed(), "G={g} F={f}: {report}");
            }
        }
    }
}

#[test]
fn perturbed_circuit_family_is_caught() {
    let sol = groebner_path(&toric_ideal(&nonfano(), 2).unwrap(), 2, Options::default()).unwrap();
    let mut caught = 0;
    let mut trials = 0;
    for k in 0..sol.circuits.len() {
        let c = &sol.circuits[k];
        for i in c.support().iter() {
            let mut entries = c.entries().to_vec();
            entries[i] = entries[i] + ExtInt::Fin(1);
            let mut family = sol.circuits.clone();
            family[k] = CircuitVector::new(entries).unwrap().canonical();
            trials += 1;
            let axioms = check_circuit_axioms(&family, sol.valuation.matroid());
            let exchange = check_exchange_relation(&sol.valuation, &family);
            let propagated = valuation_from_circuits(sol.valuation.matroid(), &family, SeedBasis::Lex);
            if !axioms.passed() || !exchange.passed() {
                caught += 1;
            }
            assert!(!exchange.passed(), "exchange check missed a perturbation of {c}");
            assert!(
                matches!(propagated, Err(ValmatError::InconsistentValuation { .. })) || propagated.unwrap() != sol.valuation
            );
        }
    }
    assert_eq!(caught, trials);
}

#[test]
fn missing_circuit_is_reported() {
    let nu = nonfano_nu();
    let mut circuits = circuits_of_valuation(&nu);
    let dropped = circuits.remove(0).support();
    assert_eq!(
        valuation_from_circuits(nu.matroid(), &circuits, SeedBasis::Lex),
        Err(ValmatError::MissingCircuit(dropped))
    );
}

#[test]
fn toric_agreement_of_circuit_families() {
    for inst in random_instances(15, 11) {
        let lin = matrix_path(&inst.matrix, inst.p).unwrap();
        let alg = groebner_path(&toric_ideal(&inst.matrix, inst.p).unwrap(), inst.p, Options::default()).unwrap();
        assert_eq!(lin.circuits, alg.circuits, "{}", inst.label);
        assert_eq!(circuits_of_valuation(&lin.valuation), lin.circuits, "{}", inst.label);
    }
}

fn arb_valuation() -> impl Strategy<Value = Valuation> {
    (1usize..=3, 2usize..=6, proptest::collection::vec(0i64..=3, 18), prop_oneof![Just(2u64), Just(3u64)])
        .prop_filter_map("rank zero", |(d, n, pool, p)| {
            let rows: Vec<Vec<i64>> = (0..d).map(|i| pool[i * 6..i * 6 + n].to_vec()).collect();
            let a = lindstrom::toric::IntMatrix::from_i64(&rows).ok()?;
            (a.rank() > 0).then(|| matrix_path(&a, p).unwrap().valuation)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution(nu in arb_valuation()) {
        prop_assert_eq!(dual(&dual(&nu)), nu);
    }

    #[test]
    fn normalized_minimum_is_zero(nu in arb_valuation()) {
        prop_assert_eq!(nu.iter().map(|(_, x)| x).min(), Some(0));
    }

    #[test]
    fn derived_circuits_satisfy_exchange(nu in arb_valuation()) {
        let circuits = circuits_of_valuation(&nu);
        prop_assert!(check_exchange_relation(&nu, &circuits).passed());
        prop_assert!(check_circuit_axioms(&circuits, nu.matroid()).passed());
        prop_assert_eq!(valuation_from_circuits(nu.matroid(), &circuits, SeedBasis::Lex).unwrap(), nu);
    }
}
