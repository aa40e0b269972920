mod common;

use braidsim::circuit::Circuit;
use braidsim::pauli::PauliOperator;
use braidsim::statevec::{Gate, StateVector};
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pauli_commutation_matches_matrices_on_all_two_qubit_pairs() {
    let ps = all_paulis(2);
    let mut cases = 0;
    for p in &ps {
        for q in &ps {
            let (mp, mq) = (operator_matrix(p), operator_matrix(q));
            let pq = &mp * &mq;
            let qp = &mq * &mp;
            let commute = (&pq - &qp).norm() < 1e-12;
            let anti = (&pq + &qp).norm() < 1e-12;
            assert!(commute ^ anti);
            assert_eq!(p.commutes_with(q), commute, "{p} {q}");
            // the symbolic product carries the right phase
            let prod = p.compose(q).unwrap();
            assert!(
                (operator_matrix(&prod) - &pq).norm() < 1e-12,
                "{p} * {q} = {prod}"
            );
            cases += 1;
        }
    }
    assert_eq!(cases, 256);
}

#[test]
fn gate_kinds_are_unitary_and_match_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let gates = [
        Gate::X(1),
        Gate::Y(0),
        Gate::Z(2),
        Gate::H(1),
        Gate::S(2),
        Gate::Sdg(0),
        Gate::Cx {
            control: 2,
            target: 0,
        },
        Gate::Cx {
            control: 0,
            target: 1,
        },
    ];
    for g in gates {
        let u = gate_matrix(&g, 3);
        let id = &u * u.adjoint();
        assert!((id - CMat::identity(8, 8)).norm() < 1e-12);
        let mut s = random_state(3, &mut rng);
        let expected = &u * to_vector(&s);
        s.apply_gate(&g).unwrap();
        assert!((to_vector(&s) - expected).norm() < 1e-12, "{g:?}");
    }
}

#[test]
fn hadamard_conjugated_cnot_reverses_direction() {
    let seq = [
        Gate::H(0),
        Gate::H(1),
        Gate::Cx {
            control: 0,
            target: 1,
        },
        Gate::H(0),
        Gate::H(1),
    ];
    let u = circuit_unitary(&seq, 2);
    let rev = gate_matrix(
        &Gate::Cx {
            control: 1,
            target: 0,
        },
        2,
    );
    assert!((u - rev).norm() < 1e-12);
    let mut s = StateVector::basis(2, 0b10).unwrap();
    for g in &seq {
        s.apply_gate(g).unwrap();
    }
    assert!((s.probability(0b11) - 1.0).abs() < 1e-12);
}

#[test]
fn pauli_image_matches_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for op in all_paulis(3).iter().step_by(5) {
        for neg in [false, true] {
            let op = op.clone().with_sign(neg);
            let s = random_state(3, &mut rng);
            let expected = operator_matrix(&op) * to_vector(&s);
            let got = to_vector(&s.pauli_image(&op).unwrap());
            assert!((got - expected).norm() < 1e-12);
        }
    }
}

#[test]
fn capacity_limits() {
    assert!(StateVector::new(0).is_err());
    assert!(StateVector::new(25).is_err());
    assert_eq!(StateVector::new(3).unwrap().amplitudes().len(), 8);
}

#[test]
fn born_rule_frequencies() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let psi = random_state(2, &mut rng);
    let p1 = psi.prob_one(1).unwrap();
    let trials = 100_000;
    let mut ones = 0usize;
    for _ in 0..trials {
        let mut s = psi.clone();
        ones += s.measure_z(1, &mut rng).unwrap() as usize;
    }
    let se = (p1 * (1.0 - p1) / trials as f64).sqrt();
    let freq = ones as f64 / trials as f64;
    assert!((freq - p1).abs() < 3.0 * se, "freq {freq} vs {p1} (se {se})");
}

#[test]
fn plus_state_splits_evenly() {
    let mut ones = 0usize;
    let trials = 20_000;
    for seed in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = StateVector::new(1).unwrap();
        s.apply_gate(&Gate::H(0)).unwrap();
        ones += s.measure_z(0, &mut rng).unwrap() as usize;
    }
    let se = (0.25 / trials as f64).sqrt();
    assert!((ones as f64 / trials as f64 - 0.5).abs() < 3.0 * se);
}

#[test]
fn anticorrelated_singlet_component_measures_equal() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = StateVector::from_amplitudes(vec![c(h, 0.0), z, z, c(-h, 0.0)]).unwrap();
        let a = s.measure_z(0, &mut rng).unwrap();
        let b = s.measure_z(1, &mut rng).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn identical_seed_gives_identical_record() {
    let mut c = Circuit::new(3, 3).unwrap();
    c.gates([
        Gate::H(0),
        Gate::H(1),
        Gate::Cx {
            control: 1,
            target: 2,
        },
    ])
    .unwrap();
    for q in 0..3 {
        c.measure(q, q).unwrap();
    }
    let run = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..64).map(|_| c.sample(&mut rng).unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(run(5), run(5));
    assert_ne!(run(5), run(6));
}

#[test]
fn exchange_projector_example() {
    let mut s = StateVector::new(3).unwrap();
    let yy: PauliOperator = "YYI".parse().unwrap();
    let p = s.project(&yy, false).unwrap();
    assert!((p - 0.5).abs() < 1e-12);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![c(0.0, 0.0); 8];
    amps[0] = c(h, 0.0);
    amps[0b011] = c(-h, 0.0);
    let expected = StateVector::from_amplitudes(amps).unwrap();
    assert!((s.fidelity(&expected) - 1.0).abs() < 1e-12);
    let zz: PauliOperator = "ZZ".parse().unwrap();
    assert!(StateVector::new(2).unwrap().project(&zz, true).is_err());
}

fn gate_strategy(n: usize) -> impl Strategy<Value = Gate> {
    (0..7usize, 0..n, 0..n).prop_filter_map("distinct cnot operands", move |(k, a, b)| match k {
        0 => Some(Gate::X(a)),
        1 => Some(Gate::Y(a)),
        2 => Some(Gate::Z(a)),
        3 => Some(Gate::H(a)),
        4 => Some(Gate::S(a)),
        5 => Some(Gate::Sdg(a)),
        _ => (a != b).then_some(Gate::Cx {
            control: a,
            target: b,
        }),
    })
}

fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliOperator> {
    (proptest::collection::vec(0..4u8, n), any::<bool>()).prop_map(move |(ks, neg)| {
        let s: String = ks.iter().map(|k| ['I', 'X', 'Y', 'Z'][*k as usize]).collect();
        s.parse::<PauliOperator>().unwrap().with_sign(neg)
    })
}

proptest! {
    #[test]
    fn gates_preserve_norm(seed in any::<u64>(), gates in proptest::collection::vec(gate_strategy(4), 0..60)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = random_state(4, &mut rng);
        for g in &gates {
            s.apply_gate(g).unwrap();
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pauli_squares_to_identity(p in pauli_strategy(5)) {
        let sq = p.compose(&p).unwrap();
        prop_assert!(sq.is_identity());
        prop_assert_eq!(sq.sign(), Some(1));
    }

    #[test]
    fn commutation_is_symmetric(p in pauli_strategy(4), q in pauli_strategy(4)) {
        prop_assert_eq!(p.commutes_with(&q), q.commutes_with(&p));
        let pq = p.compose(&q).unwrap();
        let qp = q.compose(&p).unwrap();
        if p.commutes_with(&q) {
            prop_assert_eq!(pq, qp);
        } else {
            prop_assert_eq!(pq, qp.negated());
        }
    }

    #[test]
    fn expectation_is_real_and_bounded(seed in any::<u64>(), p in pauli_strategy(3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_state(3, &mut rng);
        let v = s.expectation(&p).unwrap();
        let m = operator_matrix(&p);
        let psi = to_vector(&s);
        let exact = psi.dotc(&(m * &psi));
        prop_assert!(exact.im.abs() < 1e-10);
        prop_assert!((v - exact.re).abs() < 1e-10);
        prop_assert!(v.abs() <= 1.0 + 1e-12);
    }
}
