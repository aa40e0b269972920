mod common;

use braidsim::circuit::Circuit;
use braidsim::exchange::{correlation, ideal_circuit, postselect, run_shots, ExperimentDef};
use braidsim::noise::*;
use braidsim::pauli::PauliOperator;
use braidsim::statevec::{Gate, StateVector};
use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TRAJECTORIES: usize = 100_000;

/// Runs `trajectory` many times and checks every non-identity Pauli
/// expectation against `rho` within three standard errors.
fn check_trajectories(n: usize, rho: &CMat, seed: u64, trajectory: impl Fn(&mut ChaCha8Rng) -> StateVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let finals: Vec<StateVector> = (0..TRAJECTORIES).map(|_| trajectory(&mut rng)).collect();
    for op in &all_paulis(n)[1..] {
        let samples: Vec<f64> = finals.iter().map(|s| s.expectation(op).unwrap()).collect();
        let (mean, se) = mean_se(&samples);
        let exact = expectation_of(rho, op);
        assert!(
            (mean - exact).abs() <= 3.0 * se.max(1e-12),
            "<{op}>: trajectories {mean} +- {se}, channel {exact}"
        );
    }
}

#[test]
fn single_qubit_depolarizing_matches_channel() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let psi = random_state(1, &mut rng);
    let p = 0.3;
    let rho = depolarizing_channel(&density(&psi), &[0], 1, p);
    check_trajectories(1, &rho, 32, |rng| {
        let mut s = psi.clone();
        apply_depolarizing(&mut s, &[0], p, rng).unwrap();
        s
    });
}

#[test]
fn noisy_cnot_matches_fifteen_pauli_channel() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let psi = random_state(2, &mut rng);
    let g = Gate::Cx {
        control: 1,
        target: 0,
    };
    let mut cfg = NoiseConfig::noiseless(2);
    cfg.pair_errors.push(PairError {
        pair: [0, 1],
        err: 0.25,
    });
    let rho = depolarizing_channel(&unitary(&density(&psi), &gate_matrix(&g, 2)), &[0, 1], 2, 0.25);
    check_trajectories(2, &rho, 42, |rng| {
        let mut s = psi.clone();
        s.apply_gate(&g).unwrap();
        apply_gate_noise(&mut s, &g, &cfg, rng).unwrap();
        s
    });
}

#[test]
fn idle_noise_matches_damping_and_dephasing() {
    let noise = QubitNoise {
        t1: 50e-6,
        t2: 40e-6,
        readout_err: 0.0,
        single_err: 0.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    for (q, t) in [(0, 10e-6), (1, 35e-6)] {
        let psi = random_state(2, &mut rng);
        let rho = idle_channel(&density(&psi), q, 2, t, &noise);
        check_trajectories(2, &rho, 52 + q as u64, |rng| {
            let mut s = psi.clone();
            apply_idle_noise(&mut s, q, t, &noise, rng).unwrap();
            s
        });
    }
}

#[test]
fn noisy_bell_circuit_matches_density_simulation() {
    let noise = QubitNoise {
        t1: 30e-6,
        t2: 25e-6,
        readout_err: 0.05,
        single_err: 0.01,
    };
    let mut cfg = NoiseConfig::noiseless(2);
    cfg.qubits = vec![
        noise,
        QubitNoise {
            readout_err: 0.02,
            ..noise
        },
    ];
    cfg.pair_errors.push(PairError {
        pair: [0, 1],
        err: 0.04,
    });
    cfg.durations = Durations {
        single: 1e-6,
        cnot: 3e-6,
        measure: 5e-6,
    };
    let mut c = Circuit::new(2, 2).unwrap();
    c.gate(Gate::H(0)).unwrap();
    c.gate(Gate::Cx {
        control: 0,
        target: 1,
    })
    .unwrap();
    c.measure(0, 0).unwrap();
    c.measure(1, 1).unwrap();

    // same per-qubit clock schedule, written out by hand
    let d = cfg.durations;
    let mut rho = density(&StateVector::new(2).unwrap());
    rho = unitary(&rho, &gate_matrix(&Gate::H(0), 2));
    rho = depolarizing_channel(&rho, &[0], 2, noise.single_err);
    rho = idle_channel(&rho, 0, 2, d.single, &cfg.qubits[0]);
    rho = idle_channel(&rho, 1, 2, d.single, &cfg.qubits[1]);
    rho = unitary(
        &rho,
        &gate_matrix(
            &Gate::Cx {
                control: 0,
                target: 1,
            },
            2,
        ),
    );
    rho = depolarizing_channel(&rho, &[0, 1], 2, 0.04);
    for q in 0..2 {
        rho = idle_channel(&rho, q, 2, d.cnot + d.measure, &cfg.qubits[q]);
    }
    let mut exact = [0.0; 4];
    for (k, e) in exact.iter_mut().enumerate() {
        for j in 0..4usize {
            let mut p = rho[(j, j)].re;
            for q in 0..2 {
                let flip = cfg.qubits[q].readout_err;
                p *= if (j ^ k) >> q & 1 == 1 { flip } else { 1.0 - flip };
            }
            *e += p;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut counts = [0usize; 4];
    for _ in 0..TRAJECTORIES {
        counts[execute(&c, Some(&cfg), &mut rng).unwrap() as usize] += 1;
    }
    for k in 0..4 {
        let freq = counts[k] as f64 / TRAJECTORIES as f64;
        let se = (exact[k] * (1.0 - exact[k]) / TRAJECTORIES as f64).sqrt();
        assert!(
            (freq - exact[k]).abs() <= 3.0 * se,
            "record {k:02b}: {freq} vs {}",
            exact[k]
        );
    }
}

#[test]
fn excited_state_decays_with_t1() {
    let noise = QubitNoise {
        t1: 20e-6,
        t2: 40e-6,
        readout_err: 0.0,
        single_err: 0.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for mult in [1.0, 10.0] {
        let t = mult * noise.t1;
        let mut ones = 0usize;
        for _ in 0..TRAJECTORIES {
            let mut s = StateVector::basis(1, 1).unwrap();
            apply_idle_noise(&mut s, 0, t, &noise, &mut rng).unwrap();
            ones += s.measure_z(0, &mut rng).unwrap() as usize;
        }
        let p = (-mult).exp();
        let freq = ones as f64 / TRAJECTORIES as f64;
        let se = (p * (1.0 - p) / TRAJECTORIES as f64).sqrt();
        assert!((freq - p).abs() <= 3.0 * se, "t = {mult} T1: {freq} vs {p}");
    }
}

#[test]
fn coherence_decays_monotonically() {
    let noise = QubitNoise {
        t1: 60e-6,
        t2: 45e-6,
        readout_err: 0.0,
        single_err: 0.0,
    };
    let x: PauliOperator = "X".parse().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let mut previous = f64::INFINITY;
    for k in 0..6 {
        let t = k as f64 * 15e-6;
        let samples: Vec<f64> = (0..20_000)
            .map(|_| {
                let mut s = StateVector::new(1).unwrap();
                s.apply_gate(&Gate::H(0)).unwrap();
                apply_idle_noise(&mut s, 0, t, &noise, &mut rng).unwrap();
                s.expectation(&x).unwrap()
            })
            .collect();
        let (mean, se) = mean_se(&samples);
        let exact = (-t / noise.t2).exp();
        assert!(
            (mean - exact).abs() <= 3.0 * se.max(1e-12),
            "t={t}: {mean} vs {exact}"
        );
        assert!(mean < previous || k == 0);
        previous = mean;
    }
}

#[test]
fn correlation_falls_with_depolarizing_strength() {
    let ec = ideal_circuit(&ExperimentDef::default()).unwrap();
    let grid = [0.0, 0.02, 0.04, 0.06, 0.08, 0.1];
    let mut values = Vec::new();
    for (k, &p) in grid.iter().enumerate() {
        let cfg = NoiseConfig::depolarizing(5, p);
        let table = run_shots(&ec.circuit, TRAJECTORIES, Some(&cfg), 900 + k as u64).unwrap();
        let c = correlation(&postselect(&table, &ec.readout), &ec.readout).unwrap();
        values.push(c.value);
    }
    assert_eq!(values[0], 1.0);
    for w in values.windows(2) {
        assert!(w[1] <= w[0], "{values:?}");
    }
}

#[test]
fn full_single_qubit_depolarizing_shrinks_bloch_vector() {
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    let psi = random_state(1, &mut rng);
    let z: PauliOperator = "Z".parse().unwrap();
    let z_in = psi.expectation(&z).unwrap();
    let samples: Vec<f64> = (0..TRAJECTORIES)
        .map(|_| {
            let mut s = psi.clone();
            apply_depolarizing(&mut s, &[0], 1.0, &mut rng).unwrap();
            s.expectation(&z).unwrap()
        })
        .collect();
    let (mean, se) = mean_se(&samples);
    let want = (1.0 - 4.0 / 3.0) * z_in;
    assert!((mean - want).abs() <= 3.0 * se, "{mean} vs {want}");
}
